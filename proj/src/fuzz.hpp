#pragma once

// Property harnesses: type safety, noninterference, gradual guarantee.

#include "gen.hpp"
#include "machine.hpp"

namespace gifc {

struct Violation {
    std::string kind; // Stuck | PreservationFail | T15Fail | NIFail | GGFail | SimFail | StaticGGFail
    uint64_t seed = 0;
    int index = 0;
    std::string program; // shrunk source text
    std::string detail;
};

struct FuzzReport {
    std::string kind;
    GenConfig cfg;
    int ran = 0;
    int skipped = 0;      // uninhabitable goals the generator gave up on
    int inconclusive = 0; // fuel exhaustion on a differential pair
    std::map<std::string, int> histogram;
    std::vector<Violation> violations;

    bool clean() const { return violations.empty(); }
    std::string text() const;
    std::string summary_json() const;
};

FuzzReport fuzz_safety(const GenConfig& cfg, Mutation mutation = Mutation::None);
FuzzReport fuzz_ni(const GenConfig& cfg, Mutation mutation = Mutation::None);
FuzzReport fuzz_gg(const GenConfig& cfg, Mutation mutation = Mutation::None);

// Replay one case of a suite; used to reproduce a reported violation.
SPtr regenerate(const std::string& kind, const GenConfig& cfg, int index);

std::optional<Mutation> mutation_by_name(const std::string& name);

} // namespace gifc
