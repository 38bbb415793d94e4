#pragma once

// Small-step machine over (term, heap, PC) configurations.

#include "cc_typecheck.hpp"

namespace gifc {

// Deliberately broken rules for mutation-testing the property suites.
enum class Mutation : uint8_t {
    None,
    LetNoSubst,      // let forgets to substitute (breaks progress)
    ProtNoStamp,     // prot-val skips value stamping (breaks noninterference)
    ProjAlwaysBlame, // every projection collision fails (breaks the gradual guarantee)
};

struct MachineOptions {
    Mutation mutation = Mutation::None;
};

struct Config {
    CCPtr term;
    Heap heap;
    LabelExpr pc = LabelExpr::lit(Lbl::Low);
};

struct StepInfo {
    std::string rule;
    std::string redex;
};

struct StepRes {
    enum class Tag { Stepped, Value, Blame, Stuck } tag;
    CCPtr term;       // Stepped
    Value value;      // Value
    BlameLabel p;     // Blame
    std::string why;  // Stuck
};

// One reduction of the configuration term (heap updated in place).
StepRes step(Config& cfg, const MachineOptions& opts = {}, StepInfo* info = nullptr);

struct RunOutcome {
    enum class Tag { Final, Blame, Timeout, Stuck, PreservationFail } tag;
    Value value;        // Final
    BlameLabel p;       // Blame
    std::string why;    // Stuck / PreservationFail
    size_t steps = 0;
    Heap heap;
    std::vector<std::string> trace;
};

struct RunOptions {
    long fuel = 100000;
    bool trace = false;
    bool preserve = false; // re-verify typing after every step
    MachineOptions machine;
};

// Drive the machine from an initial low PC. `type` is the checked type of
// `term`; it anchors preservation re-checking and final-value rendering.
RunOutcome run(const CCPtr& term, const LType& type, const RunOptions& opts = {});

} // namespace gifc
