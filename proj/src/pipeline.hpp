#pragma once

// End-to-end entry points shared by the C API and the test suites.
// Status codes follow the CLI contract:
//   0 value, 1 blame or NSU error, 2 type/parse error, 3 internal defect.

#include "fuzz.hpp"

namespace gifc::pipeline {

struct Outcome {
    int status = 0;
    std::string output; // primary result text
    std::string detail; // trace, fuzz report body, or error elaboration
};

struct RunParams {
    std::optional<bool> input;
    long fuel = 100000;
    bool trace = false;
    bool preserve = false;
    bool strict_pc = false;
    std::string mutate; // mutation-testing knob, empty for the real semantics
};

Outcome check(const std::string& source, bool strict_pc = false);
Outcome compile_source(const std::string& source, bool emit_cc, bool strict_pc = false);
Outcome run_source(const std::string& source, const RunParams& params = {});
Outcome erase_source(const std::string& source);
Outcome run_dyn_source(const std::string& source, const RunParams& params = {});
Outcome fuzz(const std::string& kind, const GenConfig& cfg, const std::string& out_path,
             const std::string& mutate);

} // namespace gifc::pipeline
