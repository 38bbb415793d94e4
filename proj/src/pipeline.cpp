#include "pipeline.hpp"

#include "compile.hpp"
#include "dyn.hpp"

#include <fstream>

namespace gifc::pipeline {

namespace {

Outcome error_outcome(const std::exception& e) { return {2, std::string(e.what()), ""}; }

struct Compiled {
    CompileOut out;
};

Compiled compile_checked(const std::string& source, bool strict_pc) {
    SPtr m = parse(source, ParseOptions{strict_pc});
    typecheck_surface(m, base_ctx(), Lbl::Low);
    return {compile(m, base_ctx(), Lbl::Low)};
}

CCPtr bind_input(const CCPtr& term, std::optional<bool> input) {
    ConstK k = input.value_or(true) ? ConstK::True : ConstK::False;
    return subst(term, "input", mk_cc(Const{k}));
}

} // namespace

Outcome check(const std::string& source, bool strict_pc) {
    try {
        SPtr m = parse(source, ParseOptions{strict_pc});
        LType ty = typecheck_surface(m, base_ctx(), Lbl::Low);
        return {0, to_string(ty), ""};
    } catch (const std::exception& e) {
        return error_outcome(e);
    }
}

Outcome compile_source(const std::string& source, bool emit_cc, bool strict_pc) {
    try {
        Compiled c = compile_checked(source, strict_pc);
        std::string out = to_string(c.out.type);
        return {0, emit_cc ? to_string(c.out.term) : out, emit_cc ? to_string(c.out.type) : ""};
    } catch (const std::exception& e) {
        return error_outcome(e);
    }
}

Outcome run_source(const std::string& source, const RunParams& params) {
    try {
        Compiled c = compile_checked(source, params.strict_pc);
        RunOptions ro;
        ro.fuel = params.fuel;
        ro.trace = params.trace;
        ro.preserve = params.preserve;
        if (auto m = mutation_by_name(params.mutate)) ro.machine.mutation = *m;
        else return {2, "unknown mutation '" + params.mutate + "'", ""};
        RunOutcome r = run(bind_input(c.out.term, params.input), c.out.type, ro);
        std::string trace;
        for (const auto& line : r.trace) trace += line + "\n";
        switch (r.tag) {
        case RunOutcome::Tag::Final: return {0, render_value(r.value, c.out.type), trace};
        case RunOutcome::Tag::Blame: return {1, "blame " + r.p, trace};
        case RunOutcome::Tag::Timeout: return {3, "fuel exhausted", trace};
        case RunOutcome::Tag::Stuck: return {3, "stuck: " + r.why, trace};
        case RunOutcome::Tag::PreservationFail:
            return {3, "preservation failure: " + r.why, trace};
        }
        return {3, "unreachable", trace};
    } catch (const std::exception& e) {
        return error_outcome(e);
    }
}

Outcome erase_source(const std::string& source) {
    try {
        Compiled c = compile_checked(source, false);
        return {0, to_string(erase(c.out.term, c.out.type)), ""};
    } catch (const std::exception& e) {
        return error_outcome(e);
    }
}

Outcome run_dyn_source(const std::string& source, const RunParams& params) {
    try {
        Compiled c = compile_checked(source, params.strict_pc);
        DPtr erased = erase(c.out.term, c.out.type);
        ConstK k = params.input.value_or(true) ? ConstK::True : ConstK::False;
        erased = subst_dyn(erased, "input", mk_d(DConst{k, Lbl::High}));
        DynOutcome r = run_dyn(erased, Lbl::Low, params.fuel);
        switch (r.tag) {
        case DynOutcome::Tag::Value: return {0, to_string(r.value), ""};
        case DynOutcome::Tag::NSUError: return {1, "NSU error at " + r.site, ""};
        case DynOutcome::Tag::Timeout: return {3, "fuel exhausted", ""};
        case DynOutcome::Tag::Stuck: return {3, "stuck: " + r.site, ""};
        }
        return {3, "unreachable", ""};
    } catch (const std::exception& e) {
        return error_outcome(e);
    }
}

Outcome fuzz(const std::string& kind, const GenConfig& cfg, const std::string& out_path,
             const std::string& mutate) {
    auto mutation = mutation_by_name(mutate);
    if (!mutation) return {2, "unknown mutation '" + mutate + "'", ""};
    FuzzReport report;
    if (kind == "safety") report = fuzz_safety(cfg, *mutation);
    else if (kind == "ni") report = fuzz_ni(cfg, *mutation);
    else if (kind == "gg") report = fuzz_gg(cfg, *mutation);
    else return {2, "unknown fuzz kind '" + kind + "' (expected safety|ni|gg)", ""};
    if (!out_path.empty()) {
        std::ofstream out(out_path);
        if (!out) return {2, "cannot write " + out_path, ""};
        out << report.summary_json() << "\n";
    }
    return {report.clean() ? 0 : 3, report.text(), report.summary_json()};
}

} // namespace gifc::pipeline
