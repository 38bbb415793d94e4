#include "fuzz.hpp"

#include "compile.hpp"
#include "dyn.hpp"

#include <json.hpp>

#include <functional>
#include <sstream>

namespace gifc {

namespace {

constexpr uint64_t kSafetySalt = 0x5af3;
constexpr uint64_t kNISalt = 0x171;
constexpr uint64_t kGGSalt = 0x66;

uint64_t suite_salt(const std::string& kind) {
    if (kind == "safety") return kSafetySalt;
    if (kind == "ni") return kNISalt;
    return kGGSalt;
}

CCPtr bind_input(const CCPtr& term, bool input) {
    return subst(term, "input", mk_cc(Const{input ? ConstK::True : ConstK::False}));
}

DPtr bind_input_dyn(const DPtr& term, bool input) {
    return subst_dyn(term, "input",
                     mk_d(DConst{input ? ConstK::True : ConstK::False, Lbl::High}));
}

// --- shrinking ------------------------------------------------------------

void positions(const SPtr& m, std::vector<SPtr>& out) {
    out.push_back(m);
    const STerm& t = *m;
    if (auto n = t.as<SLam>()) positions(n->body, out);
    if (auto n = t.as<SApp>()) {
        positions(n->fun, out);
        positions(n->arg, out);
    }
    if (auto n = t.as<SIf>()) {
        positions(n->cond, out);
        positions(n->thn, out);
        positions(n->els, out);
    }
    if (auto n = t.as<SLet>()) {
        positions(n->bound, out);
        positions(n->body, out);
    }
    if (auto n = t.as<SRef>()) positions(n->init, out);
    if (auto n = t.as<SDeref>()) positions(n->e, out);
    if (auto n = t.as<SAssign>()) {
        positions(n->lhs, out);
        positions(n->rhs, out);
    }
    if (auto n = t.as<SAnn>()) positions(n->e, out);
}

SPtr replace_at(const SPtr& m, size_t& idx, const SPtr& target, const SPtr& repl) {
    if (m == target && idx-- == 0) return repl;
    const STerm& t = *m;
    auto go = [&](const SPtr& c) { return replace_at(c, idx, target, repl); };
    if (auto n = t.as<SLam>()) return mk_s(SLam{n->pc, n->x, n->ann, go(n->body), n->l}, t.span);
    if (auto n = t.as<SApp>()) {
        SPtr f = go(n->fun);
        return mk_s(SApp{f, go(n->arg), n->blame}, t.span);
    }
    if (auto n = t.as<SIf>()) {
        SPtr c = go(n->cond);
        SPtr a = go(n->thn);
        return mk_s(SIf{c, a, go(n->els), n->blame}, t.span);
    }
    if (auto n = t.as<SLet>()) {
        SPtr b = go(n->bound);
        return mk_s(SLet{n->x, b, go(n->body)}, t.span);
    }
    if (auto n = t.as<SRef>()) return mk_s(SRef{n->l, go(n->init), n->blame}, t.span);
    if (auto n = t.as<SDeref>()) return mk_s(SDeref{go(n->e), n->blame}, t.span);
    if (auto n = t.as<SAssign>()) {
        SPtr l = go(n->lhs);
        return mk_s(SAssign{l, go(n->rhs), n->blame}, t.span);
    }
    if (auto n = t.as<SAnn>()) return mk_s(SAnn{go(n->e), n->ann, n->blame}, t.span);
    return m;
}

// Substitute one occurrence (by pre-order index among identical nodes).
SPtr replace_nth(const SPtr& root, const SPtr& target, size_t nth, const SPtr& repl) {
    size_t idx = nth;
    return replace_at(root, idx, target, repl);
}

size_t term_size(const SPtr& m) {
    std::vector<SPtr> all;
    positions(m, all);
    return all.size();
}

// Greedy shrink keeping the goal type and the violation alive.
SPtr shrink(const SPtr& start, const LType& goal,
            const std::function<bool(const SPtr&)>& violates) {
    SPtr cur = start;
    bool progress = true;
    int budget = 300;
    while (progress && budget > 0) {
        progress = false;
        std::vector<SPtr> nodes;
        positions(cur, nodes);
        for (size_t i = 0; i < nodes.size() && budget > 0; ++i) {
            const SPtr& node = nodes[i];
            std::vector<SPtr> cands;
            const STerm& t = *node;
            if (auto n = t.as<SLet>()) cands.push_back(n->body);
            if (auto n = t.as<SAnn>()) cands.push_back(n->e);
            if (auto n = t.as<SIf>()) {
                cands.push_back(n->thn);
                cands.push_back(n->els);
            }
            if (auto n = t.as<SApp>()) cands.push_back(n->arg);
            if (auto n = t.as<SDeref>()) cands.push_back(n->e);
            if (!t.is<SConst>()) {
                cands.push_back(mk_s(SConst{ConstK::True, Lbl::Low}));
                cands.push_back(mk_s(SConst{ConstK::Unit, Lbl::Low}));
            }
            size_t nth = 0;
            for (size_t j = 0; j < i; ++j)
                if (nodes[j] == node) nth++;
            for (const auto& cand : cands) {
                if (term_size(cand) >= term_size(node)) continue;
                --budget;
                SPtr next = replace_nth(cur, node, nth, cand);
                try {
                    next = parse(render(next)); // renumber blame labels
                    if (!(typecheck_surface(next, base_ctx(), Lbl::Low) == goal)) continue;
                    if (!violates(next)) continue;
                } catch (const std::exception&) {
                    continue;
                }
                cur = next;
                progress = true;
                break;
            }
            if (progress) break;
        }
    }
    return cur;
}

struct Driver {
    FuzzReport report;
    GenConfig cfg;
    Mutation mutation;

    Driver(std::string kind, const GenConfig& c, Mutation m) : cfg(c), mutation(m) {
        report.kind = std::move(kind);
        report.cfg = c;
    }

    void violation(const std::string& kind, int index, const SPtr& program,
                   const std::string& detail, const LType& goal,
                   const std::function<bool(const SPtr&)>& still_violates) {
        Violation v;
        v.kind = kind;
        v.seed = cfg.seed;
        v.index = index;
        SPtr small = program;
        try {
            small = shrink(program, goal, still_violates);
        } catch (const std::exception&) {
        }
        v.program = render(small);
        v.detail = detail;
        report.violations.push_back(std::move(v));
    }

    void merge_histogram(const SPtr& m) {
        for (const auto& [k, n] : construct_histogram(m)) report.histogram[k] += n;
    }
};

RunOutcome run_compiled(const CCPtr& term, const LType& ty, bool input, bool preserve,
                        Mutation mutation) {
    RunOptions ro;
    ro.preserve = preserve;
    ro.machine.mutation = mutation;
    return run(bind_input(term, input), ty, ro);
}

std::string outcome_name(RunOutcome::Tag t) {
    switch (t) {
    case RunOutcome::Tag::Final: return "value";
    case RunOutcome::Tag::Blame: return "blame";
    case RunOutcome::Tag::Timeout: return "timeout";
    case RunOutcome::Tag::Stuck: return "stuck";
    case RunOutcome::Tag::PreservationFail: return "preservation-failure";
    }
    return "?";
}

} // namespace

std::optional<Mutation> mutation_by_name(const std::string& name) {
    if (name.empty() || name == "none") return Mutation::None;
    if (name == "let-no-subst") return Mutation::LetNoSubst;
    if (name == "prot-no-stamp") return Mutation::ProtNoStamp;
    if (name == "proj-always-blame") return Mutation::ProjAlwaysBlame;
    return std::nullopt;
}

SPtr regenerate(const std::string& kind, const GenConfig& cfg, int index) {
    Gen gen(cfg, suite_salt(kind) + static_cast<uint64_t>(index));
    LType goal = kind == "ni" ? bool_ty(Lbl::Low) : gen.gen_goal();
    return gen.gen_program(goal);
}

FuzzReport fuzz_safety(const GenConfig& cfg, Mutation mutation) {
    Driver d("safety", cfg, mutation);
    for (int i = 0; i < cfg.count; ++i) {
        Gen gen(cfg, kSafetySalt + static_cast<uint64_t>(i));
        LType goal = gen.gen_goal();
        SPtr m = gen.gen_program(goal);
        if (!m) {
            d.report.skipped++;
            continue;
        }
        d.report.ran++;
        d.merge_histogram(m);

        auto check_one = [&](const SPtr& prog) -> std::optional<std::pair<std::string, std::string>> {
            LType ty = typecheck_surface(prog, base_ctx(), Lbl::Low);
            CompileOut out = compile(prog, base_ctx(), Lbl::Low);
            try {
                typecheck_cc(out.term, base_ctx(), {}, Lbl::Low, Lbl::Low, ty);
            } catch (const CCTypeError& e) {
                return std::make_pair(std::string("T15Fail"), std::string(e.what()));
            }
            RunOutcome r = run_compiled(out.term, out.type, true, true, mutation);
            if (r.tag == RunOutcome::Tag::Stuck)
                return std::make_pair(std::string("Stuck"), r.why);
            if (r.tag == RunOutcome::Tag::PreservationFail)
                return std::make_pair(std::string("PreservationFail"), r.why);
            return std::nullopt;
        };

        auto bad = check_one(m);
        if (!bad) continue;
        auto predicate = [&](const SPtr& p) {
            try {
                return check_one(p).has_value();
            } catch (const std::exception&) {
                return false;
            }
        };
        d.violation(bad->first, i, m, bad->second, goal, predicate);
    }
    return d.report;
}

FuzzReport fuzz_ni(const GenConfig& cfg, Mutation mutation) {
    Driver d("ni", cfg, mutation);
    const LType goal = bool_ty(Lbl::Low);
    for (int i = 0; i < cfg.count; ++i) {
        Gen gen(cfg, kNISalt + static_cast<uint64_t>(i));
        SPtr m = gen.gen_program(goal);
        if (!m) {
            d.report.skipped++;
            continue;
        }
        d.report.ran++;
        d.merge_histogram(m);

        // Returns violation kind/detail, or nullopt; sets `inconclusive` on
        // fuel exhaustion.
        auto check_one = [&](const SPtr& prog,
                             bool* inconclusive) -> std::optional<std::pair<std::string, std::string>> {
            CompileOut out = compile(prog, base_ctx(), Lbl::Low);
            RunOutcome r1 = run_compiled(out.term, out.type, true, false, mutation);
            RunOutcome r0 = run_compiled(out.term, out.type, false, false, mutation);
            for (const auto* r : {&r1, &r0}) {
                if (r->tag == RunOutcome::Tag::Stuck)
                    return std::make_pair(std::string("Stuck"), r->why);
                if (r->tag == RunOutcome::Tag::Timeout) {
                    if (inconclusive) *inconclusive = true;
                    return std::nullopt;
                }
            }
            if (r1.tag == RunOutcome::Tag::Final && r0.tag == RunOutcome::Tag::Final &&
                !value_eq(r1.value, r0.value))
                return std::make_pair(std::string("NIFail"),
                                      "true input: " + render_value(r1.value, goal) +
                                          ", false input: " + render_value(r0.value, goal));
            // Differential simulation against the fully dynamic language.
            DPtr erased = erase(out.term, out.type);
            for (bool b : {true, false}) {
                const RunOutcome& r = b ? r1 : r0;
                if (r.tag != RunOutcome::Tag::Final) continue;
                DynOutcome dr = run_dyn(bind_input_dyn(erased, b), Lbl::Low);
                if (dr.tag == DynOutcome::Tag::Timeout) {
                    if (inconclusive) *inconclusive = true;
                    continue;
                }
                if (dr.tag != DynOutcome::Tag::Value)
                    return std::make_pair(std::string("SimFail"),
                                          "gradual run produced a value but the dynamic run " +
                                              (dr.tag == DynOutcome::Tag::NSUError
                                                   ? "failed the NSU check at " + dr.site
                                                   : "got stuck: " + dr.site));
                if (!value_sim(dr.value, r.value, goal))
                    return std::make_pair(std::string("SimFail"),
                                          "dynamic value " + to_string(dr.value) +
                                              " is not below gradual value " +
                                              render_value(r.value, goal));
            }
            // Noninterference of the dynamic language itself.
            DynOutcome d1 = run_dyn(bind_input_dyn(erased, true), Lbl::Low);
            DynOutcome d0 = run_dyn(bind_input_dyn(erased, false), Lbl::Low);
            if (d1.tag == DynOutcome::Tag::Value && d0.tag == DynOutcome::Tag::Value) {
                auto c1 = d1.value->as<DConst>();
                auto c0 = d0.value->as<DConst>();
                if (c1 && c0 && c1->l == Lbl::Low && c0->l == Lbl::Low && c1->k != c0->k)
                    return std::make_pair(std::string("NIFail"),
                                          "dynamic runs disagree at low: " + to_string(d1.value) +
                                              " vs " + to_string(d0.value));
            }
            return std::nullopt;
        };

        bool inconclusive = false;
        auto bad = check_one(m, &inconclusive);
        if (inconclusive) d.report.inconclusive++;
        if (!bad) continue;
        auto predicate = [&](const SPtr& p) {
            try {
                return check_one(p, nullptr).has_value();
            } catch (const std::exception&) {
                return false;
            }
        };
        d.violation(bad->first, i, m, bad->second, goal, predicate);
    }
    return d.report;
}

FuzzReport fuzz_gg(const GenConfig& cfg, Mutation mutation) {
    Driver d("gg", cfg, mutation);
    for (int i = 0; i < cfg.count; ++i) {
        // Low star bias on the precise side so erosion has sites to take.
        GenConfig precise_cfg = cfg;
        precise_cfg.star_bias = std::min(cfg.star_bias, 0.15);
        Gen pgen(precise_cfg, kGGSalt + static_cast<uint64_t>(i));
        std::mt19937_64 rng(cfg.seed * 0x9E3779B97F4A7C15ull + 2 * i + 1);
        LType goal = rng() % 10 < 7 ? bool_ty(Lbl::Low) : unit_ty(Lbl::Low);
        SPtr precise = pgen.gen_program(goal);
        if (!precise) {
            d.report.skipped++;
            continue;
        }
        if (erode_site_count(precise) == 0) {
            d.report.skipped++;
            continue;
        }
        d.report.ran++;
        d.merge_histogram(precise);
        int k = 1 + static_cast<int>(rng() % 3);
        SPtr eroded = precise;
        for (int e = 0; e < k; ++e) {
            size_t n = erode_site_count(eroded);
            if (n == 0) break;
            eroded = erode(eroded, rng() % n);
        }
        eroded = parse(render(eroded));

        auto check_pair = [&](const SPtr& lo, const SPtr& hi,
                              bool* inconclusive) -> std::optional<std::pair<std::string, std::string>> {
            if (!surface_precision(lo, hi))
                return std::make_pair(std::string("StaticGGFail"),
                                      std::string("erosion lost term precision"));
            LType hi_ty = typecheck_surface(hi, base_ctx(), Lbl::Low);
            LType lo_ty;
            try {
                lo_ty = typecheck_surface(lo, base_ctx(), Lbl::Low);
            } catch (const TypeError& e) {
                return std::make_pair(std::string("StaticGGFail"), std::string(e.what()));
            }
            if (!type_prec(lo_ty, hi_ty))
                return std::make_pair(std::string("StaticGGFail"),
                                      "types not related: " + to_string(lo_ty) + " vs " +
                                          to_string(hi_ty));
            CompileOut chi = compile(hi, base_ctx(), Lbl::Low);
            RunOutcome rhi = run_compiled(chi.term, chi.type, true, false, mutation);
            if (rhi.tag == RunOutcome::Tag::Stuck)
                return std::make_pair(std::string("Stuck"), rhi.why);
            if (rhi.tag == RunOutcome::Tag::Timeout) {
                if (inconclusive) *inconclusive = true;
                return std::nullopt;
            }
            if (rhi.tag != RunOutcome::Tag::Final) return std::nullopt; // blame: no obligation
            CompileOut clo = compile(lo, base_ctx(), Lbl::Low);
            RunOutcome rlo = run_compiled(clo.term, clo.type, true, false, mutation);
            if (rlo.tag == RunOutcome::Tag::Timeout) {
                if (inconclusive) *inconclusive = true;
                return std::nullopt;
            }
            if (rlo.tag != RunOutcome::Tag::Final)
                return std::make_pair(std::string("GGFail"),
                                      "precise run succeeded but the eroded run " +
                                          outcome_name(rlo.tag) +
                                          (rlo.tag == RunOutcome::Tag::Blame ? " " + rlo.p : ""));
            if (!lo_ty.raw.is_base()) return std::nullopt;
            // Base observations: equal constants, wrappers related by precision.
            const Value& v = rlo.value;
            const Value& w = rhi.value;
            if (!v.raw.is_const() || !w.raw.is_const())
                return std::make_pair(std::string("GGFail"), std::string("non-constant result"));
            if (std::get<RawValue::ConstV>(v.raw.v).k != std::get<RawValue::ConstV>(w.raw.v).k)
                return std::make_pair(std::string("GGFail"),
                                      "results differ: " + render_value(v, lo_ty) + " vs " +
                                          render_value(w, hi_ty));
            bool related;
            if (v.wrap && w.wrap) related = seq_precision(v.wrap->seq, w.wrap->seq);
            else if (v.wrap) related = seq_precision_left(v.wrap->seq, hi_ty.label);
            else if (w.wrap) related = seq_precision_right(lo_ty.label, w.wrap->seq);
            else related = label_prec(lo_ty.label, hi_ty.label);
            if (!related)
                return std::make_pair(std::string("GGFail"),
                                      "result labels unrelated: " + render_value(v, lo_ty) +
                                          " vs " + render_value(w, hi_ty));
            return std::nullopt;
        };

        bool inconclusive = false;
        auto bad = check_pair(eroded, precise, &inconclusive);
        if (inconclusive) d.report.inconclusive++;
        if (!bad) continue;
        Violation v;
        v.kind = bad->first;
        v.seed = cfg.seed;
        v.index = i;
        v.program = render(eroded) + "\n  -- precise variant:\n" + render(precise);
        v.detail = bad->second;
        d.report.violations.push_back(std::move(v));
    }
    return d.report;
}

std::string FuzzReport::text() const {
    std::ostringstream os;
    os << "suite=" << kind << " seed=" << cfg.seed << " count=" << cfg.count << " ran=" << ran
       << " skipped=" << skipped << " inconclusive=" << inconclusive
       << " violations=" << violations.size() << "\n";
    os << "constructs:";
    for (const auto& [k, n] : histogram) os << " " << k << "=" << n;
    os << "\n";
    for (const auto& v : violations) {
        os << "VIOLATION kind=" << v.kind << " seed=" << v.seed << " index=" << v.index << "\n";
        os << "  detail: " << v.detail << "\n";
        os << "  program: " << v.program << "\n";
    }
    return os.str();
}

std::string FuzzReport::summary_json() const {
    nlohmann::json j;
    j["suite"] = kind;
    j["seed"] = cfg.seed;
    j["count"] = cfg.count;
    j["ran"] = ran;
    j["skipped"] = skipped;
    j["inconclusive"] = inconclusive;
    j["histogram"] = histogram;
    std::map<std::string, int> by_kind;
    for (const auto& v : violations) by_kind[v.kind]++;
    j["violations"] = by_kind;
    nlohmann::json list = nlohmann::json::array();
    for (const auto& v : violations)
        list.push_back({{"kind", v.kind}, {"seed", v.seed}, {"index", v.index},
                        {"program", v.program}, {"detail", v.detail}});
    j["violation_list"] = list;
    return j.dump(2);
}

} // namespace gifc
