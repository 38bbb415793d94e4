#include "gen.hpp"

#include <functional>

namespace gifc {

namespace {

// Deterministic per-program stream: one generator instance per (seed, index).
uint64_t mix(uint64_t seed, uint64_t salt) {
    uint64_t x = seed ^ (salt * 0x9E3779B97F4A7C15ull + 0x7F4A7C15ull);
    x ^= x >> 30;
    x *= 0xBF58476D1CE4E5B9ull;
    x ^= x >> 27;
    x *= 0x94D049BB133111EBull;
    x ^= x >> 31;
    return x;
}

enum class Mode { Sub, Sup, Equiv };

Mode flip(Mode m) { return m == Mode::Sub ? Mode::Sup : m == Mode::Sup ? Mode::Sub : Mode::Equiv; }

// A random label below / above / interchangeable with the given one.
Lbl vary_label(Lbl l, Mode m, std::mt19937_64& rng, double star_bias) {
    auto roll = [&](std::initializer_list<Lbl> opts) {
        std::vector<Lbl> v(opts);
        return v[std::uniform_int_distribution<size_t>(0, v.size() - 1)(rng)];
    };
    bool star = std::uniform_real_distribution<double>(0, 1)(rng) < star_bias;
    if (star) return Lbl::Star;
    switch (m) {
    case Mode::Equiv: return l; // a specific label may only vary through *
    case Mode::Sub:
        if (l == Lbl::High) return roll({Lbl::Low, Lbl::High});
        if (l == Lbl::Low) return Lbl::Low;
        return roll({Lbl::Low, Lbl::High});
    case Mode::Sup:
        if (l == Lbl::Low) return roll({Lbl::Low, Lbl::High});
        if (l == Lbl::High) return Lbl::High;
        return roll({Lbl::Low, Lbl::High});
    }
    return l;
}

// A type consistently below (Sub) / above (Sup) the given one.
LType vary_type(const LType& t, Mode m, std::mt19937_64& rng, double bias) {
    RawType raw = t.raw;
    if (t.raw.is_ref()) {
        raw = make_ref(vary_type(t.raw.ref().inner, Mode::Equiv, rng, bias));
    } else if (t.raw.is_fun()) {
        const auto& f = t.raw.fun();
        raw = make_fun(vary_type(f.dom, flip(m), rng, bias), vary_label(f.pc, flip(m), rng, bias),
                       vary_type(f.cod, m, rng, bias));
    }
    return {raw, vary_label(t.label, m, rng, bias)};
}

SPtr renumber(const SPtr& m) {
    // Round-tripping through the renderer reassigns blame labels in pre-order
    // exactly as the parser would.
    return parse(render(m));
}

} // namespace

Gen::Gen(const GenConfig& cfg, uint64_t salt) : cfg_(cfg), rng_(mix(cfg.seed, salt)) {}

size_t Gen::pick(size_t n) { return std::uniform_int_distribution<size_t>(0, n - 1)(rng_); }

bool Gen::chance(double p) { return std::uniform_real_distribution<double>(0, 1)(rng_) < p; }

Lbl Gen::random_label(bool allow_star) {
    if (allow_star && chance(cfg_.star_bias)) return Lbl::Star;
    return chance(0.5) ? Lbl::Low : Lbl::High;
}

LType Gen::gen_type(int depth, bool allow_star) {
    Lbl l = random_label(allow_star);
    if (depth <= 0 || chance(0.55)) return {chance(0.75) ? bool_raw() : unit_raw(), l};
    if (chance(0.5)) return {make_ref(gen_type(depth - 1, allow_star)), l};
    return {make_fun(gen_type(depth - 1, allow_star), random_label(allow_star),
                     gen_type(depth - 1, allow_star)),
            l};
}

LType Gen::gen_goal() {
    // Mostly base-typed observations; occasionally something structured.
    if (chance(0.7)) return {chance(0.8) ? bool_raw() : unit_raw(), random_label()};
    return gen_type(2);
}

// Split a goal label into (component, stamp) whose consistent join is the
// goal; drives the result labels of app / if / deref productions.
std::pair<Lbl, Lbl> Gen::split_label(Lbl goal) {
    if (goal == Lbl::Star) {
        Lbl stamp = chance(0.5) ? Lbl::Star : random_label(false);
        Lbl l0 = stamp == Lbl::Star ? random_label() : Lbl::Star;
        return {l0, stamp};
    }
    if (goal == Lbl::High) {
        Lbl stamp = chance(0.5) ? Lbl::High : Lbl::Low;
        Lbl l0 = stamp == Lbl::High ? (chance(0.5) ? Lbl::Low : Lbl::High) : Lbl::High;
        return {l0, stamp};
    }
    return {Lbl::Low, Lbl::Low};
}

SPtr Gen::leaf(const LType& goal, const Ctx& ctx, Lbl) {
    std::vector<SPtr> options;
    auto random_const = [&]() {
        return goal.raw.base() == BaseTy::Unit ? ConstK::Unit
               : chance(0.5)                   ? ConstK::True
                                               : ConstK::False;
    };
    if (goal.raw.is_base() && is_specific(goal.label))
        options.push_back(mk_s(SConst{random_const(), goal.label}));
    if (goal.raw.is_base()) {
        // An ascribed constant reaches *-labeled goals as well.
        Lbl from = goal.label == Lbl::Low ? Lbl::Low : (chance(0.5) ? Lbl::Low : Lbl::High);
        options.push_back(mk_s(SAnn{mk_s(SConst{random_const(), from}), goal, {}}));
    }
    for (const auto& [name, ty] : ctx) {
        if (ty == goal) options.push_back(mk_s(SVar{name}));
        else if (type_csub(ty, goal)) options.push_back(mk_s(SAnn{mk_s(SVar{name}), goal, {}}));
    }
    if (options.empty()) return nullptr;
    return options[pick(options.size())];
}

SPtr Gen::gen_typed(const LType& goal, const Ctx& ctx, Lbl g, int depth) {
    if (depth <= 0) return leaf(goal, ctx, g);

    // A few attempts at a structural production, then fall back to a leaf.
    for (int attempt = 0; attempt < 4; ++attempt) {
        switch (pick(8)) {
        case 0: { // lambda
            if (!goal.raw.is_fun() || !is_specific(goal.label)) break;
            const auto& f = goal.raw.fun();
            std::string x = "x" + std::to_string(++fresh_);
            Ctx inner = ctx;
            inner.emplace_back(x, f.dom);
            SPtr body = gen_typed(f.cod, inner, f.pc, depth - 1);
            if (!body) break;
            return mk_s(SLam{f.pc, x, f.dom, body, goal.label});
        }
        case 1: { // ascription from a consistently-below type
            LType from = vary_type(goal, Mode::Sub, rng_, cfg_.star_bias);
            if (from == goal) break;
            SPtr inner = gen_typed(from, ctx, g, depth - 1);
            if (!inner) break;
            return mk_s(SAnn{inner, goal, {}});
        }
        case 2: { // application
            auto [l0, gf] = split_label(goal.label);
            LType cod{goal.raw, l0};
            LType dom = gen_type(depth >= 3 ? 1 : 0);
            std::vector<Lbl> pcs{Lbl::Star, Lbl::High};
            if (g == Lbl::Low && label_csub(gf, Lbl::Low)) pcs.push_back(Lbl::Low);
            Lbl pc = pcs[pick(pcs.size())];
            LType fun_ty{make_fun(dom, pc, cod), gf};
            SPtr fun = gen_typed(fun_ty, ctx, g, depth - 1);
            if (!fun) break;
            SPtr arg = gen_typed(dom, ctx, g, depth - 1);
            if (!arg) break;
            return mk_s(SApp{fun, arg, {}});
        }
        case 3: { // conditional
            auto [l0, gc] = split_label(goal.label);
            LType branch{goal.raw, l0};
            SPtr cond = gen_typed(bool_ty(gc), ctx, g, depth - 1);
            if (!cond) break;
            Lbl branch_pc = label_cjoin(g, gc);
            SPtr thn = gen_typed(branch, ctx, branch_pc, depth - 1);
            if (!thn) break;
            SPtr els = gen_typed(branch, ctx, branch_pc, depth - 1);
            if (!els) break;
            return mk_s(SIf{cond, thn, els, {}});
        }
        case 4: { // let
            LType bound_ty = gen_type(depth >= 3 ? 2 : 1);
            SPtr bound = gen_typed(bound_ty, ctx, g, depth - 1);
            if (!bound) break;
            std::string x = "x" + std::to_string(++fresh_);
            Ctx inner = ctx;
            inner.emplace_back(x, bound_ty);
            SPtr body = gen_typed(goal, inner, g, depth - 1);
            if (!body) break;
            return mk_s(SLet{x, bound, body});
        }
        case 5: { // reference creation
            if (!cfg_.heap_ops || !goal.raw.is_ref() || goal.label != Lbl::Low) break;
            const LType& cell = goal.raw.ref().inner;
            if (!is_specific(cell.label) || !label_csub(g, cell.label)) break;
            SPtr init = gen_typed(cell, ctx, g, depth - 1);
            if (!init) break;
            return mk_s(SRef{cell.label, init, {}});
        }
        case 6: { // dereference
            if (!cfg_.heap_ops) break;
            auto [l0, gr] = split_label(goal.label);
            LType ref_ty{make_ref(LType{goal.raw, l0}), gr};
            SPtr ref = gen_typed(ref_ty, ctx, g, depth - 1);
            if (!ref) break;
            return mk_s(SDeref{ref, {}});
        }
        case 7: { // assignment
            if (!cfg_.heap_ops || !(goal == unit_ty(Lbl::Low))) break;
            Lbl ghat;
            if (g == Lbl::Star) ghat = chance(0.5) ? Lbl::Star : Lbl::High;
            else if (g == Lbl::High) ghat = chance(0.3) ? Lbl::Star : Lbl::High;
            else ghat = chance(0.3) ? Lbl::Star : (chance(0.5) ? Lbl::Low : Lbl::High);
            if (!label_csub(g, ghat)) break;
            LType cell{chance(0.8) ? bool_raw() : unit_raw(), ghat};
            Lbl g1 = chance(0.3) ? Lbl::Star : Lbl::Low;
            if (!label_csub(g1, ghat)) break;
            SPtr lhs = gen_typed(LType{make_ref(cell), g1}, ctx, g, depth - 1);
            if (!lhs) break;
            SPtr rhs = gen_typed(cell, ctx, g, depth - 1);
            if (!rhs) break;
            return mk_s(SAssign{lhs, rhs, {}});
        }
        }
    }
    return leaf(goal, ctx, g);
}

SPtr Gen::gen_program(const LType& goal) {
    for (int attempt = 0; attempt < 20; ++attempt) {
        SPtr m = gen_typed(goal, base_ctx(), Lbl::Low, cfg_.max_depth);
        if (!m) continue;
        try {
            LType ty = typecheck_surface(m, base_ctx(), Lbl::Low);
            if (!(ty == goal)) continue;
            return renumber(m);
        } catch (const TypeError&) {
            continue; // a generator gap; soundness is asserted by the suites
        }
    }
    return nullptr;
}

std::map<std::string, int> construct_histogram(const SPtr& m) {
    std::map<std::string, int> h;
    std::function<void(const SPtr&)> go = [&](const SPtr& t) {
        const STerm& s = *t;
        if (s.is<SVar>()) h["var"]++;
        if (s.is<SConst>()) h["const"]++;
        if (auto lam = s.as<SLam>()) {
            h["lam"]++;
            go(lam->body);
        } else if (auto app = s.as<SApp>()) {
            h["app"]++;
            go(app->fun);
            go(app->arg);
        } else if (auto ite = s.as<SIf>()) {
            h["if"]++;
            go(ite->cond);
            go(ite->thn);
            go(ite->els);
        } else if (auto let = s.as<SLet>()) {
            h["let"]++;
            go(let->bound);
            go(let->body);
        } else if (auto ref = s.as<SRef>()) {
            h["ref"]++;
            go(ref->init);
        } else if (auto der = s.as<SDeref>()) {
            h["deref"]++;
            go(der->e);
        } else if (auto asg = s.as<SAssign>()) {
            h["assign"]++;
            go(asg->lhs);
            go(asg->rhs);
        } else if (auto ann = s.as<SAnn>()) {
            h["ann"]++;
            go(ann->e);
        }
    };
    go(m);
    return h;
}

namespace {

size_t count_type_sites(const LType& t) {
    size_t n = is_specific(t.label) ? 1 : 0;
    if (t.raw.is_ref()) n += count_type_sites(t.raw.ref().inner);
    if (t.raw.is_fun()) {
        const auto& f = t.raw.fun();
        n += count_type_sites(f.dom);
        n += is_specific(f.pc) ? 1 : 0;
        n += count_type_sites(f.cod);
    }
    return n;
}

Lbl erode_label(Lbl l, size_t& site, bool& done) {
    if (done || !is_specific(l)) return l;
    if (site == 0) {
        done = true;
        return Lbl::Star;
    }
    site--;
    return l;
}

LType erode_type(const LType& t, size_t& site, bool& done) {
    Lbl label = erode_label(t.label, site, done);
    RawType raw = t.raw;
    if (t.raw.is_ref()) {
        raw = make_ref(erode_type(t.raw.ref().inner, site, done));
    } else if (t.raw.is_fun()) {
        const auto& f = t.raw.fun();
        LType dom = erode_type(f.dom, site, done);
        Lbl pc = erode_label(f.pc, site, done);
        LType cod = erode_type(f.cod, site, done);
        raw = make_fun(dom, pc, cod);
    }
    return {raw, label};
}

SPtr erode_walk(const SPtr& m, size_t& site, bool& done) {
    const STerm& t = *m;
    if (done || t.is<SVar>() || t.is<SConst>()) return m;
    if (auto n = t.as<SLam>()) {
        Lbl pc = erode_label(n->pc, site, done);
        LType ann = erode_type(n->ann, site, done);
        SPtr body = erode_walk(n->body, site, done);
        return mk_s(SLam{pc, n->x, ann, body, n->l}, t.span);
    }
    if (auto n = t.as<SApp>()) {
        SPtr fun = erode_walk(n->fun, site, done);
        SPtr arg = erode_walk(n->arg, site, done);
        return mk_s(SApp{fun, arg, n->blame}, t.span);
    }
    if (auto n = t.as<SIf>()) {
        SPtr c = erode_walk(n->cond, site, done);
        SPtr a = erode_walk(n->thn, site, done);
        SPtr b = erode_walk(n->els, site, done);
        return mk_s(SIf{c, a, b, n->blame}, t.span);
    }
    if (auto n = t.as<SLet>()) {
        SPtr bound = erode_walk(n->bound, site, done);
        SPtr body = erode_walk(n->body, site, done);
        return mk_s(SLet{n->x, bound, body}, t.span);
    }
    if (auto n = t.as<SRef>())
        return mk_s(SRef{n->l, erode_walk(n->init, site, done), n->blame}, t.span);
    if (auto n = t.as<SDeref>())
        return mk_s(SDeref{erode_walk(n->e, site, done), n->blame}, t.span);
    if (auto n = t.as<SAssign>()) {
        SPtr lhs = erode_walk(n->lhs, site, done);
        SPtr rhs = erode_walk(n->rhs, site, done);
        return mk_s(SAssign{lhs, rhs, n->blame}, t.span);
    }
    if (auto n = t.as<SAnn>()) {
        LType ann = erode_type(n->ann, site, done);
        SPtr inner = erode_walk(n->e, site, done);
        return mk_s(SAnn{inner, ann, n->blame}, t.span);
    }
    return m;
}

} // namespace

size_t erode_site_count(const SPtr& m) {
    const STerm& t = *m;
    if (t.is<SVar>() || t.is<SConst>()) return 0;
    if (auto n = t.as<SLam>())
        return (is_specific(n->pc) ? 1 : 0) + count_type_sites(n->ann) + erode_site_count(n->body);
    if (auto n = t.as<SApp>()) return erode_site_count(n->fun) + erode_site_count(n->arg);
    if (auto n = t.as<SIf>())
        return erode_site_count(n->cond) + erode_site_count(n->thn) + erode_site_count(n->els);
    if (auto n = t.as<SLet>()) return erode_site_count(n->bound) + erode_site_count(n->body);
    if (auto n = t.as<SRef>()) return erode_site_count(n->init);
    if (auto n = t.as<SDeref>()) return erode_site_count(n->e);
    if (auto n = t.as<SAssign>()) return erode_site_count(n->lhs) + erode_site_count(n->rhs);
    if (auto n = t.as<SAnn>()) return count_type_sites(n->ann) + erode_site_count(n->e);
    return 0;
}

SPtr erode(const SPtr& m, size_t site) {
    if (site >= erode_site_count(m)) throw ContractError("erode: site selector out of range");
    bool done = false;
    return erode_walk(m, site, done);
}

} // namespace gifc
