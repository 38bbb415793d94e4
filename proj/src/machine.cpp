#include "machine.hpp"

namespace gifc {

namespace {

struct Stepper {
    Heap& heap;
    const MachineOptions& opts;
    StepInfo* info;

    bool mut(Mutation m) const { return opts.mutation == m; }
    bool proj_blame() const { return mut(Mutation::ProjAlwaysBlame); }

    void note(const char* rule, const CCTerm& redex) {
        if (info) {
            info->rule = rule;
            info->redex = to_string(redex);
        }
    }

    static StepRes stepped(CCPtr t) { return {StepRes::Tag::Stepped, std::move(t), {}, {}, {}}; }
    static StepRes valued(Value v) { return {StepRes::Tag::Value, {}, std::move(v), {}, {}}; }
    static StepRes blamed(BlameLabel p) { return {StepRes::Tag::Blame, {}, {}, std::move(p), {}}; }
    static StepRes stuck(std::string why) {
        return {StepRes::Tag::Stuck, {}, {}, {}, std::move(why)};
    }

    // Lift a cast outcome into a stepped term.
    StepRes from_cast(CastResult&& r) {
        if (auto* b = std::get_if<BlameSignal>(&r)) return stepped(mk_cc(BlameT{b->p}));
        return stepped(term_from_value(std::get<Value>(r)));
    }

    // Normalize a PC cast; nullopt means the NSU/cast check failed with blame.
    std::variant<LabelExpr, BlameLabel> pc_cast(const LabelExpr& base, const CoercionSeq& c) {
        LabelExpr out = normalize_expr(LabelExpr::apply(base, c), proj_blame());
        if (out.is_blame()) return out.blame_label();
        return out;
    }

    Value alloc(Lbl region, const Value& v, const RawType& cellTy) {
        heap.region(region).push_back(HeapCell{v, cellTy});
        return Value{RawValue{RawValue::AddrV{region, int(heap.region(region).size()) - 1}}, {}};
    }

    // One step of `t` under `pc`. Congruence is handled here; rule names refer
    // to the redexes actually fired.
    StepRes step_term(const CCPtr& t, const LabelExpr& pc) {
        if (auto v = term_as_value(t)) return valued(*v);
        if (auto n = t->as<BlameT>()) return blamed(n->p);

        // prot has its own context rule: the body runs under the stored PC.
        if (auto n = t->as<Prot>()) {
            StepRes body = step_term(n->body, n->pc);
            switch (body.tag) {
            case StepRes::Tag::Stepped:
                return stepped(mk_cc(Prot{n->pc, n->l, body.term, n->ty}));
            case StepRes::Tag::Blame:
                note("prot-blame", *t);
                return stepped(mk_cc(BlameT{body.p}));
            case StepRes::Tag::Value: {
                note("prot-val", *t);
                if (mut(Mutation::ProtNoStamp)) return stepped(term_from_value(body.value));
                return stepped(term_from_value(stamp_val(body.value, n->ty, n->l)));
            }
            case StepRes::Tag::Stuck:
                return body;
            }
        }

        // Congruence: reduce the leftmost non-value child, propagating blame
        // one frame at a time.
        auto descend = [&](const CCPtr& child,
                           auto rebuild) -> std::optional<StepRes> {
            if (term_as_value(child)) return std::nullopt;
            StepRes r = step_term(child, pc);
            switch (r.tag) {
            case StepRes::Tag::Stepped: return stepped(rebuild(r.term));
            case StepRes::Tag::Blame:
                note("xi-blame", *t);
                return stepped(mk_cc(BlameT{r.p}));
            case StepRes::Tag::Stuck: return r;
            case StepRes::Tag::Value:
                throw ContractError("machine: child stepped to a value unexpectedly");
            }
            return std::nullopt;
        };

        if (auto n = t->as<App>()) {
            if (auto r = descend(n->fun, [&](CCPtr f) {
                    return mk_cc(App{f, n->arg, n->dom, n->cod, n->l});
                }))
                return *r;
            if (auto r = descend(n->arg, [&](CCPtr a) {
                    return mk_cc(App{n->fun, a, n->dom, n->cod, n->l});
                }))
                return *r;
            Value fun = *term_as_value(n->fun);
            Value arg = *term_as_value(n->arg);
            if (!fun.raw.is_lam()) return stuck("application of a non-function");
            const auto& lam = std::get<RawValue::LamV>(fun.raw.v);
            if (!fun.wrap) {
                note("beta", *t);
                LabelExpr pc2 = stamp_pc(pc, n->l);
                CCPtr body = subst(lam.body, lam.x, term_from_value(arg));
                return stepped(mk_cc(Prot{pc2, n->l, body, n->cod}));
            }
            if (!fun.wrap->raw.is_fun()) return stuck("function proxy with non-function coercion");
            const auto& fc = fun.wrap->raw.fun();
            note("app-cast", *t);
            auto pc2 = pc_cast(stamp_pc(pc, n->l), fc.pc_cast);
            if (auto* q = std::get_if<BlameLabel>(&pc2)) {
                note("app-blame-pc", *t);
                return stepped(mk_cc(BlameT{*q}));
            }
            CastResult w = apply_cast(arg, fc.dom, proj_blame());
            if (auto* b = std::get_if<BlameSignal>(&w)) {
                note("app-blame", *t);
                return stepped(mk_cc(BlameT{b->p}));
            }
            CCPtr body = subst(lam.body, lam.x, term_from_value(std::get<Value>(w)));
            return stepped(mk_cc(Prot{std::get<LabelExpr>(pc2), n->l,
                                      mk_cc(Cast{body, fc.cod}), n->cod}));
        }

        if (auto n = t->as<AppStar>()) {
            if (auto r = descend(n->fun, [&](CCPtr f) {
                    return mk_cc(AppStar{f, n->arg, n->dom, n->cod_raw});
                }))
                return *r;
            if (auto r = descend(n->arg, [&](CCPtr a) {
                    return mk_cc(AppStar{n->fun, a, n->dom, n->cod_raw});
                }))
                return *r;
            Value fun = *term_as_value(n->fun);
            Value arg = *term_as_value(n->arg);
            if (!fun.raw.is_lam() || !fun.wrap || !fun.wrap->raw.is_fun())
                return stuck("app* expects a function proxy");
            const auto& lam = std::get<RawValue::LamV>(fun.raw.v);
            const auto& fc = fun.wrap->raw.fun();
            Lbl eff = security(fun.wrap->seq);
            note("app*-cast", *t);
            auto pc2 = pc_cast(stamp_bang_pc(pc, eff), fc.pc_cast);
            if (auto* q = std::get_if<BlameLabel>(&pc2)) {
                note("app*-blame-pc", *t);
                return stepped(mk_cc(BlameT{*q}));
            }
            CastResult w = apply_cast(arg, fc.dom, proj_blame());
            if (auto* b = std::get_if<BlameSignal>(&w)) {
                note("app*-blame", *t);
                return stepped(mk_cc(BlameT{b->p}));
            }
            CCPtr body = subst(lam.body, lam.x, term_from_value(std::get<Value>(w)));
            return stepped(mk_cc(Prot{std::get<LabelExpr>(pc2), eff,
                                      mk_cc(Cast{body, fc.cod}),
                                      LType{n->cod_raw, Lbl::Star}}));
        }

        if (auto n = t->as<If>()) {
            if (auto r = descend(n->cond, [&](CCPtr c) {
                    return mk_cc(If{c, n->ty, n->l, n->thn, n->els});
                }))
                return *r;
            Value cond = *term_as_value(n->cond);
            if (!cond.raw.is_const()) return stuck("if on a non-constant");
            ConstK k = std::get<RawValue::ConstV>(cond.raw.v).k;
            if (k == ConstK::Unit) return stuck("if on unit");
            note(cond.wrap ? (k == ConstK::True ? "if-true-cast" : "if-false-cast")
                           : (k == ConstK::True ? "if-true" : "if-false"),
                 *t);
            const CCPtr& branch = k == ConstK::True ? n->thn : n->els;
            return stepped(mk_cc(Prot{stamp_pc(pc, n->l), n->l, branch, n->ty}));
        }

        if (auto n = t->as<IfStar>()) {
            if (auto r = descend(n->cond, [&](CCPtr c) {
                    return mk_cc(IfStar{c, n->ty_raw, n->thn, n->els});
                }))
                return *r;
            Value cond = *term_as_value(n->cond);
            if (!cond.raw.is_const() || !cond.wrap)
                return stuck("if* expects an injected boolean");
            ConstK k = std::get<RawValue::ConstV>(cond.raw.v).k;
            if (k == ConstK::Unit) return stuck("if* on unit");
            Lbl eff = security(cond.wrap->seq);
            note(k == ConstK::True ? "if*-true-cast" : "if*-false-cast", *t);
            const CCPtr& branch = k == ConstK::True ? n->thn : n->els;
            return stepped(mk_cc(Prot{stamp_bang_pc(pc, eff), eff, branch,
                                      LType{n->ty_raw, Lbl::Star}}));
        }

        if (auto n = t->as<Let>()) {
            if (auto r = descend(n->bound, [&](CCPtr b) {
                    return mk_cc(Let{n->x, b, n->ty, n->body});
                }))
                return *r;
            note("let", *t);
            if (mut(Mutation::LetNoSubst)) return stepped(n->body);
            return stepped(subst(n->body, n->x, n->bound));
        }

        if (auto n = t->as<RefT>()) {
            if (auto r = descend(n->init, [&](CCPtr i) {
                    return mk_cc(RefT{n->l, i, n->cell});
                }))
                return *r;
            note("ref", *t);
            return stepped(term_from_value(alloc(n->l, *term_as_value(n->init), n->cell)));
        }

        if (auto n = t->as<RefQ>()) {
            if (auto r = descend(n->init, [&](CCPtr i) {
                    return mk_cc(RefQ{n->p, n->l, i, n->cell});
                }))
                return *r;
            note("ref?", *t);
            auto pc2 = pc_cast(pc, coerce_label(Lbl::Star, n->l, n->p));
            if (auto* q = std::get_if<BlameLabel>(&pc2)) {
                note("ref?-blame", *t);
                return stepped(mk_cc(BlameT{*q}));
            }
            return stepped(term_from_value(alloc(n->l, *term_as_value(n->init), n->cell)));
        }

        if (auto n = t->as<Deref>()) {
            if (auto r = descend(n->e, [&](CCPtr e) { return mk_cc(Deref{e, n->ty, n->l}); }))
                return *r;
            Value ref = *term_as_value(n->e);
            if (!ref.raw.is_addr()) return stuck("dereference of a non-address");
            const auto& a = std::get<RawValue::AddrV>(ref.raw.v);
            const Value& cell = heap.region(a.region).at(a.idx).val;
            if (!ref.wrap) {
                note("deref", *t);
                return stepped(mk_cc(Prot{stamp_pc(pc, n->l), n->l,
                                          term_from_value(cell), n->ty}));
            }
            if (!ref.wrap->raw.is_ref()) return stuck("reference proxy with non-ref coercion");
            note("deref-cast", *t);
            CCPtr body = mk_cc(Cast{term_from_value(cell), ref.wrap->raw.ref().read});
            return stepped(mk_cc(Prot{stamp_pc(pc, n->l), n->l, body, n->ty}));
        }

        if (auto n = t->as<DerefStar>()) {
            if (auto r = descend(n->e, [&](CCPtr e) { return mk_cc(DerefStar{e, n->ty_raw}); }))
                return *r;
            Value ref = *term_as_value(n->e);
            if (!ref.raw.is_addr() || !ref.wrap || !ref.wrap->raw.is_ref())
                return stuck("!* expects a reference proxy");
            const auto& a = std::get<RawValue::AddrV>(ref.raw.v);
            const Value& cell = heap.region(a.region).at(a.idx).val;
            Lbl eff = security(ref.wrap->seq);
            note("deref*-cast", *t);
            CCPtr body = mk_cc(Cast{term_from_value(cell), ref.wrap->raw.ref().read});
            return stepped(mk_cc(Prot{stamp_bang_pc(pc, eff), eff, body,
                                      LType{n->ty_raw, Lbl::Star}}));
        }

        if (auto n = t->as<Assign>()) {
            if (auto r = descend(n->lhs, [&](CCPtr e) {
                    return mk_cc(Assign{e, n->rhs, n->ty_raw, n->lhat, n->l});
                }))
                return *r;
            if (auto r = descend(n->rhs, [&](CCPtr e) {
                    return mk_cc(Assign{n->lhs, e, n->ty_raw, n->lhat, n->l});
                }))
                return *r;
            Value ref = *term_as_value(n->lhs);
            Value val = *term_as_value(n->rhs);
            if (!ref.raw.is_addr()) return stuck("assignment to a non-address");
            const auto& a = std::get<RawValue::AddrV>(ref.raw.v);
            if (!ref.wrap) {
                note("assign", *t);
                heap.region(a.region).at(a.idx).val = val;
                return stepped(mk_cc(Const{ConstK::Unit}));
            }
            if (!ref.wrap->raw.is_ref()) return stuck("reference proxy with non-ref coercion");
            note("assign-cast", *t);
            CastResult w = apply_cast(val, ref.wrap->raw.ref().write, proj_blame());
            if (auto* b = std::get_if<BlameSignal>(&w)) {
                note("assign-blame", *t);
                return stepped(mk_cc(BlameT{b->p}));
            }
            heap.region(a.region).at(a.idx).val = std::get<Value>(w);
            return stepped(mk_cc(Const{ConstK::Unit}));
        }

        if (auto n = t->as<AssignQ>()) {
            if (auto r = descend(n->lhs, [&](CCPtr e) {
                    return mk_cc(AssignQ{n->p, e, n->rhs, n->ty_raw, n->ghat});
                }))
                return *r;
            if (auto r = descend(n->rhs, [&](CCPtr e) {
                    return mk_cc(AssignQ{n->p, n->lhs, e, n->ty_raw, n->ghat});
                }))
                return *r;
            Value ref = *term_as_value(n->lhs);
            Value val = *term_as_value(n->rhs);
            if (!ref.raw.is_addr() || !ref.wrap || !ref.wrap->raw.is_ref())
                return stuck("assign? expects a reference proxy");
            const auto& a = std::get<RawValue::AddrV>(ref.raw.v);
            Lbl eff = security(ref.wrap->seq);
            note("assign?-cast", *t);
            auto pc2 = pc_cast(stamp_bang_pc(pc, eff), coerce_label(Lbl::Star, a.region, n->p));
            if (auto* q = std::get_if<BlameLabel>(&pc2)) {
                note("assign?-blame-pc", *t);
                return stepped(mk_cc(BlameT{*q}));
            }
            CastResult w = apply_cast(val, ref.wrap->raw.ref().write, proj_blame());
            if (auto* b = std::get_if<BlameSignal>(&w)) {
                note("assign?-blame", *t);
                return stepped(mk_cc(BlameT{b->p}));
            }
            heap.region(a.region).at(a.idx).val = std::get<Value>(w);
            return stepped(mk_cc(Const{ConstK::Unit}));
        }

        if (auto n = t->as<Cast>()) {
            if (auto r = descend(n->e, [&](CCPtr e) { return mk_cc(Cast{e, n->c}); })) return *r;
            note("cast", *t);
            return from_cast(apply_cast(*term_as_value(n->e), n->c, proj_blame()));
        }

        if (t->is<Var>()) return stuck("free variable");
        return stuck("no rule applies");
    }
};

} // namespace

StepRes step(Config& cfg, const MachineOptions& opts, StepInfo* info) {
    Stepper s{cfg.heap, opts, info};
    StepRes r = s.step_term(cfg.term, cfg.pc);
    if (r.tag == StepRes::Tag::Stepped) cfg.term = r.term;
    return r;
}

RunOutcome run(const CCPtr& term, const LType& type, const RunOptions& opts) {
    RunOutcome out{};
    Config cfg{term, {}, LabelExpr::lit(Lbl::Low)};
    HeapTyping sigma = HeapTyping::of(cfg.heap);

    auto preserve_check = [&](const char* when) -> std::optional<std::string> {
        HeapTyping next = HeapTyping::of(cfg.heap);
        if (!next.extends(sigma)) return std::string(when) + ": heap typing shrank";
        sigma = next;
        try {
            typecheck_cc(cfg.term, {}, sigma, Lbl::Low, security_pc(cfg.pc), type);
            check_heap(cfg.heap, sigma);
        } catch (const CCTypeError& e) {
            return std::string(when) + ": " + e.what();
        }
        return std::nullopt;
    };

    if (opts.preserve) {
        if (auto err = preserve_check("initial")) {
            out.tag = RunOutcome::Tag::PreservationFail;
            out.why = *err;
            return out;
        }
    }

    for (long i = 0; i < opts.fuel; ++i) {
        StepInfo info;
        StepRes r = step(cfg, opts.machine, &info);
        switch (r.tag) {
        case StepRes::Tag::Value:
            out.tag = RunOutcome::Tag::Final;
            out.value = r.value;
            out.heap = cfg.heap;
            return out;
        case StepRes::Tag::Blame:
            out.tag = RunOutcome::Tag::Blame;
            out.p = r.p;
            out.heap = cfg.heap;
            return out;
        case StepRes::Tag::Stuck:
            out.tag = RunOutcome::Tag::Stuck;
            out.why = r.why;
            out.heap = cfg.heap;
            return out;
        case StepRes::Tag::Stepped:
            out.steps++;
            if (opts.trace)
                out.trace.push_back("[" + std::to_string(out.steps) + "] " + info.rule +
                                    " pc=" + to_string(cfg.pc) +
                                    " heap=" + std::to_string(cfg.heap.size()) + " " +
                                    info.redex);
            if (opts.preserve) {
                if (auto err = preserve_check(("step " + std::to_string(out.steps)).c_str())) {
                    out.tag = RunOutcome::Tag::PreservationFail;
                    out.why = *err;
                    out.heap = cfg.heap;
                    return out;
                }
            }
            break;
        }
    }
    out.tag = RunOutcome::Tag::Timeout;
    out.heap = cfg.heap;
    return out;
}

} // namespace gifc
