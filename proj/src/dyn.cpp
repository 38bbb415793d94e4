#include "dyn.hpp"

namespace gifc {

std::string to_string(const DPtr& t) {
    const DTerm& d = *t;
    if (auto n = d.as<DVar>()) return n->name;
    if (auto n = d.as<DConst>()) return to_string(n->k) + "@" + to_string(n->l);
    if (auto n = d.as<DAddr>())
        return "addr(" + to_string(n->region) + "," + std::to_string(n->idx) + ")@" +
               to_string(n->l);
    if (auto n = d.as<DLam>()) return "(lam " + n->x + ". " + to_string(n->body) + ")@" + to_string(n->l);
    if (auto n = d.as<DApp>()) return "(" + to_string(n->fun) + " " + to_string(n->arg) + ")";
    if (auto n = d.as<DIf>())
        return "(if " + to_string(n->cond) + " " + to_string(n->thn) + " " + to_string(n->els) +
               ")";
    if (auto n = d.as<DRefQ>()) return "(ref? " + to_string(n->l) + " " + to_string(n->init) + ")";
    if (auto n = d.as<DDeref>()) return "(! " + to_string(n->e) + ")";
    if (auto n = d.as<DAssignQ>()) return "(" + to_string(n->lhs) + " :=? " + to_string(n->rhs) + ")";
    if (auto n = d.as<DProt>()) return "(prot " + to_string(n->l) + " " + to_string(n->body) + ")";
    return "?";
}

DPtr erase(const CCPtr& m, const LType& at) {
    const CCTerm& t = *m;
    if (auto n = t.as<Var>()) return mk_d(DVar{n->name});
    if (auto n = t.as<Const>()) return mk_d(DConst{n->k, at.label});
    if (auto n = t.as<AddrT>()) return mk_d(DAddr{n->idx, n->region, at.label});
    if (auto n = t.as<Lam>()) {
        const auto& f = at.raw.fun();
        return mk_d(DLam{n->x, erase(n->body, f.cod), at.label});
    }
    if (auto n = t.as<App>()) {
        LType fun_ty{make_fun(n->dom, Lbl::Star, n->cod), n->l};
        return mk_d(DApp{erase(n->fun, fun_ty), erase(n->arg, n->dom)});
    }
    if (auto n = t.as<AppStar>()) {
        LType cod{n->cod_raw, Lbl::Star};
        LType fun_ty{make_fun(n->dom, Lbl::Star, cod), Lbl::Star};
        return mk_d(DApp{erase(n->fun, fun_ty), erase(n->arg, n->dom)});
    }
    if (auto n = t.as<If>())
        return mk_d(DIf{erase(n->cond, bool_ty(n->l)), erase(n->thn, n->ty), erase(n->els, n->ty)});
    if (auto n = t.as<IfStar>()) {
        LType ty{n->ty_raw, Lbl::Star};
        return mk_d(DIf{erase(n->cond, bool_ty(Lbl::Star)), erase(n->thn, ty), erase(n->els, ty)});
    }
    if (auto n = t.as<Let>()) {
        // The dynamic language has no let; a low-labeled beta redex is its
        // exact image (prot low is the identity on values).
        DPtr lam = mk_d(DLam{n->x, erase(n->body, at), Lbl::Low});
        return mk_d(DApp{lam, erase(n->bound, n->ty)});
    }
    if (auto n = t.as<RefT>()) return mk_d(DRefQ{n->l, erase(n->init, LType{n->cell, n->l})});
    if (auto n = t.as<RefQ>()) return mk_d(DRefQ{n->l, erase(n->init, LType{n->cell, n->l})});
    if (auto n = t.as<Deref>())
        return mk_d(DDeref{erase(n->e, LType{make_ref(n->ty), n->l})});
    if (auto n = t.as<DerefStar>()) {
        LType inner{n->ty_raw, Lbl::Star};
        return mk_d(DDeref{erase(n->e, LType{make_ref(inner), Lbl::Star})});
    }
    if (auto n = t.as<Assign>()) {
        LType cell{n->ty_raw, n->lhat};
        return mk_d(DAssignQ{erase(n->lhs, LType{make_ref(cell), n->l}), erase(n->rhs, cell)});
    }
    if (auto n = t.as<AssignQ>()) {
        LType cell{n->ty_raw, n->ghat};
        return mk_d(DAssignQ{erase(n->lhs, LType{make_ref(cell), Lbl::Star}), erase(n->rhs, cell)});
    }
    if (auto n = t.as<Prot>()) return mk_d(DProt{n->l, erase(n->body, n->ty)});
    if (auto n = t.as<Cast>()) {
        auto ct = vcoercion_type(n->c);
        if (!ct) throw ContractError("erase: ill-typed cast");
        return erase(n->e, ct->first);
    }
    throw ContractError("erase: blame has no dynamic image");
}

DPtr subst_dyn(const DPtr& term, const std::string& name, const DPtr& value) {
    const DTerm& t = *term;
    if (auto n = t.as<DVar>()) return n->name == name ? value : term;
    if (t.is<DConst>() || t.is<DAddr>()) return term;
    if (auto n = t.as<DLam>()) {
        if (n->x == name) return term;
        return mk_d(DLam{n->x, subst_dyn(n->body, name, value), n->l});
    }
    if (auto n = t.as<DApp>())
        return mk_d(DApp{subst_dyn(n->fun, name, value), subst_dyn(n->arg, name, value)});
    if (auto n = t.as<DIf>())
        return mk_d(DIf{subst_dyn(n->cond, name, value), subst_dyn(n->thn, name, value),
                        subst_dyn(n->els, name, value)});
    if (auto n = t.as<DRefQ>()) return mk_d(DRefQ{n->l, subst_dyn(n->init, name, value)});
    if (auto n = t.as<DDeref>()) return mk_d(DDeref{subst_dyn(n->e, name, value)});
    if (auto n = t.as<DAssignQ>())
        return mk_d(DAssignQ{subst_dyn(n->lhs, name, value), subst_dyn(n->rhs, name, value)});
    if (auto n = t.as<DProt>()) return mk_d(DProt{n->l, subst_dyn(n->body, name, value)});
    throw ContractError("subst_dyn: unhandled node");
}

namespace {

bool dyn_is_value(const DPtr& t) { return t->is<DConst>() || t->is<DAddr>() || t->is<DLam>(); }

Lbl dyn_label(const DPtr& t) {
    if (auto n = t->as<DConst>()) return n->l;
    if (auto n = t->as<DAddr>()) return n->l;
    if (auto n = t->as<DLam>()) return n->l;
    throw ContractError("dyn_label: not a value");
}

DPtr dyn_join(const DPtr& t, Lbl l) {
    if (l == Lbl::Low) return t;
    if (auto n = t->as<DConst>()) return mk_d(DConst{n->k, label_join(n->l, l)});
    if (auto n = t->as<DAddr>()) return mk_d(DAddr{n->idx, n->region, label_join(n->l, l)});
    if (auto n = t->as<DLam>()) return mk_d(DLam{n->x, n->body, label_join(n->l, l)});
    throw ContractError("dyn_join: not a value");
}

struct DynStep {
    enum class Tag { Stepped, Value, NSU, Stuck } tag;
    DPtr term;
    std::string site;
};

struct DynMachine {
    DynHeap& heap;

    DynStep stepped(DPtr t) { return {DynStep::Tag::Stepped, std::move(t), {}}; }
    DynStep nsu(std::string site) { return {DynStep::Tag::NSU, nullptr, std::move(site)}; }
    DynStep stuck(std::string why) { return {DynStep::Tag::Stuck, nullptr, std::move(why)}; }

    DynStep step(const DPtr& t, Lbl pc) {
        if (dyn_is_value(t)) return {DynStep::Tag::Value, t, {}};

        auto descend = [&](const DPtr& child, auto rebuild) -> std::optional<DynStep> {
            if (dyn_is_value(child)) return std::nullopt;
            DynStep r = step(child, pc);
            if (r.tag == DynStep::Tag::Stepped) return stepped(rebuild(r.term));
            return r; // NSU or stuck propagates
        };

        if (auto n = t->as<DProt>()) {
            if (dyn_is_value(n->body)) return stepped(dyn_join(n->body, n->l)); // prot-val
            DynStep r = step(n->body, label_join(pc, n->l));                    // prot-ctx
            if (r.tag == DynStep::Tag::Stepped) return stepped(mk_d(DProt{n->l, r.term}));
            return r;
        }
        if (auto n = t->as<DApp>()) {
            if (auto r = descend(n->fun, [&](DPtr f) { return mk_d(DApp{f, n->arg}); })) return *r;
            if (auto r = descend(n->arg, [&](DPtr a) { return mk_d(DApp{n->fun, a}); })) return *r;
            auto lam = n->fun->as<DLam>();
            if (!lam) return stuck("application of a non-function");
            return stepped(mk_d(DProt{lam->l, subst_dyn(lam->body, lam->x, n->arg)}));
        }
        if (auto n = t->as<DIf>()) {
            if (auto r = descend(n->cond, [&](DPtr c) { return mk_d(DIf{c, n->thn, n->els}); }))
                return *r;
            auto c = n->cond->as<DConst>();
            if (!c || c->k == ConstK::Unit) return stuck("if on a non-boolean");
            return stepped(mk_d(DProt{c->l, c->k == ConstK::True ? n->thn : n->els}));
        }
        if (auto n = t->as<DRefQ>()) {
            if (auto r = descend(n->init, [&](DPtr i) { return mk_d(DRefQ{n->l, i}); })) return *r;
            if (!label_order(pc, n->l)) return nsu("ref? " + to_string(n->l));
            auto& region = heap.region(n->l);
            region.push_back(dyn_join(n->init, n->l));
            return stepped(mk_d(DAddr{int(region.size()) - 1, n->l, Lbl::Low}));
        }
        if (auto n = t->as<DDeref>()) {
            if (auto r = descend(n->e, [&](DPtr e) { return mk_d(DDeref{e}); })) return *r;
            auto a = n->e->as<DAddr>();
            if (!a) return stuck("dereference of a non-address");
            return stepped(mk_d(DProt{a->l, heap.region(a->region).at(a->idx)}));
        }
        if (auto n = t->as<DAssignQ>()) {
            if (auto r = descend(n->lhs, [&](DPtr e) { return mk_d(DAssignQ{e, n->rhs}); }))
                return *r;
            if (auto r = descend(n->rhs, [&](DPtr e) { return mk_d(DAssignQ{n->lhs, e}); }))
                return *r;
            auto a = n->lhs->as<DAddr>();
            if (!a) return stuck("assignment to a non-address");
            if (!label_order(label_join(pc, a->l), a->region))
                return nsu(":=? " + to_string(a->region));
            heap.region(a->region).at(a->idx) = dyn_join(n->rhs, a->region);
            return stepped(mk_d(DConst{ConstK::Unit, Lbl::Low}));
        }
        if (t->is<DVar>()) return stuck("free variable");
        return stuck("no rule applies");
    }
};

} // namespace

DynOutcome run_dyn(const DPtr& m, Lbl pc, long fuel) {
    DynHeap heap;
    DynMachine machine{heap};
    DPtr cur = m;
    DynOutcome out{};
    for (long i = 0; i < fuel; ++i) {
        DynStep r = machine.step(cur, pc);
        switch (r.tag) {
        case DynStep::Tag::Value:
            out.tag = DynOutcome::Tag::Value;
            out.value = r.term;
            return out;
        case DynStep::Tag::NSU:
            out.tag = DynOutcome::Tag::NSUError;
            out.site = r.site;
            return out;
        case DynStep::Tag::Stuck:
            out.tag = DynOutcome::Tag::Stuck;
            out.site = r.site;
            return out;
        case DynStep::Tag::Stepped:
            cur = r.term;
            out.steps++;
            break;
        }
    }
    out.tag = DynOutcome::Tag::Timeout;
    return out;
}

bool value_sim(const DPtr& dyn_value, const Value& v, const LType& at) {
    if (!dyn_is_value(dyn_value)) return false;
    Lbl dl = dyn_label(dyn_value);
    Lbl bound;
    if (v.wrap) {
        bound = security(v.wrap->seq);
    } else {
        if (!is_specific(at.label)) return false;
        bound = at.label;
    }
    if (!label_order(dl, bound)) return false;
    if (v.raw.is_const()) {
        auto c = dyn_value->as<DConst>();
        return c && c->k == std::get<RawValue::ConstV>(v.raw.v).k;
    }
    if (v.raw.is_addr()) {
        auto a = dyn_value->as<DAddr>();
        const auto& av = std::get<RawValue::AddrV>(v.raw.v);
        return a && a->idx == av.idx && a->region == av.region;
    }
    // Closures: label bound only.
    return dyn_value->is<DLam>();
}

} // namespace gifc
