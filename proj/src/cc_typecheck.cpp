#include "cc_typecheck.hpp"

namespace gifc {

namespace {

[[noreturn]] void fail(const std::string& rule, const std::string& msg) {
    throw CCTypeError("[" + rule + "] " + msg);
}

void require(bool ok, const char* rule, const std::string& msg) {
    if (!ok) fail(rule, msg);
}

void require_eq(const LType& got, const LType& expected, const char* rule) {
    if (!(got == expected))
        fail(rule, "checked type " + to_string(got) + " does not match expected " +
                       to_string(expected));
}

} // namespace

Lbl pc_type(const LabelExpr& pc) {
    if (pc.is_lit()) return pc.lit_label();
    auto t = expr_type(pc);
    if (!t) throw ContractError("pc_type: ill-typed PC");
    return *t;
}

void typecheck_cc(const CCPtr& m, const CCCtx& ctx, const HeapTyping& sigma, Lbl g, Lbl l,
                  const LType& expected) {
    require(is_specific(l), "pc", "the PC security level must be specific");
    const CCTerm& t = *m;
    if (auto n = t.as<Var>()) {
        for (auto it = ctx.rbegin(); it != ctx.rend(); ++it)
            if (it->first == n->name) {
                require_eq(it->second, expected, "var");
                return;
            }
        fail("var", "unbound variable '" + n->name + "'");
    }
    if (auto n = t.as<Const>()) {
        require(expected.raw.is_base() && expected.raw.base() == base_of(n->k), "const",
                "constant " + to_string(n->k) + " checked against " + to_string(expected));
        require(is_specific(expected.label), "const", "constant at a *-labeled type");
        return;
    }
    if (auto n = t.as<AddrT>()) {
        require(expected.raw.is_ref(), "addr", "address checked against " + to_string(expected));
        require(is_specific(expected.label), "addr", "address at a *-labeled type");
        const LType& cell = expected.raw.ref().inner;
        require(is_specific(cell.label) && cell.label == n->region, "addr",
                "cell label mismatch against " + to_string(expected));
        const auto& reg = sigma.region(n->region);
        require(n->idx >= 0 && static_cast<size_t>(n->idx) < reg.size(), "addr",
                "dangling address index " + std::to_string(n->idx));
        require(reg[n->idx] == cell.raw, "addr", "heap typing disagrees at address");
        return;
    }
    if (auto n = t.as<Lam>()) {
        require(expected.raw.is_fun(), "lam", "lambda checked against " + to_string(expected));
        require(is_specific(expected.label), "lam", "lambda at a *-labeled type");
        const auto& f = expected.raw.fun();
        CCCtx inner = ctx;
        inner.emplace_back(n->x, f.dom);
        typecheck_cc(n->body, inner, sigma, f.pc, Lbl::High, f.cod);
        return;
    }
    if (auto n = t.as<App>()) {
        require(is_specific(g), "app", "static application under a *-typed PC");
        require(is_specific(n->l), "app", "static application with * function label");
        LType fun{make_fun(n->dom, label_join(g, n->l), n->cod), n->l};
        typecheck_cc(n->fun, ctx, sigma, g, l, fun);
        typecheck_cc(n->arg, ctx, sigma, g, l, n->dom);
        require_eq(stamp_type(n->cod, n->l), expected, "app");
        return;
    }
    if (auto n = t.as<AppStar>()) {
        LType cod{n->cod_raw, Lbl::Star};
        LType fun{make_fun(n->dom, Lbl::Star, cod), Lbl::Star};
        typecheck_cc(n->fun, ctx, sigma, g, l, fun);
        typecheck_cc(n->arg, ctx, sigma, g, l, n->dom);
        require_eq(cod, expected, "app*");
        return;
    }
    if (auto n = t.as<If>()) {
        require(is_specific(g), "if", "static conditional under a *-typed PC");
        require(is_specific(n->l), "if", "static conditional with * condition label");
        typecheck_cc(n->cond, ctx, sigma, g, l, bool_ty(n->l));
        Lbl branch_pc = label_join(g, n->l);
        typecheck_cc(n->thn, ctx, sigma, branch_pc, Lbl::High, n->ty);
        typecheck_cc(n->els, ctx, sigma, branch_pc, Lbl::High, n->ty);
        require_eq(stamp_type(n->ty, n->l), expected, "if");
        return;
    }
    if (auto n = t.as<IfStar>()) {
        typecheck_cc(n->cond, ctx, sigma, g, l, bool_ty(Lbl::Star));
        LType ty{n->ty_raw, Lbl::Star};
        typecheck_cc(n->thn, ctx, sigma, Lbl::Star, Lbl::High, ty);
        typecheck_cc(n->els, ctx, sigma, Lbl::Star, Lbl::High, ty);
        require_eq(ty, expected, "if*");
        return;
    }
    if (auto n = t.as<Let>()) {
        typecheck_cc(n->bound, ctx, sigma, g, l, n->ty);
        CCCtx inner = ctx;
        inner.emplace_back(n->x, n->ty);
        typecheck_cc(n->body, inner, sigma, g, Lbl::High, expected);
        return;
    }
    if (auto n = t.as<RefT>()) {
        require(is_specific(g), "ref", "static allocation under a *-typed PC");
        require(label_order(g, n->l), "ref",
                "pc " + to_string(g) + " above cell label " + to_string(n->l));
        typecheck_cc(n->init, ctx, sigma, g, l, LType{n->cell, n->l});
        require_eq(LType{make_ref(LType{n->cell, n->l}), Lbl::Low}, expected, "ref");
        return;
    }
    if (auto n = t.as<RefQ>()) {
        require(g == Lbl::Star, "ref?", "checked allocation under a specific PC type");
        typecheck_cc(n->init, ctx, sigma, g, l, LType{n->cell, n->l});
        require_eq(LType{make_ref(LType{n->cell, n->l}), Lbl::Low}, expected, "ref?");
        return;
    }
    if (auto n = t.as<Deref>()) {
        require(is_specific(n->l), "deref", "static dereference with * reference label");
        typecheck_cc(n->e, ctx, sigma, g, l, LType{make_ref(n->ty), n->l});
        require_eq(stamp_type(n->ty, n->l), expected, "deref");
        return;
    }
    if (auto n = t.as<DerefStar>()) {
        LType inner{n->ty_raw, Lbl::Star};
        typecheck_cc(n->e, ctx, sigma, g, l, LType{make_ref(inner), Lbl::Star});
        require_eq(inner, expected, "deref*");
        return;
    }
    if (auto n = t.as<Assign>()) {
        require(is_specific(g), "assign", "static assignment under a *-typed PC");
        require(is_specific(n->lhat) && is_specific(n->l), "assign",
                "static assignment with * labels");
        LType cell{n->ty_raw, n->lhat};
        typecheck_cc(n->lhs, ctx, sigma, g, l, LType{make_ref(cell), n->l});
        typecheck_cc(n->rhs, ctx, sigma, g, l, cell);
        require(label_order(label_join(g, n->l), n->lhat), "assign",
                "heap policy violated: " + to_string(g) + " v " + to_string(n->l) +
                    " above " + to_string(n->lhat));
        require_eq(unit_ty(Lbl::Low), expected, "assign");
        return;
    }
    if (auto n = t.as<AssignQ>()) {
        LType cell{n->ty_raw, n->ghat};
        typecheck_cc(n->lhs, ctx, sigma, g, l, LType{make_ref(cell), Lbl::Star});
        typecheck_cc(n->rhs, ctx, sigma, g, l, cell);
        require_eq(unit_ty(Lbl::Low), expected, "assign?");
        return;
    }
    if (auto n = t.as<Prot>()) {
        require(expr_is_nf(n->pc), "prot", "protection PC not in normal form");
        Lbl inner_g = pc_type(n->pc);
        Lbl sec = security_pc(n->pc);
        require(label_order(label_join(l, n->l), sec), "prot",
                "PC security bound violated: " + to_string(l) + " v " + to_string(n->l) +
                    " above |" + to_string(n->pc) + "|");
        typecheck_cc(n->body, ctx, sigma, inner_g, sec, n->ty);
        require_eq(stamp_type(n->ty, n->l), expected, "prot");
        return;
    }
    if (auto n = t.as<Cast>()) {
        auto ct = vcoercion_type(n->c);
        require(ct.has_value(), "cast", "ill-typed coercion " + to_string(n->c));
        typecheck_cc(n->e, ctx, sigma, g, l, ct->first);
        require_eq(ct->second, expected, "cast");
        return;
    }
    if (t.is<BlameT>()) return;
    fail("internal", "unhandled term");
}

void check_heap(const Heap& heap, const HeapTyping& sigma) {
    for (Lbl region : {Lbl::Low, Lbl::High}) {
        const auto& cells = heap.region(region);
        const auto& tys = sigma.region(region);
        if (cells.size() != tys.size()) fail("heap", "heap and typing sizes differ");
        for (size_t i = 0; i < cells.size(); ++i)
            typecheck_cc(term_from_value(cells[i].val), {}, sigma, Lbl::Low, Lbl::Low,
                         LType{tys[i], region});
    }
}

} // namespace gifc
