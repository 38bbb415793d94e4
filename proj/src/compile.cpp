#include "compile.hpp"

namespace gifc {

namespace {

CCPtr cast_to(const CCPtr& t, const LType& from, const LType& to, const BlameLabel& p) {
    if (from == to) return t;
    return mk_cc(Cast{t, coerce_type(from, to, p)});
}

} // namespace

CompileOut compile(const SPtr& m, const Ctx& ctx, Lbl g) {
    const STerm& t = *m;
    if (t.is<SVar>() || t.is<SConst>()) {
        LType ty = typecheck_surface(m, ctx, g);
        if (auto n = t.as<SVar>()) return {mk_cc(Var{n->name}), ty};
        return {mk_cc(Const{t.as<SConst>()->k}), ty};
    }
    if (auto n = t.as<SLam>()) {
        Ctx inner = ctx;
        inner.emplace_back(n->x, n->ann);
        CompileOut body = compile(n->body, inner, n->pc);
        return {mk_cc(Lam{n->x, body.term}),
                LType{make_fun(n->ann, n->pc, body.type), n->l}};
    }
    if (auto n = t.as<SApp>()) {
        // Rejections happen in the surface checker; re-run it for the message.
        typecheck_surface(m, ctx, g);
        CompileOut fun = compile(n->fun, ctx, g);
        CompileOut arg = compile(n->arg, ctx, g);
        const auto& f = fun.type.raw.fun();
        Lbl g1 = fun.type.label;
        LType surface_ty = stamp_type(f.cod, g1);
        if (is_specific(g) && is_specific(g1)) {
            LType target{make_fun(f.dom, label_join(g, g1), f.cod), g1};
            CCPtr lf = cast_to(fun.term, fun.type, target, n->blame);
            CCPtr la = cast_to(arg.term, arg.type, f.dom, n->blame);
            return {mk_cc(App{lf, la, f.dom, f.cod, g1}), surface_ty};
        }
        LType cod_star{f.cod.raw, Lbl::Star};
        LType target{make_fun(f.dom, Lbl::Star, cod_star), Lbl::Star};
        CCPtr lf = cast_to(fun.term, fun.type, target, n->blame);
        CCPtr la = cast_to(arg.term, arg.type, f.dom, n->blame);
        CCPtr app = mk_cc(AppStar{lf, la, f.dom, f.cod.raw});
        return {cast_to(app, cod_star, surface_ty, n->blame), surface_ty};
    }
    if (auto n = t.as<SIf>()) {
        typecheck_surface(m, ctx, g);
        CompileOut cond = compile(n->cond, ctx, g);
        Lbl g1 = cond.type.label;
        Lbl branch_pc = label_cjoin(g, g1);
        CompileOut thn = compile(n->thn, ctx, branch_pc);
        CompileOut els = compile(n->els, ctx, branch_pc);
        LType joined = *type_cjoin(thn.type, els.type);
        LType surface_ty = stamp_type(joined, g1);
        if (is_specific(g) && is_specific(g1)) {
            CCPtr ct = cast_to(thn.term, thn.type, joined, n->blame);
            CCPtr ce = cast_to(els.term, els.type, joined, n->blame);
            return {mk_cc(If{cond.term, joined, g1, ct, ce}), surface_ty};
        }
        LType joined_star{joined.raw, Lbl::Star};
        CCPtr cc = cast_to(cond.term, cond.type, bool_ty(Lbl::Star), n->blame);
        CCPtr ct = cast_to(thn.term, thn.type, joined_star, n->blame);
        CCPtr ce = cast_to(els.term, els.type, joined_star, n->blame);
        CCPtr ite = mk_cc(IfStar{cc, joined.raw, ct, ce});
        return {cast_to(ite, joined_star, surface_ty, n->blame), surface_ty};
    }
    if (auto n = t.as<SLet>()) {
        CompileOut bound = compile(n->bound, ctx, g);
        Ctx inner = ctx;
        inner.emplace_back(n->x, bound.type);
        CompileOut body = compile(n->body, inner, g);
        return {mk_cc(Let{n->x, bound.term, bound.type, body.term}), body.type};
    }
    if (auto n = t.as<SRef>()) {
        typecheck_surface(m, ctx, g);
        CompileOut init = compile(n->init, ctx, g);
        LType cell{init.type.raw, n->l};
        CCPtr ci = cast_to(init.term, init.type, cell, n->blame);
        LType ty{make_ref(cell), Lbl::Low};
        if (is_specific(g)) return {mk_cc(RefT{n->l, ci, cell.raw}), ty};
        return {mk_cc(RefQ{n->blame, n->l, ci, cell.raw}), ty};
    }
    if (auto n = t.as<SDeref>()) {
        typecheck_surface(m, ctx, g);
        CompileOut ref = compile(n->e, ctx, g);
        Lbl g1 = ref.type.label;
        const LType& inner = ref.type.raw.ref().inner;
        LType surface_ty = stamp_type(inner, g1);
        if (is_specific(g1)) return {mk_cc(Deref{ref.term, inner, g1}), surface_ty};
        LType inner_star{inner.raw, Lbl::Star};
        LType target{make_ref(inner_star), Lbl::Star};
        CCPtr ce = cast_to(ref.term, ref.type, target, n->blame);
        return {mk_cc(DerefStar{ce, inner.raw}), surface_ty};
    }
    if (auto n = t.as<SAssign>()) {
        typecheck_surface(m, ctx, g);
        CompileOut lhs = compile(n->lhs, ctx, g);
        CompileOut rhs = compile(n->rhs, ctx, g);
        Lbl g1 = lhs.type.label;
        const LType& cell = lhs.type.raw.ref().inner;
        Lbl ghat = cell.label;
        CCPtr cr = cast_to(rhs.term, rhs.type, cell, n->blame);
        if (is_specific(g) && is_specific(g1) && is_specific(ghat))
            return {mk_cc(Assign{lhs.term, cr, cell.raw, ghat, g1}), unit_ty(Lbl::Low)};
        CCPtr cl = cast_to(lhs.term, lhs.type, LType{make_ref(cell), Lbl::Star}, n->blame);
        return {mk_cc(AssignQ{n->blame, cl, cr, cell.raw, ghat}), unit_ty(Lbl::Low)};
    }
    if (auto n = t.as<SAnn>()) {
        typecheck_surface(m, ctx, g);
        CompileOut inner = compile(n->e, ctx, g);
        return {cast_to(inner.term, inner.type, n->ann, n->blame), n->ann};
    }
    throw ContractError("compile: unhandled node");
}

} // namespace gifc
