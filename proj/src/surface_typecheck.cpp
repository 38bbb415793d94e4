#include "surface.hpp"

namespace gifc {

Ctx base_ctx() { return {{"input", bool_ty(Lbl::High)}}; }

static std::optional<LType> lookup(const Ctx& ctx, const std::string& name) {
    for (auto it = ctx.rbegin(); it != ctx.rend(); ++it)
        if (it->first == name) return it->second;
    return std::nullopt;
}

LType typecheck_surface(const SPtr& m, const Ctx& ctx, Lbl g) {
    const STerm& t = *m;
    if (auto n = t.as<SVar>()) {
        auto ty = lookup(ctx, n->name);
        if (!ty) throw TypeError(t.span, "var", "unbound variable '" + n->name + "'");
        return *ty;
    }
    if (auto n = t.as<SConst>()) {
        if (!is_specific(n->l)) throw TypeError(t.span, "const", "constant labeled with *");
        return LType{RawType(base_of(n->k)), n->l};
    }
    if (auto n = t.as<SLam>()) {
        Ctx inner = ctx;
        inner.emplace_back(n->x, n->ann);
        LType body = typecheck_surface(n->body, inner, n->pc);
        return LType{make_fun(n->ann, n->pc, body), n->l};
    }
    if (auto n = t.as<SApp>()) {
        LType fun = typecheck_surface(n->fun, ctx, g);
        LType arg = typecheck_surface(n->arg, ctx, g);
        if (!fun.raw.is_fun())
            throw TypeError(t.span, "app", "applied a non-function of type " + to_string(fun));
        const auto& f = fun.raw.fun();
        if (!type_csub(arg, f.dom))
            throw TypeError(t.span, "app", "argument type " + to_string(arg) +
                                               " does not flow to " + to_string(f.dom));
        if (!label_csub(g, f.pc))
            throw TypeError(t.span, "app", "pc label " + to_string(g) +
                                               " does not flow to latent pc " + to_string(f.pc));
        if (!label_csub(fun.label, f.pc))
            throw TypeError(t.span, "app", "function label " + to_string(fun.label) +
                                               " does not flow to latent pc " + to_string(f.pc));
        return stamp_type(f.cod, fun.label);
    }
    if (auto n = t.as<SIf>()) {
        LType cond = typecheck_surface(n->cond, ctx, g);
        if (!cond.raw.is_base() || cond.raw.base() != BaseTy::Bool)
            throw TypeError(t.span, "if", "condition has type " + to_string(cond));
        Lbl branch_pc = label_cjoin(g, cond.label);
        LType a = typecheck_surface(n->thn, ctx, branch_pc);
        LType b = typecheck_surface(n->els, ctx, branch_pc);
        auto joined = type_cjoin(a, b);
        if (!joined)
            throw TypeError(t.span, "if", "branch types " + to_string(a) + " and " + to_string(b) +
                                              " have no consistent join");
        return stamp_type(*joined, cond.label);
    }
    if (auto n = t.as<SLet>()) {
        LType bound = typecheck_surface(n->bound, ctx, g);
        Ctx inner = ctx;
        inner.emplace_back(n->x, bound);
        return typecheck_surface(n->body, inner, g);
    }
    if (auto n = t.as<SRef>()) {
        if (!is_specific(n->l)) throw TypeError(t.span, "ref", "reference labeled with *");
        LType init = typecheck_surface(n->init, ctx, g);
        LType cell{init.raw, n->l};
        if (!type_csub(init, cell))
            throw TypeError(t.span, "ref", "initializer type " + to_string(init) +
                                               " does not flow to cell type " + to_string(cell));
        if (!label_csub(g, n->l))
            throw TypeError(t.span, "ref", "pc label " + to_string(g) +
                                               " does not flow to cell label " + to_string(n->l));
        return LType{make_ref(cell), Lbl::Low};
    }
    if (auto n = t.as<SDeref>()) {
        LType ref = typecheck_surface(n->e, ctx, g);
        if (!ref.raw.is_ref())
            throw TypeError(t.span, "deref", "dereferenced a non-reference of type " +
                                                 to_string(ref));
        return stamp_type(ref.raw.ref().inner, ref.label);
    }
    if (auto n = t.as<SAssign>()) {
        LType ref = typecheck_surface(n->lhs, ctx, g);
        LType rhs = typecheck_surface(n->rhs, ctx, g);
        if (!ref.raw.is_ref())
            throw TypeError(t.span, "assign", "assigned to a non-reference of type " +
                                                  to_string(ref));
        const LType& cell = ref.raw.ref().inner;
        if (!type_csub(rhs, cell))
            throw TypeError(t.span, "assign", "stored value type " + to_string(rhs) +
                                                  " does not flow to " + to_string(cell));
        if (!label_csub(g, cell.label))
            throw TypeError(t.span, "assign",
                            "pc label " + to_string(g) + " does not flow to cell label " +
                                to_string(cell.label) + " (heap policy)");
        if (!label_csub(ref.label, cell.label))
            throw TypeError(t.span, "assign",
                            "reference label " + to_string(ref.label) +
                                " does not flow to cell label " + to_string(cell.label) +
                                " (heap policy)");
        return unit_ty(Lbl::Low);
    }
    if (auto n = t.as<SAnn>()) {
        LType inner = typecheck_surface(n->e, ctx, g);
        if (!type_csub(inner, n->ann))
            throw TypeError(t.span, "ann", "type " + to_string(inner) + " does not flow to " +
                                               to_string(n->ann));
        return n->ann;
    }
    throw ContractError("typecheck_surface: unhandled node");
}

bool surface_precision(const SPtr& m, const SPtr& m2) {
    const STerm& a = *m;
    const STerm& b = *m2;
    if (a.v.index() != b.v.index()) return false;
    if (auto n = a.as<SVar>()) return n->name == b.as<SVar>()->name;
    if (auto n = a.as<SConst>()) {
        auto o = b.as<SConst>();
        return n->k == o->k && n->l == o->l;
    }
    if (auto n = a.as<SLam>()) {
        auto o = b.as<SLam>();
        return label_prec(n->pc, o->pc) && n->x == o->x && type_prec(n->ann, o->ann) &&
               n->l == o->l && surface_precision(n->body, o->body);
    }
    if (auto n = a.as<SApp>()) {
        auto o = b.as<SApp>();
        return surface_precision(n->fun, o->fun) && surface_precision(n->arg, o->arg);
    }
    if (auto n = a.as<SIf>()) {
        auto o = b.as<SIf>();
        return surface_precision(n->cond, o->cond) && surface_precision(n->thn, o->thn) &&
               surface_precision(n->els, o->els);
    }
    if (auto n = a.as<SLet>()) {
        auto o = b.as<SLet>();
        return n->x == o->x && surface_precision(n->bound, o->bound) &&
               surface_precision(n->body, o->body);
    }
    if (auto n = a.as<SRef>()) {
        auto o = b.as<SRef>();
        return n->l == o->l && surface_precision(n->init, o->init);
    }
    if (auto n = a.as<SDeref>()) return surface_precision(n->e, b.as<SDeref>()->e);
    if (auto n = a.as<SAssign>()) {
        auto o = b.as<SAssign>();
        return surface_precision(n->lhs, o->lhs) && surface_precision(n->rhs, o->rhs);
    }
    if (auto n = a.as<SAnn>()) {
        auto o = b.as<SAnn>();
        return type_prec(n->ann, o->ann) && surface_precision(n->e, o->e);
    }
    return false;
}

} // namespace gifc
