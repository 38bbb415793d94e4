#include "lattice.hpp"

namespace gifc {

std::string to_string(Lbl l) {
    switch (l) {
    case Lbl::Low: return "low";
    case Lbl::High: return "high";
    case Lbl::Star: return "*";
    }
    return "?";
}

static void require_specific(Lbl l, const char* who) {
    if (!is_specific(l))
        throw ContractError(std::string(who) + ": * is not a runtime security label");
}

bool label_order(Lbl a, Lbl b) {
    require_specific(a, "label_order");
    require_specific(b, "label_order");
    return a == Lbl::Low || b == Lbl::High;
}

Lbl label_join(Lbl a, Lbl b) {
    require_specific(a, "label_join");
    require_specific(b, "label_join");
    return (a == Lbl::High || b == Lbl::High) ? Lbl::High : Lbl::Low;
}

Lbl label_meet(Lbl a, Lbl b) {
    require_specific(a, "label_meet");
    require_specific(b, "label_meet");
    return (a == Lbl::Low || b == Lbl::Low) ? Lbl::Low : Lbl::High;
}

bool label_prec(Lbl a, Lbl b) { return a == Lbl::Star || a == b; }

std::optional<Lbl> label_prec_join(Lbl a, Lbl b) {
    if (a == Lbl::Star) return b;
    if (b == Lbl::Star) return a;
    if (a == b) return a;
    return std::nullopt;
}

Lbl label_cjoin(Lbl a, Lbl b) {
    if (a == Lbl::Star || b == Lbl::Star) return Lbl::Star;
    return label_join(a, b);
}

Lbl label_cmeet(Lbl a, Lbl b) {
    if (a == Lbl::Star || b == Lbl::Star) return Lbl::Star;
    return label_meet(a, b);
}

bool label_csub(Lbl a, Lbl b) {
    if (a == Lbl::Star || b == Lbl::Star) return true;
    return label_order(a, b);
}

RawType make_ref(LType inner) {
    RawType t;
    t.v = std::make_shared<const RefData>(RefData{std::move(inner)});
    return t;
}

RawType make_fun(LType dom, Lbl pc, LType cod) {
    RawType t;
    t.v = std::make_shared<const FunData>(FunData{std::move(dom), pc, std::move(cod)});
    return t;
}

bool operator==(const RawType& a, const RawType& b) {
    if (a.v.index() != b.v.index()) return false;
    if (a.is_base()) return a.base() == b.base();
    if (a.is_ref()) return a.ref().inner == b.ref().inner;
    const auto& fa = a.fun();
    const auto& fb = b.fun();
    return fa.pc == fb.pc && fa.dom == fb.dom && fa.cod == fb.cod;
}

bool operator==(const LType& a, const LType& b) {
    return a.label == b.label && a.raw == b.raw;
}

bool type_prec(const RawType& a, const RawType& b) {
    if (a.v.index() != b.v.index()) return false;
    if (a.is_base()) return a.base() == b.base();
    if (a.is_ref()) return type_prec(a.ref().inner, b.ref().inner);
    const auto& fa = a.fun();
    const auto& fb = b.fun();
    return label_prec(fa.pc, fb.pc) && type_prec(fa.dom, fb.dom) && type_prec(fa.cod, fb.cod);
}

bool type_prec(const LType& a, const LType& b) {
    return label_prec(a.label, b.label) && type_prec(a.raw, b.raw);
}

bool type_csub(const RawType& a, const RawType& b) {
    if (a.v.index() != b.v.index()) return false;
    if (a.is_base()) return a.base() == b.base();
    if (a.is_ref()) {
        // Ref is invariant up to consistent subtyping in both directions.
        return type_csub(a.ref().inner, b.ref().inner) &&
               type_csub(b.ref().inner, a.ref().inner);
    }
    const auto& fa = a.fun();
    const auto& fb = b.fun();
    return label_csub(fb.pc, fa.pc) && type_csub(fb.dom, fa.dom) && type_csub(fa.cod, fb.cod);
}

bool type_csub(const LType& a, const LType& b) {
    return label_csub(a.label, b.label) && type_csub(a.raw, b.raw);
}

std::optional<RawType> type_prec_join(const RawType& a, const RawType& b) {
    if (a.v.index() != b.v.index()) return std::nullopt;
    if (a.is_base()) return a.base() == b.base() ? std::optional<RawType>(a) : std::nullopt;
    if (a.is_ref()) {
        auto inner = type_prec_join(a.ref().inner, b.ref().inner);
        if (!inner) return std::nullopt;
        return make_ref(*inner);
    }
    const auto& fa = a.fun();
    const auto& fb = b.fun();
    auto pc = label_prec_join(fa.pc, fb.pc);
    auto dom = type_prec_join(fa.dom, fb.dom);
    auto cod = type_prec_join(fa.cod, fb.cod);
    if (!pc || !dom || !cod) return std::nullopt;
    return make_fun(*dom, *pc, *cod);
}

std::optional<LType> type_prec_join(const LType& a, const LType& b) {
    auto l = label_prec_join(a.label, b.label);
    auto r = type_prec_join(a.raw, b.raw);
    if (!l || !r) return std::nullopt;
    return LType{*r, *l};
}

std::optional<RawType> type_cjoin(const RawType& a, const RawType& b) {
    if (a.v.index() != b.v.index()) return std::nullopt;
    if (a.is_base()) return a.base() == b.base() ? std::optional<RawType>(a) : std::nullopt;
    if (a.is_ref()) {
        auto inner = type_prec_join(a.ref().inner, b.ref().inner);
        if (!inner) return std::nullopt;
        return make_ref(*inner);
    }
    const auto& fa = a.fun();
    const auto& fb = b.fun();
    auto dom = type_cmeet(fa.dom, fb.dom);
    auto cod = type_cjoin(fa.cod, fb.cod);
    if (!dom || !cod) return std::nullopt;
    return make_fun(*dom, label_cmeet(fa.pc, fb.pc), *cod);
}

std::optional<LType> type_cjoin(const LType& a, const LType& b) {
    auto r = type_cjoin(a.raw, b.raw);
    if (!r) return std::nullopt;
    return LType{*r, label_cjoin(a.label, b.label)};
}

std::optional<RawType> type_cmeet(const RawType& a, const RawType& b) {
    if (a.v.index() != b.v.index()) return std::nullopt;
    if (a.is_base()) return a.base() == b.base() ? std::optional<RawType>(a) : std::nullopt;
    if (a.is_ref()) {
        auto inner = type_prec_join(a.ref().inner, b.ref().inner);
        if (!inner) return std::nullopt;
        return make_ref(*inner);
    }
    const auto& fa = a.fun();
    const auto& fb = b.fun();
    auto dom = type_cjoin(fa.dom, fb.dom);
    auto cod = type_cmeet(fa.cod, fb.cod);
    if (!dom || !cod) return std::nullopt;
    return make_fun(*dom, label_cjoin(fa.pc, fb.pc), *cod);
}

std::optional<LType> type_cmeet(const LType& a, const LType& b) {
    auto r = type_cmeet(a.raw, b.raw);
    if (!r) return std::nullopt;
    return LType{*r, label_cmeet(a.label, b.label)};
}

LType stamp_type(const LType& a, Lbl l) {
    return LType{a.raw, label_cjoin(a.label, l)};
}

std::string to_string(const RawType& t) {
    if (t.is_base()) return t.base() == BaseTy::Unit ? "Unit" : "Bool";
    if (t.is_ref()) return "Ref " + to_string(t.ref().inner);
    const auto& f = t.fun();
    return "(" + to_string(f.dom) + " -[" + to_string(f.pc) + "]-> " + to_string(f.cod) + ")";
}

std::string to_string(const LType& t) {
    if (t.raw.is_ref()) return to_string(t.raw) + " @ " + to_string(t.label);
    return to_string(t.raw) + "@" + to_string(t.label);
}

} // namespace gifc
