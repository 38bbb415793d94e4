#include "value_coercion.hpp"

#include "cc.hpp"

namespace gifc {

RawCoercion RawCoercion::ref(VCoercion write, VCoercion read) {
    RawCoercion c;
    c.v = std::make_shared<const RefC>(RefC{std::move(write), std::move(read)});
    return c;
}

RawCoercion RawCoercion::fun(CoercionSeq pc_cast, VCoercion dom, VCoercion cod) {
    RawCoercion c;
    c.v = std::make_shared<const FunC>(FunC{std::move(pc_cast), std::move(dom), std::move(cod)});
    return c;
}

bool operator==(const RawCoercion& a, const RawCoercion& b) {
    if (a.v.index() != b.v.index()) return false;
    if (a.is_base()) return std::get<RawCoercion::IdBase>(a.v).iota == std::get<RawCoercion::IdBase>(b.v).iota;
    if (a.is_ref()) return a.ref().write == b.ref().write && a.ref().read == b.ref().read;
    return a.fun().pc_cast == b.fun().pc_cast && a.fun().dom == b.fun().dom &&
           a.fun().cod == b.fun().cod;
}

bool operator==(const VCoercion& a, const VCoercion& b) {
    return a.seq == b.seq && a.raw == b.raw;
}

std::optional<std::pair<LType, LType>> vcoercion_type(const VCoercion& c) {
    auto st = seq_type(c.seq);
    if (!st) return std::nullopt;
    auto [g1, g2] = *st;
    if (c.raw.is_base()) {
        BaseTy i = std::get<RawCoercion::IdBase>(c.raw.v).iota;
        return std::make_pair(LType{RawType(i), g1}, LType{RawType(i), g2});
    }
    if (c.raw.is_ref()) {
        auto wt = vcoercion_type(c.raw.ref().write);
        auto rt = vcoercion_type(c.raw.ref().read);
        if (!wt || !rt) return std::nullopt;
        // write : B => A and read : A => B for (Ref A)_g1 => (Ref B)_g2
        if (!(wt->first == rt->second && wt->second == rt->first)) return std::nullopt;
        return std::make_pair(LType{make_ref(rt->first), g1}, LType{make_ref(rt->second), g2});
    }
    const auto& f = c.raw.fun();
    auto pt = seq_type(f.pc_cast);
    auto dt = vcoercion_type(f.dom);
    auto ct = vcoercion_type(f.cod);
    if (!pt || !dt || !ct) return std::nullopt;
    // pc cast g4 => g3, dom C => A, cod B => D
    LType src{make_fun(dt->second, pt->second, ct->first), g1};
    LType tgt{make_fun(dt->first, pt->first, ct->second), g2};
    return std::make_pair(src, tgt);
}

RawCoercion coerce_id_raw(const RawType& t) {
    if (t.is_base()) return RawCoercion::id_base(t.base());
    if (t.is_ref()) {
        VCoercion inner = coerce_id(t.ref().inner);
        return RawCoercion::ref(inner, inner);
    }
    const auto& f = t.fun();
    return RawCoercion::fun(CoercionSeq::id(f.pc), coerce_id(f.dom), coerce_id(f.cod));
}

VCoercion coerce_id(const LType& a) {
    return VCoercion{coerce_id_raw(a.raw), CoercionSeq::id(a.label)};
}

VCoercion coerce_type(const LType& a, const LType& b, const BlameLabel& p) {
    if (!type_csub(a, b))
        throw ContractError("coerce_type: " + to_string(a) + " is not consistent below " +
                            to_string(b));
    CoercionSeq top = coerce_label(a.label, b.label, p);
    if (a.raw.is_base()) return VCoercion{RawCoercion::id_base(a.raw.base()), top};
    if (a.raw.is_ref()) {
        const LType& ia = a.raw.ref().inner;
        const LType& ib = b.raw.ref().inner;
        return VCoercion{RawCoercion::ref(coerce_type(ib, ia, p), coerce_type(ia, ib, p)), top};
    }
    const auto& fa = a.raw.fun();
    const auto& fb = b.raw.fun();
    return VCoercion{RawCoercion::fun(coerce_label(fb.pc, fa.pc, p),
                                      coerce_type(fb.dom, fa.dom, p),
                                      coerce_type(fa.cod, fb.cod, p)),
                     top};
}

VCoercion compose_v(const VCoercion& c, const VCoercion& d) {
    if (c.raw.v.index() != d.raw.v.index())
        throw ContractError("compose_v: raw coercion shape mismatch");
    CoercionSeq seq = compose(c.seq, d.seq);
    if (c.raw.is_base()) return VCoercion{c.raw, std::move(seq)};
    if (c.raw.is_ref()) {
        const auto& rc = c.raw.ref();
        const auto& rd = d.raw.ref();
        return VCoercion{
            RawCoercion::ref(compose_v(rd.write, rc.write), compose_v(rc.read, rd.read)),
            std::move(seq)};
    }
    const auto& fc = c.raw.fun();
    const auto& fd = d.raw.fun();
    return VCoercion{RawCoercion::fun(compose(fd.pc_cast, fc.pc_cast),
                                      compose_v(fd.dom, fc.dom), compose_v(fc.cod, fd.cod)),
                     std::move(seq)};
}

bool irreducible(const VCoercion& c) {
    if (!seq_is_nf(c.seq)) return false;
    if (!c.raw.is_base()) return true;
    auto t = seq_type(c.seq);
    return is_specific(t->first) && t->first != t->second;
}

std::string to_string(const RawCoercion& c) {
    if (c.is_base())
        return "id(" + std::string(std::get<RawCoercion::IdBase>(c.v).iota == BaseTy::Unit
                                       ? "Unit"
                                       : "Bool") +
               ")";
    if (c.is_ref())
        return "Ref " + to_string(c.ref().write) + " " + to_string(c.ref().read);
    const auto& f = c.fun();
    return "(" + to_string(f.pc_cast) + ", " + to_string(f.dom) + " -> " + to_string(f.cod) + ")";
}

std::string to_string(const VCoercion& c) {
    return "<" + to_string(c.raw) + ", " + to_string(c.seq) + ">";
}

// apply_cast / stamp_val live here but are declared next to Value in cc.hpp.

CastResult apply_cast(const Value& v, const VCoercion& c, bool project_always_blame) {
    Value cur = v;
    VCoercion coercion = c;
    if (cur.wrap) { // cast-comp: fold the existing wrapper into the coercion
        coercion = compose_v(*cur.wrap, coercion);
        cur.wrap.reset();
    }
    CoercionSeq nf = normalize(coercion.seq, nullptr, project_always_blame);
    if (nf.failed()) return BlameSignal{nf.head.blame}; // cast-blame
    if (coercion.raw.is_base() && nf.tail.empty()) return cur; // cast-id
    cur.wrap = VCoercion{coercion.raw, std::move(nf)};
    return cur;
}

Value stamp_val(const Value& v, const LType& a, Lbl l) {
    if (!is_specific(l)) throw ContractError("stamp_val: stamp label must be specific");
    if (l == Lbl::Low) return v;
    if (!v.wrap) {
        if (!is_specific(a.label))
            throw ContractError("stamp_val: raw value at a *-labeled type");
        if (a.label == Lbl::High) return v;
        Value r = v;
        r.wrap = VCoercion{coerce_id_raw(a.raw), CoercionSeq::id(Lbl::Low).then(LCoercion::up())};
        return r;
    }
    Value r = v;
    r.wrap = VCoercion{v.wrap->raw, stamp_seq(v.wrap->seq, l)};
    return r;
}

} // namespace gifc
