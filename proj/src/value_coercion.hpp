#pragma once

// Coercions on values: a raw coercion casting the raw type paired with a
// label sequence casting the top security label.

#include "label_expr.hpp"

namespace gifc {

struct VCoercion;

struct RawCoercion {
    struct IdBase {
        BaseTy iota;
    };
    struct RefC; // write (contravariant) and read (covariant) parts
    struct FunC; // pc cast (contravariant), domain, codomain

    std::variant<IdBase, std::shared_ptr<const RefC>, std::shared_ptr<const FunC>> v;

    static RawCoercion id_base(BaseTy b) { return {IdBase{b}}; }
    static RawCoercion ref(VCoercion write, VCoercion read);
    static RawCoercion fun(CoercionSeq pc_cast, VCoercion dom, VCoercion cod);

    bool is_base() const { return std::holds_alternative<IdBase>(v); }
    bool is_ref() const { return std::holds_alternative<std::shared_ptr<const RefC>>(v); }
    bool is_fun() const { return std::holds_alternative<std::shared_ptr<const FunC>>(v); }
    const RefC& ref() const { return *std::get<std::shared_ptr<const RefC>>(v); }
    const FunC& fun() const { return *std::get<std::shared_ptr<const FunC>>(v); }
};

struct VCoercion {
    RawCoercion raw;
    CoercionSeq seq;
};

struct RawCoercion::RefC {
    VCoercion write;
    VCoercion read;
};

struct RawCoercion::FunC {
    CoercionSeq pc_cast;
    VCoercion dom;
    VCoercion cod;
};

bool operator==(const RawCoercion& a, const RawCoercion& b);
bool operator==(const VCoercion& a, const VCoercion& b);
inline bool operator!=(const VCoercion& a, const VCoercion& b) { return !(a == b); }

// Typing: endpoints of the coercion, or nullopt when components mismatch.
std::optional<std::pair<LType, LType>> vcoercion_type(const VCoercion& c);

// Identity coercion construction.
RawCoercion coerce_id_raw(const RawType& t);
VCoercion coerce_id(const LType& a);

// Type-directed coercion generation; requires a consistent-subtype pair.
VCoercion coerce_type(const LType& a, const LType& b, const BlameLabel& p);

// Composition of coercions on values; endpoint match required.
VCoercion compose_v(const VCoercion& c, const VCoercion& d);

// Irreducibility: the label sequence is in normal form and, on base types,
// is not an identity between equal labels.
bool irreducible(const VCoercion& c);

// Rendering: <id(Bool), id(low);up;high!>
std::string to_string(const VCoercion& c);

} // namespace gifc
