#pragma once

// The cast calculus: term syntax, values, and the two-region labeled heap.

#include "value_coercion.hpp"

#include <functional>

namespace gifc {

enum class ConstK : uint8_t { Unit, True, False };

inline BaseTy base_of(ConstK k) { return k == ConstK::Unit ? BaseTy::Unit : BaseTy::Bool; }
std::string to_string(ConstK k);

struct CCTerm;
using CCPtr = std::shared_ptr<const CCTerm>;

struct Var {
    std::string name;
};
struct Const {
    ConstK k;
};
struct AddrT {
    Lbl region; // security of the referenced cell; recoverable from the heap typing
    int idx;
};
struct Lam {
    std::string x;
    CCPtr body;
};
struct App {
    CCPtr fun, arg;
    LType dom, cod;
    Lbl l;
};
struct AppStar {
    CCPtr fun, arg;
    LType dom;
    RawType cod_raw;
};
struct If {
    CCPtr cond;
    LType ty;
    Lbl l;
    CCPtr thn, els;
};
struct IfStar {
    CCPtr cond;
    RawType ty_raw;
    CCPtr thn, els;
};
struct Let {
    std::string x;
    CCPtr bound;
    LType ty;
    CCPtr body;
};
struct RefT {
    Lbl l;
    CCPtr init;
    RawType cell; // raw type of the created cell, kept for the heap typing
};
struct RefQ {
    BlameLabel p;
    Lbl l;
    CCPtr init;
    RawType cell;
};
struct Deref {
    CCPtr e;
    LType ty; // type of the referenced cell
    Lbl l;
};
struct DerefStar {
    CCPtr e;
    RawType ty_raw;
};
struct Assign {
    CCPtr lhs, rhs;
    RawType ty_raw;
    Lbl lhat;
    Lbl l;
};
struct AssignQ {
    BlameLabel p;
    CCPtr lhs, rhs;
    RawType ty_raw;
    Lbl ghat;
};
struct Prot {
    LabelExpr pc;
    Lbl l;
    CCPtr body;
    LType ty;
};
struct Cast {
    CCPtr e;
    VCoercion c;
};
struct BlameT {
    BlameLabel p;
};

struct CCTerm {
    std::variant<Var, Const, AddrT, Lam, App, AppStar, If, IfStar, Let, RefT, RefQ, Deref,
                 DerefStar, Assign, AssignQ, Prot, Cast, BlameT>
        v;

    template <typename T> const T* as() const { return std::get_if<T>(&v); }
    template <typename T> bool is() const { return std::holds_alternative<T>(v); }
};

template <typename T> CCPtr mk_cc(T node) {
    return std::make_shared<const CCTerm>(CCTerm{std::move(node)});
}

// Runtime values: raw, or raw wrapped in one irreducible coercion.
struct RawValue {
    struct ConstV {
        ConstK k;
    };
    struct AddrV {
        Lbl region;
        int idx;
    };
    struct LamV {
        std::string x;
        CCPtr body;
    };
    std::variant<ConstV, AddrV, LamV> v;

    bool is_const() const { return std::holds_alternative<ConstV>(v); }
    bool is_addr() const { return std::holds_alternative<AddrV>(v); }
    bool is_lam() const { return std::holds_alternative<LamV>(v); }
};

struct Value {
    RawValue raw;
    std::optional<VCoercion> wrap;
};

struct BlameSignal {
    BlameLabel p;
};

using CastResult = std::variant<Value, BlameSignal>;

// Semantics of coercions on values (driver over cast / cast-blame / cast-id /
// cast-comp) and stamping of values.
CastResult apply_cast(const Value& v, const VCoercion& c, bool project_always_blame = false);
Value stamp_val(const Value& v, const LType& a, Lbl l);

bool value_eq(const Value& a, const Value& b);

// Term <-> value conversions. A term is a value when it is a raw value or a
// raw value under a single irreducible cast.
std::optional<Value> term_as_value(const CCPtr& t);
CCPtr term_from_value(const Value& v);

// Capture-free substitution of a closed value term.
CCPtr subst(const CCPtr& term, const std::string& name, const CCPtr& replacement);

// Heap: cells never deleted, indices per label are monotone.
struct HeapCell {
    Value val;
    RawType ty;
};

struct Heap {
    std::vector<HeapCell> low, high;

    std::vector<HeapCell>& region(Lbl l) { return l == Lbl::Low ? low : high; }
    const std::vector<HeapCell>& region(Lbl l) const { return l == Lbl::Low ? low : high; }
    size_t size() const { return low.size() + high.size(); }
};

// Heap typing: raw type per cell, derived from the heap.
struct HeapTyping {
    std::vector<RawType> low, high;

    const std::vector<RawType>& region(Lbl l) const { return l == Lbl::Low ? low : high; }
    static HeapTyping of(const Heap& h);
    bool extends(const HeapTyping& prev) const;
};

// Parenthesized rendering mirroring the term constructors (stable for goldens).
std::string to_string(const CCTerm& t);
std::string to_string(const CCPtr& t);

// Final-value rendering: true@low, addr(high,0)@low, <closure>@high, wrapped
// values with their coercion.
std::string render_value(const Value& v, const LType& at);

} // namespace gifc
