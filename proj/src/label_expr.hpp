#pragma once

// Label expressions: the runtime representation of the program counter.
// Normal forms are a specific label, optionally wrapped in one irreducible
// coercion sequence. NSU checks are expressed as casts on these.

#include "coercion.hpp"

namespace gifc {

struct LabelExpr {
    struct Lit {
        Lbl l;
    };
    struct BlameE {
        BlameLabel p;
    };
    struct Apply; // base expression with a coercion sequence applied

    std::variant<Lit, BlameE, std::shared_ptr<const Apply>> v;

    static LabelExpr lit(Lbl l);
    static LabelExpr blame(BlameLabel p);
    static LabelExpr apply(LabelExpr base, CoercionSeq c);

    bool is_lit() const { return std::holds_alternative<Lit>(v); }
    bool is_blame() const { return std::holds_alternative<BlameE>(v); }
    bool is_apply() const { return std::holds_alternative<std::shared_ptr<const Apply>>(v); }
    Lbl lit_label() const { return std::get<Lit>(v).l; }
    const BlameLabel& blame_label() const { return std::get<BlameE>(v).p; }
    const Apply& apply_node() const;
};

struct LabelExpr::Apply {
    LabelExpr base;
    CoercionSeq seq;
};

bool operator==(const LabelExpr& a, const LabelExpr& b);
inline bool operator!=(const LabelExpr& a, const LabelExpr& b) { return !(a == b); }

// NF: a specific label, or one wrapped in an irreducible (non-identity NF)
// sequence with matching source.
bool expr_is_nf(const LabelExpr& e);

// The label the expression is typed at (target endpoint).
std::optional<Lbl> expr_type(const LabelExpr& e);

// One reduction step (lcomp / lcast / beta-id / lblame, with congruence);
// nullopt when the expression is final (NF or blame).
std::optional<LabelExpr> expr_step(const LabelExpr& e, bool project_always_blame = false);

// Reduce to NF or blame.
LabelExpr normalize_expr(const LabelExpr& e, bool project_always_blame = false);

// Stamping and security of NF expressions.
LabelExpr stamp_pc(const LabelExpr& e, Lbl l);
LabelExpr stamp_bang_pc(const LabelExpr& e, Lbl l);
Lbl security_pc(const LabelExpr& e);

// Trace rendering: low<id(low);up>
std::string to_string(const LabelExpr& e);

} // namespace gifc
