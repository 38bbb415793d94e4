#include "label_expr.hpp"

namespace gifc {

LabelExpr LabelExpr::lit(Lbl l) {
    if (!is_specific(l)) throw ContractError("LabelExpr: literal label must be specific");
    LabelExpr e;
    e.v = Lit{l};
    return e;
}

LabelExpr LabelExpr::blame(BlameLabel p) {
    LabelExpr e;
    e.v = BlameE{std::move(p)};
    return e;
}

LabelExpr LabelExpr::apply(LabelExpr base, CoercionSeq c) {
    LabelExpr e;
    e.v = std::make_shared<const Apply>(Apply{std::move(base), std::move(c)});
    return e;
}

const LabelExpr::Apply& LabelExpr::apply_node() const {
    return *std::get<std::shared_ptr<const Apply>>(v);
}

bool operator==(const LabelExpr& a, const LabelExpr& b) {
    if (a.v.index() != b.v.index()) return false;
    if (a.is_lit()) return a.lit_label() == b.lit_label();
    if (a.is_blame()) return a.blame_label() == b.blame_label();
    return a.apply_node().base == b.apply_node().base && a.apply_node().seq == b.apply_node().seq;
}

bool expr_is_nf(const LabelExpr& e) {
    if (e.is_lit()) return true;
    if (e.is_blame()) return false;
    const auto& ap = e.apply_node();
    if (!ap.base.is_lit()) return false;
    const auto& c = ap.seq;
    // Irreducible: normal form that is not a bare identity.
    return seq_is_nf(c) && !(c.tail.empty()) && c.head.a == ap.base.lit_label();
}

std::optional<Lbl> expr_type(const LabelExpr& e) {
    if (e.is_lit()) return e.lit_label();
    if (e.is_blame()) return std::nullopt;
    auto t = seq_type(e.apply_node().seq);
    if (!t) return std::nullopt;
    return t->second;
}

std::optional<LabelExpr> expr_step(const LabelExpr& e, bool project_always_blame) {
    if (!e.is_apply()) return std::nullopt;
    const auto& ap = e.apply_node();
    if (ap.base.is_blame()) return ap.base; // blame propagates out
    if (ap.base.is_apply()) {
        const auto& inner = ap.base.apply_node();
        if (expr_is_nf(ap.base)) // lcomp: fuse the two coercions
            return LabelExpr::apply(inner.base, compose(inner.seq, ap.seq));
        auto stepped = expr_step(ap.base, project_always_blame);
        if (!stepped) throw ContractError("expr_step: stuck label expression");
        return LabelExpr::apply(*stepped, ap.seq); // congruence
    }
    // Base is a literal.
    if (auto next = seq_step(ap.seq, project_always_blame)) // lcast
        return LabelExpr::apply(ap.base, std::move(*next));
    if (ap.seq.failed()) return LabelExpr::blame(ap.seq.head.blame); // lblame
    if (ap.seq.tail.empty()) return ap.base;                         // beta-id
    return std::nullopt;                                             // NF
}

LabelExpr normalize_expr(const LabelExpr& e, bool project_always_blame) {
    LabelExpr cur = e;
    while (auto next = expr_step(cur, project_always_blame)) cur = std::move(*next);
    return cur;
}

static void require_nf(const LabelExpr& e, const char* who) {
    if (!expr_is_nf(e))
        throw ContractError(std::string(who) + ": label expression not in normal form: " +
                            to_string(e));
}

LabelExpr stamp_pc(const LabelExpr& e, Lbl l) {
    require_nf(e, "stamp_pc");
    if (e.is_lit()) {
        if (l == Lbl::Low) return e;
        if (e.lit_label() == Lbl::High) return e;
        return LabelExpr::apply(e, CoercionSeq::id(Lbl::Low).then(LCoercion::up()));
    }
    const auto& ap = e.apply_node();
    return LabelExpr::apply(ap.base, stamp_seq(ap.seq, l));
}

LabelExpr stamp_bang_pc(const LabelExpr& e, Lbl l) {
    require_nf(e, "stamp_bang_pc");
    if (e.is_lit()) {
        Lbl base = e.lit_label();
        return LabelExpr::apply(e, stamp_bang_seq(CoercionSeq::id(base), l));
    }
    const auto& ap = e.apply_node();
    return LabelExpr::apply(ap.base, stamp_bang_seq(ap.seq, l));
}

Lbl security_pc(const LabelExpr& e) {
    require_nf(e, "security_pc");
    if (e.is_lit()) return e.lit_label();
    return security(e.apply_node().seq);
}

std::string to_string(const LabelExpr& e) {
    if (e.is_lit()) return to_string(e.lit_label());
    if (e.is_blame()) return "blame " + e.blame_label();
    const auto& ap = e.apply_node();
    return to_string(ap.base) + "<" + to_string(ap.seq) + ">";
}

} // namespace gifc
