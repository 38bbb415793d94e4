#pragma once

// The coercion calculus on security labels: the runtime IFC monitor core.
// A coercion sequence starts with id(g) or a failure bot(p,g1,g2) and is
// followed by single coercions. Normalization performs the IFC check.

#include "lattice.hpp"

#include <utility>

namespace gifc {

using BlameLabel = std::string;

struct LCoercion {
    enum class Kind : uint8_t { Id, Up, Inject, Project, Bot };
    Kind kind = Kind::Id;
    Lbl a = Lbl::Low; // Id: the label; Inject: source; Project: target; Bot: source
    Lbl b = Lbl::Low; // Bot: target
    BlameLabel blame; // Project, Bot

    static LCoercion id(Lbl g) { return {Kind::Id, g, g, {}}; }
    static LCoercion up() { return {Kind::Up, Lbl::Low, Lbl::High, {}}; }
    static LCoercion inject(Lbl l);
    static LCoercion project(Lbl l, BlameLabel p);
    static LCoercion bot(BlameLabel p, Lbl src, Lbl tgt) { return {Kind::Bot, src, tgt, std::move(p)}; }

    // Source and target labels.
    Lbl src() const;
    Lbl tgt() const;
};

bool operator==(const LCoercion& x, const LCoercion& y);
inline bool operator!=(const LCoercion& x, const LCoercion& y) { return !(x == y); }

struct CoercionSeq {
    LCoercion head; // Id or Bot only
    std::vector<LCoercion> tail;

    static CoercionSeq id(Lbl g) { return {LCoercion::id(g), {}}; }
    static CoercionSeq bot(BlameLabel p, Lbl src, Lbl tgt) {
        return {LCoercion::bot(std::move(p), src, tgt), {}};
    }
    CoercionSeq then(LCoercion c) const;

    bool failed() const { return head.kind == LCoercion::Kind::Bot && tail.empty(); }
    size_t length() const { return 1 + tail.size(); }
};

bool operator==(const CoercionSeq& x, const CoercionSeq& y);
inline bool operator!=(const CoercionSeq& x, const CoercionSeq& y) { return !(x == y); }

// Endpoints, or nullopt when adjacent endpoints mismatch (ill-typed).
std::optional<std::pair<Lbl, Lbl>> seq_type(const CoercionSeq& c);
inline bool seq_well_typed(const CoercionSeq& c) { return seq_type(c).has_value(); }

// Syntactic normal-form predicate (success shapes only; a bare bot is the
// failure outcome, reported by CoercionSeq::failed).
bool seq_is_nf(const CoercionSeq& c);

// One deterministic reduction step, leftmost redex; nullopt when no redex.
// When project_always_blame is set, every injection/projection collision
// fails (mutation-testing knob; never used by the monitor itself).
std::optional<CoercionSeq> seq_step(const CoercionSeq& c, bool project_always_blame = false);

struct NormalizeStats {
    size_t steps = 0;
};

// Reduce to normal form or a bare bot. Input must be well-typed.
CoercionSeq normalize(const CoercionSeq& c, NormalizeStats* stats = nullptr,
                      bool project_always_blame = false);

// Syntactic composition per the compose table; the result is not normalized.
// Target of c1 must equal source of c2.
CoercionSeq compose(const CoercionSeq& c1, const CoercionSeq& c2);

// Stamping; both require a normal form with a specific source label.
CoercionSeq stamp_seq(const CoercionSeq& c, Lbl l);
CoercionSeq stamp_bang_seq(const CoercionSeq& c, Lbl l);

// Security level of a normal form with specific source.
Lbl security(const CoercionSeq& c);

// Precision judgments of the coercion calculus: |- cbar [= dbar, plus the
// one-sided forms against a label.
bool seq_precision(const CoercionSeq& c, const CoercionSeq& d);
bool seq_precision_left(const CoercionSeq& c, Lbl g);  // |- cbar [=_l g
bool seq_precision_right(Lbl g, const CoercionSeq& d); // |- g [=_r dbar

// coerce: builds the canonical coercion between consistent labels.
CoercionSeq coerce_label(Lbl g1, Lbl g2, const BlameLabel& p);

// Rendering: id(low);up;high!;low?p3  /  bot(p,low,low)
std::string to_string(const LCoercion& c);
std::string to_string(const CoercionSeq& c);

// Debug parser for the rendering above; used by tests only.
std::optional<CoercionSeq> parse_coercion_seq(const std::string& text);

} // namespace gifc
