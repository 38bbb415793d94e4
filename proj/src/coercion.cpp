#include "coercion.hpp"

namespace gifc {

LCoercion LCoercion::inject(Lbl l) {
    if (!is_specific(l)) throw ContractError("inject: source must be specific");
    return {Kind::Inject, l, Lbl::Star, {}};
}

LCoercion LCoercion::project(Lbl l, BlameLabel p) {
    if (!is_specific(l)) throw ContractError("project: target must be specific");
    return {Kind::Project, l, l, std::move(p)};
}

Lbl LCoercion::src() const {
    switch (kind) {
    case Kind::Id: return a;
    case Kind::Up: return Lbl::Low;
    case Kind::Inject: return a;
    case Kind::Project: return Lbl::Star;
    case Kind::Bot: return a;
    }
    return a;
}

Lbl LCoercion::tgt() const {
    switch (kind) {
    case Kind::Id: return a;
    case Kind::Up: return Lbl::High;
    case Kind::Inject: return Lbl::Star;
    case Kind::Project: return a;
    case Kind::Bot: return b;
    }
    return b;
}

bool operator==(const LCoercion& x, const LCoercion& y) {
    return x.kind == y.kind && x.a == y.a && x.b == y.b && x.blame == y.blame;
}

CoercionSeq CoercionSeq::then(LCoercion c) const {
    CoercionSeq r = *this;
    r.tail.push_back(std::move(c));
    return r;
}

bool operator==(const CoercionSeq& x, const CoercionSeq& y) {
    return x.head == y.head && x.tail == y.tail;
}

std::optional<std::pair<Lbl, Lbl>> seq_type(const CoercionSeq& c) {
    if (c.head.kind != LCoercion::Kind::Id && c.head.kind != LCoercion::Kind::Bot)
        return std::nullopt;
    Lbl cur = c.head.tgt();
    for (const auto& e : c.tail) {
        if (e.src() != cur) return std::nullopt;
        cur = e.tgt();
    }
    return std::make_pair(c.head.src(), cur);
}

bool seq_is_nf(const CoercionSeq& c) {
    if (c.head.kind != LCoercion::Kind::Id) return false;
    Lbl cur = c.head.a;
    int stage = 0; // 1 after projection, 2 after up, 3 after injection
    for (const auto& e : c.tail) {
        switch (e.kind) {
        case LCoercion::Kind::Project:
            if (stage >= 1 || cur != Lbl::Star) return false;
            stage = 1;
            cur = e.a;
            break;
        case LCoercion::Kind::Up:
            if (stage >= 2 || cur != Lbl::Low) return false;
            stage = 2;
            cur = Lbl::High;
            break;
        case LCoercion::Kind::Inject:
            if (stage >= 3 || cur != e.a) return false;
            stage = 3;
            cur = Lbl::Star;
            break;
        default:
            return false; // id or bot inside the tail is always a redex
        }
    }
    return true;
}

std::optional<CoercionSeq> seq_step(const CoercionSeq& c, bool project_always_blame) {
    using K = LCoercion::Kind;
    // Failure head annihilates the following coercion (xi-bot).
    if (c.head.kind == K::Bot) {
        if (c.tail.empty()) return std::nullopt;
        CoercionSeq r;
        r.head = LCoercion::bot(c.head.blame, c.head.a, c.tail.front().tgt());
        r.tail.assign(c.tail.begin() + 1, c.tail.end());
        return r;
    }
    Lbl src = c.head.src();
    for (size_t k = 0; k < c.tail.size(); ++k) {
        const LCoercion& e = c.tail[k];
        if (e.kind == K::Id) { // cbar; id(g) -> cbar
            CoercionSeq r = c;
            r.tail.erase(r.tail.begin() + k);
            return r;
        }
        if (e.kind == K::Bot) { // cbar; bot -> bot (annihilates the prefix)
            CoercionSeq r;
            r.head = LCoercion::bot(e.blame, src, e.b);
            r.tail.assign(c.tail.begin() + k + 1, c.tail.end());
            return r;
        }
        if (e.kind == K::Project && k >= 1 && c.tail[k - 1].kind == K::Inject) {
            Lbl from = c.tail[k - 1].a;
            Lbl to = e.a;
            if (!project_always_blame && from == to) { // ?-id
                CoercionSeq r = c;
                r.tail.erase(r.tail.begin() + k - 1, r.tail.begin() + k + 1);
                return r;
            }
            if (!project_always_blame && from == Lbl::Low && to == Lbl::High) { // ?-up
                CoercionSeq r = c;
                r.tail[k - 1] = LCoercion::up();
                r.tail.erase(r.tail.begin() + k);
                return r;
            }
            // ?-bot: the projection is blamed; endpoints are preserved.
            CoercionSeq r;
            r.head = LCoercion::bot(e.blame, src, to);
            r.tail.assign(c.tail.begin() + k + 1, c.tail.end());
            return r;
        }
    }
    return std::nullopt;
}

CoercionSeq normalize(const CoercionSeq& c, NormalizeStats* stats, bool project_always_blame) {
    if (!seq_well_typed(c))
        throw ContractError("normalize: ill-typed coercion sequence " + to_string(c));
    CoercionSeq cur = c;
    size_t steps = 0;
    while (auto next = seq_step(cur, project_always_blame)) {
        cur = std::move(*next);
        ++steps;
    }
    if (stats) stats->steps = steps;
    return cur;
}

CoercionSeq compose(const CoercionSeq& c1, const CoercionSeq& c2) {
    auto t1 = seq_type(c1);
    auto t2 = seq_type(c2);
    if (!t1 || !t2 || t1->second != t2->first)
        throw ContractError("compose: endpoint mismatch between " + to_string(c1) + " and " +
                            to_string(c2));
    CoercionSeq r;
    if (c2.head.kind == LCoercion::Kind::Bot) {
        r = CoercionSeq::bot(c2.head.blame, t1->first, c2.head.b);
    } else {
        r = c1;
        r.tail.push_back(c2.head); // cbar ; id(g)
    }
    r.tail.insert(r.tail.end(), c2.tail.begin(), c2.tail.end());
    return r;
}

static void require_stampable(const CoercionSeq& c, const char* who) {
    if (!seq_is_nf(c) || !is_specific(c.head.a))
        throw ContractError(std::string(who) + ": needs a normal form with specific source, got " +
                            to_string(c));
}

CoercionSeq stamp_seq(const CoercionSeq& c, Lbl l) {
    require_stampable(c, "stamp_seq");
    if (!is_specific(l)) throw ContractError("stamp_seq: stamp label must be specific");
    if (l == Lbl::Low) return c;
    if (c.head.a == Lbl::High) return c;
    // Source is low: promote, keeping an injection if one was present.
    bool has_up = false;
    bool has_inj = false;
    for (const auto& e : c.tail) {
        has_up |= e.kind == LCoercion::Kind::Up;
        has_inj |= e.kind == LCoercion::Kind::Inject;
    }
    if (has_up) return c;
    CoercionSeq r = CoercionSeq::id(Lbl::Low).then(LCoercion::up());
    if (has_inj) r = r.then(LCoercion::inject(Lbl::High));
    return r;
}

CoercionSeq stamp_bang_seq(const CoercionSeq& c, Lbl l) {
    require_stampable(c, "stamp_bang_seq");
    if (!is_specific(l)) throw ContractError("stamp_bang_seq: stamp label must be specific");
    CoercionSeq r = (l == Lbl::Low) ? c : stamp_seq(c, l);
    Lbl tgt = seq_type(r)->second;
    if (tgt == Lbl::Star) return r;
    return r.then(LCoercion::inject(tgt));
}

Lbl security(const CoercionSeq& c) {
    require_stampable(c, "security");
    for (const auto& e : c.tail)
        if (e.kind == LCoercion::Kind::Up) return Lbl::High;
    return c.head.a;
}

namespace {

struct PrecCtx {
    const CoercionSeq& c;
    const CoercionSeq& d;
    std::vector<int8_t> memo; // -1 unknown, else boolean
    size_t stride;

    PrecCtx(const CoercionSeq& c_, const CoercionSeq& d_)
        : c(c_), d(d_), memo((c_.length() + 1) * (d_.length() + 1), -1),
          stride(d_.length() + 1) {}

    const LCoercion& at(const CoercionSeq& s, size_t i) const {
        return i == 0 ? s.head : s.tail[i - 1];
    }
    Lbl prefix_tgt(const CoercionSeq& s, size_t n) const { return at(s, n - 1).tgt(); }

    static bool prec_single(const LCoercion& x, const LCoercion& y) {
        return label_prec(x.src(), y.src()) && label_prec(x.tgt(), y.tgt());
    }
    static bool prec_cl(const LCoercion& x, Lbl g) {
        return label_prec(x.src(), g) && label_prec(x.tgt(), g);
    }
    static bool prec_cr(Lbl g, const LCoercion& y) {
        return label_prec(g, y.src()) && label_prec(g, y.tgt());
    }

    bool prec(size_t i, size_t j) {
        int8_t& slot = memo[i * stride + j];
        if (slot >= 0) return slot != 0;
        bool ok = false;
        // [=-bot: anything is below a bare failure with related endpoints.
        if (j == 1 && at(d, 0).kind == LCoercion::Kind::Bot) {
            ok = label_prec(at(c, 0).src(), at(d, 0).a) &&
                 label_prec(prefix_tgt(c, i), at(d, 0).b);
        }
        if (!ok && i == 1 && j == 1) {
            ok = at(c, 0).kind == LCoercion::Kind::Id && at(d, 0).kind == LCoercion::Kind::Id &&
                 label_prec(at(c, 0).a, at(d, 0).a);
        }
        if (!ok && i > 1 && j > 1) // [=-cast
            ok = prec_single(at(c, i - 1), at(d, j - 1)) && prec(i - 1, j - 1);
        if (!ok && i > 1) // [=-castl
            ok = prec_cl(at(c, i - 1), prefix_tgt(d, j)) && prec(i - 1, j);
        if (!ok && j > 1) // [=-castr
            ok = prec_cr(prefix_tgt(c, i), at(d, j - 1)) && prec(i, j - 1);
        slot = ok ? 1 : 0;
        return ok;
    }
};

} // namespace

bool seq_precision(const CoercionSeq& c, const CoercionSeq& d) {
    if (!seq_well_typed(c) || !seq_well_typed(d))
        throw ContractError("seq_precision: ill-typed operand");
    PrecCtx ctx(c, d);
    return ctx.prec(c.length(), d.length());
}

bool seq_precision_left(const CoercionSeq& c, Lbl g) {
    if (!seq_well_typed(c)) throw ContractError("seq_precision_left: ill-typed operand");
    if (c.head.kind != LCoercion::Kind::Id || !label_prec(c.head.a, g)) return false;
    for (const auto& e : c.tail)
        if (!PrecCtx::prec_cl(e, g)) return false;
    return true;
}

bool seq_precision_right(Lbl g, const CoercionSeq& d) {
    if (!seq_well_typed(d)) throw ContractError("seq_precision_right: ill-typed operand");
    if (d.head.kind == LCoercion::Kind::Bot)
        return label_prec(g, d.head.a) && label_prec(g, d.head.b) && d.tail.empty();
    if (!label_prec(g, d.head.a)) return false;
    for (const auto& e : d.tail)
        if (!PrecCtx::prec_cr(g, e)) return false;
    return true;
}

CoercionSeq coerce_label(Lbl g1, Lbl g2, const BlameLabel& p) {
    if (!label_csub(g1, g2))
        throw ContractError("coerce_label: " + to_string(g1) + " is not consistent below " +
                            to_string(g2));
    if (g1 == g2) return CoercionSeq::id(g1);
    if (g1 == Lbl::Low && g2 == Lbl::High)
        return CoercionSeq::id(Lbl::Low).then(LCoercion::up());
    if (g2 == Lbl::Star) return CoercionSeq::id(g1).then(LCoercion::inject(g1));
    return CoercionSeq::id(Lbl::Star).then(LCoercion::project(g2, p));
}

std::string to_string(const LCoercion& c) {
    switch (c.kind) {
    case LCoercion::Kind::Id: return "id(" + to_string(c.a) + ")";
    case LCoercion::Kind::Up: return "up";
    case LCoercion::Kind::Inject: return to_string(c.a) + "!";
    case LCoercion::Kind::Project: return to_string(c.a) + "?" + c.blame;
    case LCoercion::Kind::Bot:
        return "bot(" + c.blame + "," + to_string(c.a) + "," + to_string(c.b) + ")";
    }
    return "?";
}

std::string to_string(const CoercionSeq& c) {
    std::string s = to_string(c.head);
    for (const auto& e : c.tail) s += ";" + to_string(e);
    return s;
}

namespace {

std::optional<Lbl> parse_label_text(const std::string& s) {
    if (s == "low") return Lbl::Low;
    if (s == "high") return Lbl::High;
    if (s == "*") return Lbl::Star;
    return std::nullopt;
}

std::optional<LCoercion> parse_one(const std::string& raw) {
    std::string s;
    for (char ch : raw)
        if (!isspace(static_cast<unsigned char>(ch))) s += ch;
    if (s == "up") return LCoercion::up();
    if (s.rfind("id(", 0) == 0 && s.back() == ')') {
        auto l = parse_label_text(s.substr(3, s.size() - 4));
        if (!l) return std::nullopt;
        return LCoercion::id(*l);
    }
    if (s.rfind("bot(", 0) == 0 && s.back() == ')') {
        std::string body = s.substr(4, s.size() - 5);
        auto c1 = body.find(',');
        auto c2 = body.rfind(',');
        if (c1 == std::string::npos || c2 == c1) return std::nullopt;
        auto a = parse_label_text(body.substr(c1 + 1, c2 - c1 - 1));
        auto b = parse_label_text(body.substr(c2 + 1));
        if (!a || !b) return std::nullopt;
        return LCoercion::bot(body.substr(0, c1), *a, *b);
    }
    if (!s.empty() && s.back() == '!') {
        auto l = parse_label_text(s.substr(0, s.size() - 1));
        if (!l || !is_specific(*l)) return std::nullopt;
        return LCoercion::inject(*l);
    }
    auto q = s.find('?');
    if (q != std::string::npos) {
        auto l = parse_label_text(s.substr(0, q));
        if (!l || !is_specific(*l)) return std::nullopt;
        return LCoercion::project(*l, s.substr(q + 1));
    }
    return std::nullopt;
}

} // namespace

std::optional<CoercionSeq> parse_coercion_seq(const std::string& text) {
    std::vector<LCoercion> parts;
    size_t pos = 0;
    while (pos <= text.size()) {
        size_t semi = text.find(';', pos);
        std::string piece =
            semi == std::string::npos ? text.substr(pos) : text.substr(pos, semi - pos);
        auto c = parse_one(piece);
        if (!c) return std::nullopt;
        parts.push_back(*c);
        if (semi == std::string::npos) break;
        pos = semi + 1;
    }
    if (parts.empty()) return std::nullopt;
    if (parts[0].kind != LCoercion::Kind::Id && parts[0].kind != LCoercion::Kind::Bot)
        return std::nullopt;
    CoercionSeq r{parts[0], {parts.begin() + 1, parts.end()}};
    return r;
}

} // namespace gifc
