#pragma once

// Shared enumeration and oracle helpers for the coercion suites. The oracle
// reproduces the reduction relation directly from its rules (any redex, with
// premises) and is kept independent of the production step function.

#include "coercion.hpp"

#include <vector>

namespace gifc::testing {

inline std::vector<Lbl> all_labels() { return {Lbl::Low, Lbl::High, Lbl::Star}; }
inline std::vector<Lbl> specific_labels() { return {Lbl::Low, Lbl::High}; }

// All well-typed coercion sequences with length (head + tail elements) <= max.
// Blame labels are position-derived so that a wrong blamed cast is detectable.
inline std::vector<CoercionSeq> enumerate_seqs(size_t max_len) {
    std::vector<CoercionSeq> out;
    std::vector<CoercionSeq> frontier;
    for (Lbl g : all_labels()) frontier.push_back(CoercionSeq::id(g));
    for (Lbl g1 : all_labels())
        for (Lbl g2 : all_labels()) frontier.push_back(CoercionSeq::bot("pb", g1, g2));
    out = frontier;
    for (size_t len = 2; len <= max_len; ++len) {
        std::vector<CoercionSeq> next;
        for (const auto& seq : frontier) {
            Lbl g = seq_type(seq)->second;
            std::string pos = "p" + std::to_string(len);
            std::vector<LCoercion> exts;
            exts.push_back(LCoercion::id(g));
            if (g == Lbl::Low) exts.push_back(LCoercion::up());
            if (is_specific(g)) exts.push_back(LCoercion::inject(g));
            if (g == Lbl::Star)
                for (Lbl l : specific_labels()) exts.push_back(LCoercion::project(l, pos));
            for (Lbl t : all_labels()) exts.push_back(LCoercion::bot(pos, g, t));
            for (const auto& e : exts) next.push_back(seq.then(e));
        }
        out.insert(out.end(), next.begin(), next.end());
        frontier = std::move(next);
    }
    return out;
}

// All redexes of the reduction relation, rule by rule. Each top-level rule
// fires at the end of a prefix; the congruence rule is exactly "reduce some
// proper prefix", so enumerating prefix ends covers the whole relation.
inline std::vector<CoercionSeq> oracle_redexes(const CoercionSeq& c) {
    using K = LCoercion::Kind;
    std::vector<CoercionSeq> out;
    auto prefix = [&](size_t n) { // first n elements as a sequence
        CoercionSeq p{c.head, {}};
        for (size_t i = 0; i + 1 < n; ++i) p.tail.push_back(c.tail[i]);
        return p;
    };
    auto with_suffix = [&](CoercionSeq reduced, size_t n) {
        for (size_t i = n; i < c.tail.size(); ++i) reduced.tail.push_back(c.tail[i]);
        return reduced;
    };
    // xi-bot: a failure head annihilates the next coercion.
    if (c.head.kind == K::Bot && !c.tail.empty()) {
        CoercionSeq r = CoercionSeq::bot(c.head.blame, c.head.a, c.tail[0].tgt());
        out.push_back(with_suffix(r, 1));
    }
    for (size_t n = 2; n <= c.length(); ++n) {
        size_t k = n - 2; // index of the prefix's last element in the tail
        const LCoercion& last = c.tail[k];
        if (last.kind == K::Id && seq_is_nf(prefix(n - 1))) { // id
            CoercionSeq r = prefix(n - 1);
            out.push_back(with_suffix(r, k + 1));
        }
        if (last.kind == K::Bot && seq_is_nf(prefix(n - 1))) { // bot
            CoercionSeq r = CoercionSeq::bot(last.blame, c.head.src(), last.b);
            out.push_back(with_suffix(r, k + 1));
        }
        if (last.kind == K::Project && n >= 3 && c.tail[k - 1].kind == K::Inject &&
            seq_is_nf(prefix(n - 2))) {
            Lbl from = c.tail[k - 1].a;
            Lbl to = last.a;
            if (from == to) { // ?-id
                out.push_back(with_suffix(prefix(n - 2), k + 1));
            } else if (from == Lbl::Low && to == Lbl::High) { // ?-up
                CoercionSeq r = prefix(n - 2).then(LCoercion::up());
                out.push_back(with_suffix(r, k + 1));
            } else { // ?-bot
                CoercionSeq r = CoercionSeq::bot(last.blame, c.head.src(), to);
                out.push_back(with_suffix(r, k + 1));
            }
        }
    }
    return out;
}

// Convenience: parse a rendered sequence in tests, aborting on bad input.
inline CoercionSeq cs(const std::string& text) {
    auto r = parse_coercion_seq(text);
    if (!r) throw ContractError("bad test coercion literal: " + text);
    return *r;
}

// Exhaustive metatheory suites, shared by the unit tests (small lengths) and
// the acceptance gate (length 4). Each returns how many instances were
// checked and the first counterexample, if any.
struct SuiteResult {
    size_t checked = 0;
    size_t violations = 0;
    std::string first;

    void fail(const std::string& what) {
        if (violations++ == 0) first = what;
    }
    bool ok() const { return violations == 0 && checked > 0; }
};

// Strong normalization, step bound, endpoint preservation, and single-step
// determinism against the any-redex oracle.
inline SuiteResult suite_normalization(size_t max_len) {
    SuiteResult r;
    for (const auto& seq : enumerate_seqs(max_len)) {
        ++r.checked;
        NormalizeStats stats;
        CoercionSeq nf = normalize(seq, &stats);
        if (!(seq_is_nf(nf) || nf.failed())) r.fail("no normal outcome: " + to_string(seq));
        if (stats.steps > seq.length() * seq.length())
            r.fail("step bound exceeded: " + to_string(seq));
        if (!(*seq_type(nf) == *seq_type(seq)))
            r.fail("endpoints not preserved: " + to_string(seq));
        CoercionSeq cur = seq;
        for (;;) {
            auto redexes = oracle_redexes(cur);
            auto step = seq_step(cur);
            if (redexes.size() > 1) r.fail("nondeterministic at " + to_string(cur));
            if (redexes.empty() != !step.has_value())
                r.fail("oracle and step disagree at " + to_string(cur));
            if (!step) break;
            if (!redexes.empty() && !(redexes[0] == *step))
                r.fail("different redex chosen at " + to_string(cur));
            cur = *step;
        }
        if (!(cur == nf)) r.fail("stepwise result differs: " + to_string(seq));
    }
    return r;
}

// Lemma: composition models explicit flow.
inline SuiteResult suite_compose_flow(size_t max_len) {
    SuiteResult r;
    std::vector<CoercionSeq> nfs;
    for (const auto& seq : enumerate_seqs(max_len))
        if (seq_is_nf(seq)) nfs.push_back(seq);
    for (const auto& c : nfs) {
        if (!is_specific(seq_type(c)->first)) continue;
        for (const auto& d : nfs) {
            if (seq_type(c)->second != seq_type(d)->first) continue;
            CoercionSeq composed = normalize(compose(c, d));
            if (!seq_is_nf(composed)) continue;
            ++r.checked;
            if (!label_order(security(c), security(composed)))
                r.fail("security dropped composing " + to_string(c) + " with " + to_string(d));
        }
    }
    return r;
}

// Lemma: stamping models implicit flow.
inline SuiteResult suite_stamp_flow(size_t max_len) {
    SuiteResult r;
    for (const auto& seq : enumerate_seqs(max_len)) {
        if (!seq_is_nf(seq) || !is_specific(seq_type(seq)->first)) continue;
        for (Lbl l : specific_labels()) {
            ++r.checked;
            if (security(stamp_seq(seq, l)) != label_join(security(seq), l))
                r.fail("stamp security off for " + to_string(seq));
            if (security(stamp_bang_seq(seq, l)) != label_join(security(seq), l))
                r.fail("stamp! security off for " + to_string(seq));
        }
    }
    return r;
}

// Lemma: security is monotonic w.r.t. precision, over all related NF pairs.
inline SuiteResult suite_security_monotone(size_t max_len) {
    SuiteResult r;
    std::vector<CoercionSeq> nfs;
    for (const auto& seq : enumerate_seqs(max_len))
        if (seq_is_nf(seq) && is_specific(seq_type(seq)->first)) nfs.push_back(seq);
    for (const auto& c : nfs)
        for (const auto& d : nfs) {
            if (!seq_precision(c, d)) continue;
            ++r.checked;
            if (!label_order(security(c), security(d)))
                r.fail("security not monotone: " + to_string(c) + " [= " + to_string(d));
        }
    return r;
}

// Lemmas: catch-up to a more precise normal form, and single-step simulation.
inline SuiteResult suite_simulation(size_t max_len) {
    SuiteResult r;
    auto seqs = enumerate_seqs(max_len);
    auto reaches_related = [](const CoercionSeq& c, const CoercionSeq& d) {
        CoercionSeq cur = c;
        for (;;) { // the reduction path of c is finite and deterministic
            if (seq_precision(cur, d)) return true;
            auto next = seq_step(cur);
            if (!next) return false;
            cur = *next;
        }
    };
    for (const auto& d : seqs) {
        bool d_nf = seq_is_nf(d);
        auto d2 = seq_step(d);
        if (!d_nf && !d2) continue; // failed form: nothing to catch up to
        for (const auto& c : seqs) {
            if (!seq_precision(c, d)) continue;
            if (d_nf) {
                ++r.checked;
                if (!reaches_related(c, d))
                    r.fail("no catch-up: " + to_string(c) + " [= " + to_string(d));
            }
            if (d2) {
                ++r.checked;
                if (!reaches_related(c, *d2))
                    r.fail("no simulation: " + to_string(c) + " [= " + to_string(d) + " -> " +
                           to_string(*d2));
            }
        }
    }
    return r;
}

// Lemma: stamping preserves precision, over related stampable pairs.
inline SuiteResult suite_stamp_precision(size_t max_len) {
    SuiteResult r;
    std::vector<CoercionSeq> nfs;
    for (const auto& seq : enumerate_seqs(max_len))
        if (seq_is_nf(seq) && is_specific(seq_type(seq)->first)) nfs.push_back(seq);
    for (const auto& c : nfs)
        for (const auto& d : nfs) {
            if (!seq_precision(c, d)) continue;
            ++r.checked;
            for (Lbl l : specific_labels())
                if (!seq_precision(stamp_seq(c, l), stamp_seq(d, l)))
                    r.fail("stamp broke precision: " + to_string(c) + " [= " + to_string(d));
            for (Lbl l1 : specific_labels())
                for (Lbl l2 : specific_labels()) {
                    if (!label_order(l1, l2)) continue;
                    if (!seq_precision(stamp_bang_seq(c, l1), stamp_bang_seq(d, l2)))
                        r.fail("stamp! broke precision: " + to_string(c) + " [= " + to_string(d));
                    if (!seq_precision(stamp_bang_seq(c, l1), stamp_seq(d, l2)))
                        r.fail("stamp!/stamp broke precision: " + to_string(c) + " [= " +
                               to_string(d));
                }
        }
    return r;
}

} // namespace gifc::testing
