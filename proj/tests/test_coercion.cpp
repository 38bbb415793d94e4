#include <doctest.h>

#include "helpers.hpp"

using namespace gifc;
using namespace gifc::testing;

TEST_SUITE("coercion") {

TEST_CASE("sequence typing") {
    CHECK(*seq_type(cs("id(low);low!")) == std::make_pair(Lbl::Low, Lbl::Star));
    CHECK(*seq_type(cs("id(low);up;high!")) == std::make_pair(Lbl::Low, Lbl::Star));
    CHECK_FALSE(seq_type(cs("id(low);high!")).has_value());
}

TEST_CASE("normalization collapses flows") {
    CHECK(normalize(cs("id(low);low!;high?p")) == cs("id(low);up"));
    CHECK(normalize(cs("id(low);up;high!;low?p")) == cs("bot(p,low,low)"));
    CHECK(normalize(cs("id(high);high!;high?p")) == cs("id(high)"));
}

TEST_CASE("composition") {
    CHECK(compose(cs("id(low);low!"), cs("bot(p,*,low)")) == cs("bot(p,low,low)"));
    CHECK(compose(cs("id(low);low!"), cs("id(*)")) == cs("id(low);low!;id(*)"));
    CHECK(normalize(compose(cs("id(low);low!"), cs("id(*);high?p"))) == cs("id(low);up"));
    CHECK_THROWS_AS(compose(cs("id(low)"), cs("id(high)")), ContractError);
}

TEST_CASE("stamp table") {
    CHECK(stamp_seq(cs("id(low);low!"), Lbl::High) == cs("id(low);up;high!"));
    CHECK(stamp_seq(cs("id(high)"), Lbl::High) == cs("id(high)"));
    CHECK(stamp_seq(cs("id(low);up"), Lbl::Low) == cs("id(low);up"));
    CHECK(stamp_seq(cs("id(low)"), Lbl::High) == cs("id(low);up"));
    CHECK(stamp_seq(cs("id(high);high!"), Lbl::High) == cs("id(high);high!"));
    CHECK(stamp_seq(cs("id(low);up;high!"), Lbl::High) == cs("id(low);up;high!"));
}

TEST_CASE("stamp! table") {
    CHECK(stamp_bang_seq(cs("id(low)"), Lbl::High) == cs("id(low);up;high!"));
    CHECK(stamp_bang_seq(cs("id(low);up"), Lbl::High) == cs("id(low);up;high!"));
    CHECK(stamp_bang_seq(cs("id(high);high!"), Lbl::Low) == cs("id(high);high!"));
    CHECK(stamp_bang_seq(cs("id(high)"), Lbl::Low) == cs("id(high);high!"));
    CHECK(stamp_bang_seq(cs("id(low);low!"), Lbl::High) == cs("id(low);up;high!"));
    CHECK(stamp_bang_seq(cs("id(high);high!"), Lbl::High) == cs("id(high);high!"));
    CHECK_THROWS_AS(stamp_bang_seq(cs("id(*)"), Lbl::High), ContractError);
}

TEST_CASE("security level") {
    CHECK(security(cs("id(low);up;high!")) == Lbl::High);
    CHECK(security(cs("id(low)")) == Lbl::Low);
    CHECK(security(cs("id(high);high!")) == Lbl::High);
    CHECK(security(cs("id(low);up")) == Lbl::High);
}

TEST_CASE("precision") {
    CHECK(seq_precision(cs("id(low);low!"), cs("id(low);up;high!")));
    CHECK(seq_precision(cs("id(low);low!"), cs("bot(p,low,low)")));
    CHECK_FALSE(seq_precision(cs("id(high)"), cs("id(low)")));
    CHECK_FALSE(seq_precision(cs("bot(p,low,low)"), cs("id(low)")));
    CHECK(seq_precision(cs("id(*)"), cs("id(high)")));
    CHECK(seq_precision_left(cs("id(low);low!"), Lbl::Low));
    CHECK_FALSE(seq_precision_left(cs("id(low);low!"), Lbl::High));
    CHECK(seq_precision_right(Lbl::Star, cs("id(high);high!")));
}

TEST_CASE("coerce") {
    CHECK(coerce_label(Lbl::Star, Lbl::Low, "p") == cs("id(*);low?p"));
    CHECK(coerce_label(Lbl::High, Lbl::Star, "p") == cs("id(high);high!"));
    CHECK(coerce_label(Lbl::Low, Lbl::Low, "p") == cs("id(low)"));
    CHECK(coerce_label(Lbl::Low, Lbl::High, "p") == cs("id(low);up"));
    CHECK_THROWS_AS(coerce_label(Lbl::High, Lbl::Low, "p"), ContractError);
}

TEST_CASE("rendering round-trips through the debug parser") {
    for (const auto& seq : enumerate_seqs(3)) CHECK(cs(to_string(seq)) == seq);
}

// The full length-4 enumerations run in the acceptance gate; length 3 keeps
// the unit feedback loop quick.
TEST_CASE("metatheory suites (length 3)") {
    auto report = [](const SuiteResult& r) {
        CAPTURE(r.first);
        CHECK(r.violations == 0);
        CHECK(r.checked > 0);
    };
    report(suite_normalization(3));
    report(suite_compose_flow(3));
    report(suite_stamp_flow(3));
    report(suite_security_monotone(3));
    report(suite_simulation(3));
    report(suite_stamp_precision(3));
}

} // TEST_SUITE
