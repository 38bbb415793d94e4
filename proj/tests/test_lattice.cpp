#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "lattice.hpp"

using namespace gifc;

namespace {

// Every type of depth <= 2: bases, Ref over base, Fun over base, all labels.
std::vector<LType> small_types() {
    std::vector<LType> base;
    for (Lbl l : {Lbl::Low, Lbl::High, Lbl::Star}) {
        base.push_back(unit_ty(l));
        base.push_back(bool_ty(l));
    }
    std::vector<LType> out = base;
    for (const auto& inner : base)
        for (Lbl l : {Lbl::Low, Lbl::High, Lbl::Star}) out.push_back({make_ref(inner), l});
    for (const auto& dom : base)
        for (Lbl pc : {Lbl::Low, Lbl::High, Lbl::Star})
            for (const auto& cod : base)
                for (Lbl l : {Lbl::Low, Lbl::High, Lbl::Star})
                    out.push_back({make_fun(dom, pc, cod), l});
    return out;
}

} // namespace

TEST_SUITE("lattice") {

TEST_CASE("label order") {
    CHECK(label_order(Lbl::Low, Lbl::High));
    CHECK_FALSE(label_order(Lbl::High, Lbl::Low));
    CHECK(label_order(Lbl::Low, Lbl::Low));
    CHECK_THROWS_AS(label_order(Lbl::Star, Lbl::Low), ContractError);
}

TEST_CASE("precision") {
    CHECK(label_prec(Lbl::Star, Lbl::High));
    CHECK(type_prec(bool_ty(Lbl::Star), bool_ty(Lbl::Low)));
    CHECK_FALSE(type_prec(bool_ty(Lbl::High), bool_ty(Lbl::Low)));
}

TEST_CASE("consistent subtyping") {
    CHECK(label_csub(Lbl::High, Lbl::Star));
    CHECK_FALSE(type_csub(bool_ty(Lbl::High), bool_ty(Lbl::Low)));
    LType a{make_ref(bool_ty(Lbl::High)), Lbl::Low};
    LType b{make_ref(bool_ty(Lbl::Star)), Lbl::Star};
    CHECK(type_csub(a, b));
}

TEST_CASE("consistent join") {
    CHECK(label_cjoin(Lbl::Low, Lbl::Star) == Lbl::Star);
    CHECK(*type_cjoin(bool_ty(Lbl::Low), bool_ty(Lbl::High)) == bool_ty(Lbl::High));
    LType a{make_ref(bool_ty(Lbl::Star)), Lbl::Low};
    LType b{make_ref(bool_ty(Lbl::High)), Lbl::Low};
    LType expect{make_ref(bool_ty(Lbl::High)), Lbl::Low};
    CHECK(*type_cjoin(a, b) == expect);
}

TEST_CASE("consistent meet") {
    CHECK(label_cmeet(Lbl::High, Lbl::Star) == Lbl::Star);
    CHECK(label_cmeet(Lbl::Low, Lbl::High) == Lbl::Low);
    RawType fun = make_fun(bool_ty(Lbl::Low), Lbl::Low, bool_ty(Lbl::Low));
    CHECK(*type_cmeet(LType{fun, Lbl::Low}, LType{fun, Lbl::High}) == LType{fun, Lbl::Low});
}

TEST_CASE("precision join") {
    CHECK(*label_prec_join(Lbl::Star, Lbl::High) == Lbl::High);
    CHECK(*label_prec_join(Lbl::Low, Lbl::Low) == Lbl::Low);
    CHECK_FALSE(label_prec_join(Lbl::Low, Lbl::High).has_value());
}

TEST_CASE("stamp") {
    CHECK(stamp_type(bool_ty(Lbl::Low), Lbl::High) == bool_ty(Lbl::High));
    CHECK(stamp_type(bool_ty(Lbl::Star), Lbl::High) == bool_ty(Lbl::Star));
    CHECK(stamp_type(unit_ty(Lbl::Low), Lbl::Low) == unit_ty(Lbl::Low));
}

TEST_CASE("type precision is a partial order over small types") {
    auto tys = small_types();
    for (const auto& a : tys) CHECK(type_prec(a, a));
    std::vector<std::pair<size_t, size_t>> related;
    for (size_t i = 0; i < tys.size(); ++i)
        for (size_t j = 0; j < tys.size(); ++j)
            if (type_prec(tys[i], tys[j])) {
                related.emplace_back(i, j);
                if (i != j) CHECK_FALSE((type_prec(tys[j], tys[i]) && !(tys[i] == tys[j])));
            }
    for (auto [i, j] : related)
        for (size_t k = 0; k < tys.size(); ++k)
            if (type_prec(tys[j], tys[k])) CHECK(type_prec(tys[i], tys[k]));
}

TEST_CASE("consistent subtyping reflexive; agrees with order on specific labels") {
    for (const auto& a : small_types()) CHECK(type_csub(a, a));
    for (Lbl a : {Lbl::Low, Lbl::High})
        for (Lbl b : {Lbl::Low, Lbl::High}) CHECK(label_csub(a, b) == label_order(a, b));
}

TEST_CASE("precision join is the least upper bound") {
    auto tys = small_types();
    for (const auto& x : tys)
        for (const auto& y : tys) {
            auto j = type_prec_join(x, y);
            if (!j) continue;
            CHECK(type_prec(x, *j));
            CHECK(type_prec(y, *j));
            for (const auto& z : tys)
                if (type_prec(x, z) && type_prec(y, z)) CHECK(type_prec(*j, z));
        }
}

TEST_CASE("stamping is idempotent") {
    for (const auto& a : small_types())
        for (Lbl l : {Lbl::Low, Lbl::High})
            CHECK(stamp_type(stamp_type(a, l), l) == stamp_type(a, l));
}

TEST_CASE("rendering round-trips") {
    CHECK(to_string(bool_ty(Lbl::Low)) == "Bool@low");
    CHECK(to_string(unit_ty(Lbl::Star)) == "Unit@*");
    CHECK(to_string(LType{make_ref(bool_ty(Lbl::High)), Lbl::Low}) == "Ref Bool@high @ low");
    CHECK(to_string(LType{make_fun(bool_ty(Lbl::High), Lbl::Low, bool_ty(Lbl::Low)), Lbl::Low}) ==
          "(Bool@high -[low]-> Bool@low)@low");
}

} // TEST_SUITE
