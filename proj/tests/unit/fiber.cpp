#include "artifact/objects.hpp"

#include <doctest.h>

using namespace artifact;

TEST_SUITE("fiber") {

TEST_CASE("valuation of 3^n - 1 against repeated squaring") {
    Int p = 1;
    for (long long n = 1; n <= 200; ++n) {
        p *= 3;
        CHECK(val_3n_minus_1(n) == v2(p - 1));
    }
    CHECK(v2(48LL) == 4);
}

TEST_CASE("iota cells in L_C have the orders of 9^k - 1") {
    auto cx = make_complex("L_C");
    auto& fc = dynamic_cast<const FiberComplex&>(*cx);
    const auto& p = fc.ring();
    Int nine = 1;
    for (int k = 1; k <= 12; ++k) {
        nine *= 9;
        Monomial m = p.parse("iota*v1sq^" + std::to_string(k)).begin()->first;
        auto o = fc.cell_order(m);
        REQUIRE(o);
        CHECK(*o == two_part(nine - 1));
    }
    CHECK_FALSE(fc.cell_order(p.gen("v1sq")));  // psi^3 - 1 is injective there
    CHECK(fc.cell_order(p.one()) == Int(0));
}

TEST_CASE("order identity of the fiber sequence in low degrees") {
    auto cx = make_complex("L");
    auto& fc = dynamic_cast<const FiberComplex&>(*cx);
    for (TriDegree d : {TriDegree{0, 0, 0}, TriDegree{3, 1, 2}, TriDegree{7, 1, 4}, TriDegree{8, 0, 4}}) {
        LesCheck c = les_check(fc, d);
        CHECK_MESSAGE(c.ok(), d.str());
    }
}

}
