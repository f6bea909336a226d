#include "artifact/intlinalg.hpp"

#include <doctest.h>

using namespace artifact;

TEST_SUITE("intlinalg") {

TEST_CASE("smith form diagonal divides and U A V = D") {
    IntMatrix A = IntMatrix::from_rows({{2, 4, 4}, {-6, 6, 12}, {10, -4, -16}});
    SmithForm s = smith_normal_form(A);
    CHECK(s.U * A * s.V == s.D);
    CHECK(s.rank == 3);
    CHECK(abs(s.D(0, 0)) == 2);
    CHECK(abs(s.D(1, 1)) == 6);
    CHECK(abs(s.D(2, 2)) == 12);
    CHECK(unimodular_inverse(s.U) * s.U == IntMatrix::identity(3));
}

TEST_CASE("kernel and integral solve") {
    IntMatrix A = IntMatrix::from_rows({{1, 2, 3}, {2, 4, 6}});
    IntMatrix K = integer_kernel(A);
    CHECK(K.cols() == 2);
    CHECK((A * K).is_zero());

    auto x = solve_integral(IntMatrix::from_rows({{2, 0}, {0, 3}}), {4, 9});
    REQUIRE(x);
    CHECK((*x)[0] == 2);
    CHECK((*x)[1] == 3);
    CHECK_FALSE(solve_integral(IntMatrix::from_rows({{2}}), {3}));
}

TEST_CASE("homology of Z --2--> Z --0--> is Z/2") {
    IntMatrix d_in = IntMatrix::from_rows({{2}});
    IntMatrix d_out(0, 1);
    Homology h = homology({0}, d_in, d_out, {});
    REQUIRE(h.orders.size() == 1);
    CHECK(h.orders[0] == 2);
}

TEST_CASE("homology respects torsion in the source") {
    // Z/8 with d_out = multiplication by 2 into Z/8: kernel is 4Z/8 = Z/2
    IntMatrix d_in(1, 0);
    IntMatrix d_out = IntMatrix::from_rows({{2}});
    Homology h = homology({8}, d_in, d_out, {8});
    REQUIRE(h.orders.size() == 1);
    CHECK(h.orders[0] == 2);
}

TEST_CASE("two-adic helpers") {
    CHECK(v2(Int(96)) == 5);
    CHECK(two_part(Int(80)) == 16);
    CHECK(two_part(Int(9 * 9 - 1)) == 16);
    CHECK(reduce_mod(Int(-3), Int(8)) == 5);
    CHECK(reduce_mod(Int(-3), Int(0)) == -3);
    CHECK(gcd_int(Int(12), Int(-18)) == 6);
}

TEST_CASE("group printing") {
    FGAbGroup g{{{"a", 0}, {"b", 4}}};
    CHECK(g.free_rank() == 1);
    CHECK(g.torsion_order() == 4);
    CHECK_FALSE(g.trivial());
}

}
