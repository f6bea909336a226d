#include "artifact/objects.hpp"

#include <doctest.h>

using namespace artifact;

TEST_SUITE("algebra") {

TEST_CASE("ko_C presentation degrees") {
    RingPresentation p = load_presentation("ko_C");
    CHECK(p.degree_of(p.gen("h1")) == TriDegree{1, 1, 1});
    CHECK(p.degree_of(p.gen("v1sq", 2)) == TriDegree{8, 0, 4});
    CHECK(p.degree_of(p.gen("tau")).coweight() == 1);
}

TEST_CASE("torsion generators kill twice themselves") {
    RingPresentation p = load_presentation("ko_C");
    Element x = p.parse("2*h1*v1sq");
    CHECK(p.normal_form(x).empty());
    Element y = p.multiply(p.parse("h1"), p.parse("tau*h1^2"));
    CHECK(y == p.parse("tau*h1^3"));
}

TEST_CASE("basis enumeration in ko_C") {
    RingPresentation p = load_presentation("ko_C");
    // (4, 0, 2): v1^2 only; (3, 3, 2): tau h1^3 only
    auto b = p.basis_at({4, 0, 2}).basis;
    REQUIRE(b.size() == 1);
    CHECK(b[0].first == p.gen("v1sq"));
    CHECK(b[0].second == 0);
    auto c = p.basis_at({3, 3, 2}).basis;
    REQUIRE(c.size() == 1);
    CHECK(c[0].second == 2);
    CHECK(p.basis_at({1, 0, 0}).basis.empty());
}

TEST_CASE("the ko relation rewrites (tau h1)^2") {
    RingPresentation p = load_presentation("ko");
    Element sq = p.multiply(p.parse("tauh1"), p.parse("tauh1"));
    CHECK(sq == p.normal_form(p.parse("tau2*h1^2 + rho^2*v1sq")));
}

TEST_CASE("json round trip") {
    RingPresentation p = load_presentation("ko");
    RingPresentation q = RingPresentation::from_json(p.to_json());
    CHECK(q.to_json() == p.to_json());
    CHECK(q.size() == p.size());
}

TEST_CASE("malformed presentations are rejected") {
    nlohmann::json j = load_presentation("ko_C").to_json();
    j["generators"][0]["degree"] = {0, 0};
    CHECK_THROWS(RingPresentation::from_json(j));
}

}
