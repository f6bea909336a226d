#include "artifact/objects.hpp"

#include <doctest.h>

using namespace artifact;

namespace {

std::vector<Int> orders(const SpectralSequence& ss, int r, const TriDegree& d) {
    std::vector<Int> o;
    if (const DegPage* p = ss.at(r, d))
        for (const auto& s : p->summ) o.push_back(s.order);
    return o;
}

}  // namespace

TEST_SUITE("engine") {

TEST_CASE("d1 on ko_C and the surviving classes") {
    auto cx = make_complex("ko_C");
    const auto& p = cx->ring();
    CHECK(cx->d1(p.gen("v1sq")) == p.parse("tau*h1^3"));
    CHECK(cx->shift(1) == TriDegree{-1, 3, 0});

    Window w{{0, 0, -4}, {8, 6, 6}};
    SpectralSequence ss(*cx, w, 2);
    ss.run();
    CHECK(orders(ss, 3, {0, 0, 0}) == std::vector<Int>{0});
    CHECK(orders(ss, 3, {4, 0, 2}) == std::vector<Int>{0});  // generated by 2v1^2
    CHECK(orders(ss, 3, {3, 3, 2}).empty());                  // tau h1^3 is hit
    CHECK(orders(ss, 3, {3, 3, 3}) == std::vector<Int>{2});   // h1^3 survives
    CHECK(ss.coords(2, {4, 0, 2}, p.parse("v1sq")) == std::nullopt);
    CHECK(ss.coords(2, {4, 0, 2}, p.parse("2*v1sq")));
}

TEST_CASE("d1 squares to zero on ko") {
    auto cx = make_complex("ko");
    const auto& p = cx->ring();
    for (const char* m : {"tau2*tauh1*v1sq", "v1sq^2", "tauh1^2*v1sq", "rho*tau2*v1sq^3"}) {
        Element e = cx->d1(p.parse(m).begin()->first);
        Element dd;
        for (const auto& [mono, c] : e) dd = add(dd, scale(cx->d1(mono), c));
        CHECK_MESSAGE(cx->normalize(dd).empty(), m);
    }
}

TEST_CASE("lazy pages outside the inner window") {
    auto cx = make_complex("ko_C");
    SpectralSequence ss(*cx, Window{{0, 0, 0}, {4, 4, 4}}, 2);
    CHECK(orders(ss, 3, {16, 0, 8}) == std::vector<Int>{0});
}

}
