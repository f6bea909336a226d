#include "artifact/chart.hpp"

#include <doctest.h>

using namespace artifact;

TEST_SUITE("chart") {

TEST_CASE("sidecar round trip") {
    ChartSpec spec;
    spec.object = "L";
    std::vector<ChartDatum> data{
        {0, 0, "box", "black", "1", {{"h1", 1, 1, 0, false, false}}},
        {3, 1, "box:3", "green", "ι2τ²v₁²", {{"hidden-h", 3, 3, 0, true, false}, {"rho", 0, 0, 0, false, true}}},
        {5, 5, "circle", "red", "h₁⁵", {}},
    };
    std::string text = write_sidecar(data, spec);
    CHECK(parse_sidecar(text) == data);
    CHECK(write_sidecar(parse_sidecar(text), spec) == text);
}

TEST_CASE("empty chart still renders") {
    ChartSpec spec;
    spec.object = "ko_C";
    std::string svg = emit_svg({}, spec);
    CHECK(svg.find("<svg") != std::string::npos);
    CHECK(svg.find("</svg>") != std::string::npos);
}

TEST_CASE("chart option validation and naming") {
    ChartSpec spec;
    spec.object = "L";
    spec.residue = 3;
    spec.modulus = 8;
    CHECK_NOTHROW(spec.validate());
    CHECK(chart_basename(spec) == "L-inf-3mod8");
    spec.page = 2;
    CHECK(chart_basename(spec) == "L-2-3mod8");
    spec.modulus = 0;
    CHECK_THROWS(spec.validate());
    spec.modulus = 4;
    spec.stem_lo = 10;
    spec.stem_hi = 2;
    CHECK_THROWS(spec.validate());
}

TEST_CASE("ko_C chart glyphs") {
    ChartSpec spec;
    spec.object = "ko_C";
    spec.stem_hi = 8;
    spec.f_cap = 6;
    RenderedChart rc = render_chart(spec);
    auto find = [&](int s, int f) -> const ChartDatum* {
        for (const auto& d : rc.data)
            if (d.s == s && d.f == f) return &d;
        return nullptr;
    };
    REQUIRE(find(0, 0));
    CHECK(find(0, 0)->glyph == "box");
    REQUIRE(find(2, 2));
    CHECK(find(2, 2)->color == "black");
    REQUIRE(find(4, 4));
    CHECK(find(4, 4)->color == "red");
    REQUIRE(find(4, 0));
    CHECK(find(4, 0)->label == "2v₁²");
    CHECK_FALSE(find(3, 1));
}

}
