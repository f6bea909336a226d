#include "artifact/objects.hpp"
#include "artifact/homotopy.hpp"

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>

using namespace artifact;

namespace {

HomotopyGroup group(const std::string& object, int s, int w, int f_cap = 24) {
    Window win{{s - 1, 0, w - 1}, {s + 1, f_cap, w + 1}};
    auto cx = make_complex(object);
    auto rule = make_rule(*cx);
    SpectralSequence ss(*cx, win, default_pages(object), rule);
    auto ex = expand_ledger(ledger_for(object), ss, win);
    REQUIRE(ex.errors.empty());
    return assemble(ss, s, w, ex.ext, f_cap);
}

}  // namespace

TEST_SUITE("homotopy") {

TEST_CASE("ledger files parse") {
    auto path = std::filesystem::temp_directory_path() / "artifact_ledger_test.tsv";
    {
        std::ofstream out(path);
        out << "# comment\nobject\tcoweight\tsource\tkind\ttarget\ts\tf\tw\tdegree_of\tproof\tflags\n"
            << "L\t1\ttauh1\th\trho*h1*tauh1\t1\t1\t0\tsource\tprojection\ttau4,v4\n";
    }
    auto rows = load_ledger(path.string());
    std::filesystem::remove(path);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].kind == "h");
    CHECK(rows[0].has("tau4"));
    CHECK(rows[0].has("v4"));
    CHECK_FALSE(rows[0].has("highest_target"));
    CHECK(kind_degree("rho") == TriDegree{-1, 1, -1});
    CHECK_THROWS(kind_degree("nu"));
}

TEST_CASE("L_C in stem 7 is Z/16 on iota v1^4") {
    HomotopyGroup g = group("L_C", 7, 4);
    CHECK(g.errors.empty());
    CHECK(g.exponent() == 16);
    CHECK(g.headline() == "Z/16, generator ιv₁⁴");
}

TEST_CASE("L_C in stem 3 picks up the hidden h extension") {
    HomotopyGroup g = group("L_C", 3, 2);
    CHECK(g.exponent() == 8);
    CHECK(g.classes.size() == 2);
}

TEST_CASE("generic coweight 3 stem of L has order 8") {
    HomotopyGroup g = group("L", 5, 2);
    CHECK_FALSE(g.truncated);
    CHECK(g.exponent() == 8);
}

}
