#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dpl/picard.hpp"

#include <sstream>

using namespace dpl;
using namespace dpl::picard;

TEST_CASE("line class counts per degree") {
    const int expected[8] = {0, 240, 56, 27, 16, 10, 6, 3};
    for (int d = 1; d <= 7; ++d) CHECK(enumerate_lines(d).size() == expected[d]);
    CHECK_THROWS_AS(enumerate_lines(0), std::invalid_argument);
    CHECK_THROWS_AS(enumerate_lines(8), std::invalid_argument);
}

TEST_CASE("degree 7: the three classes form a path") {
    auto lc = enumerate_lines(7);
    REQUIRE(lc.size() == 3);
    // E1 = (0;-1,0), E2 = (0;0,-1), H-E1-E2 = (1;1,1), in lex order
    CHECK(lc.vertices[0].coords == std::vector<int>{0, -1, 0});
    CHECK(lc.vertices[1].coords == std::vector<int>{0, 0, -1});
    CHECK(lc.vertices[2].coords == std::vector<int>{1, 1, 1});
    CHECK(lc.mult[0][1] == 0);
    CHECK(lc.mult[0][2] == 1);
    CHECK(lc.mult[1][2] == 1);
}

TEST_CASE("line invariants") {
    for (int d = 1; d <= 7; ++d) {
        auto lc = enumerate_lines(d);
        for (const auto& v : lc.vertices) {
            CHECK(v.self_intersection() == -1);
            CHECK(v.anticanonical_degree() == 1);
        }
        // off-diagonal multiplicities are non-negative; multiple edges
        // happen exactly in degrees 1 and 2
        int mx = lc.max_off_diagonal();
        CHECK(mx >= 1);
        if (d <= 2)
            CHECK(mx > 1);
        else
            CHECK(mx == 1);
        CHECK(lc.rank() == 10 - d);
    }
    CHECK(enumerate_lines(1).max_off_diagonal() == 3);
    CHECK(enumerate_lines(2).max_off_diagonal() == 2);
}

TEST_CASE("simple reflections act as expected") {
    // reflection in H-E1-E2-E3 sends E1 to H-E2-E3
    DivisorClass e1{{0, -1, 0, 0}};
    DivisorClass r{{1, 1, 1, 1}};
    DivisorClass img = reflect(e1, r);
    CHECK(img.coords == std::vector<int>{1, 0, 1, 1}); // H - E2 - E3
}

TEST_CASE("Weyl group orders") {
    const uint64_t expected[8] = {0, 696729600, 2903040, 51840, 1920, 120, 12, 2};
    for (int d = 1; d <= 7; ++d) {
        auto w = weyl_group(d);
        CHECK(w.order() == expected[d]);
    }
}

TEST_CASE("generators preserve the intersection matrix and act transitively") {
    for (int d = 1; d <= 7; ++d) {
        auto lc = enumerate_lines(d);
        auto w = weyl_group(d, lc);
        for (const Perm& g : w.generators())
            for (size_t i = 0; i < lc.size(); ++i)
                for (size_t j = 0; j < lc.size(); ++j)
                    CHECK(lc.mult[g(static_cast<Point>(i))][g(static_cast<Point>(j))] ==
                          lc.mult[i][j]);
        if (d <= 6) {
            CHECK(w.is_transitive());
        } else {
            // the degree-7 group fixes the middle vertex of the path
            CHECK(w.fixed_points().size() == 1);
        }
    }
}

TEST_CASE("pair orbits") {
    auto rep = verify_pair_orbits(2);
    REQUIRE(rep.orbit_sizes.size() == 3);
    CHECK(rep.orbit_sizes[0] == 28);
    CHECK(rep.orbit_sizes[1] == 756);
    CHECK(rep.orbit_sizes[2] == 756);
    CHECK(rep.smallest_orbit_is_double_edges);

    auto rep5 = verify_pair_orbits(5);
    uint64_t total = 0;
    for (auto s : rep5.orbit_sizes) total += s;
    CHECK(total == 45); // 10 choose 2
}

TEST_CASE("adjacency export") {
    auto lc = enumerate_lines(7);
    std::ostringstream os;
    lc.write_adjacency(os);
    CHECK(os.str() == "7 3\n0 -1 0\n0 0 -1\n1 1 1\n-1 0 1\n0 -1 1\n1 1 -1\n");
}
