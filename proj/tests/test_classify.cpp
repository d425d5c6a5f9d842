#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dpl/classify.hpp"

using namespace dpl;
using namespace dpl::classify;

namespace {

const Classification& degree5() {
    static Classification c = classify_degree(5, {});
    return c;
}

const Classification& degree3() {
    static Classification c = classify_degree(3, {});
    return c;
}

} // namespace

TEST_CASE("criterion on basic groups") {
    auto& c5 = degree5();
    // the trivial class never satisfies: it has a global fixed point
    CHECK(c5.reports.front().order == 1);
    CHECK(c5.reports.front().has_global_fixed_point);
    CHECK(!c5.reports.front().satisfies_criterion);

    // the full Weyl group is transitive, hence fails
    auto& full = c5.reports.back();
    CHECK(full.order == 120);
    CHECK(full.transitive);
    CHECK(!full.satisfies_criterion);

    // consistency: criterion implies neither cyclic nor transitive nor fixed
    for (auto& c : {std::cref(degree5()), std::cref(degree3())})
        for (const auto& r : c.get().reports)
            if (r.satisfies_criterion) {
                CHECK(!r.cyclic);
                CHECK(!r.transitive);
                CHECK(!r.has_global_fixed_point);
                uint64_t total = 0;
                for (auto s : r.orbit_type) total += s;
                CHECK(total == c.get().lines.size());
            }
}

TEST_CASE("full element re-check for criterion classes") {
    for (auto& c : {std::cref(degree5()), std::cref(degree3())}) {
        for (const auto& r : c.get().reports) {
            if (!r.satisfies_criterion || r.order > 10000) continue;
            Group h(c.get().lines.size(), r.gens);
            bool all_fix = true;
            h.for_each_element([&](const Perm& p) {
                if (p.count_fixed() == 0) all_fix = false;
                return all_fix;
            });
            CHECK(all_fix);
        }
    }
}

TEST_CASE("published table values, degrees 5 and 4") {
    DegreeTable t5 = degree5().table();
    CHECK(t5.classes == 19);
    CHECK(t5.transitive == 3);
    CHECK(t5.cyclic == 7);
    CHECK(t5.fixed_point == 9);
    CHECK(t5.criterion == 2);

    DegreeTable t4 = classify_degree(4, {}).table();
    CHECK(t4.classes == 197);
    CHECK(t4.transitive == 51);
    CHECK(t4.cyclic == 18);
    CHECK(t4.fixed_point == 19);
    CHECK(t4.criterion == 0);
}

TEST_CASE("published table values, degree 3") {
    DegreeTable t3 = degree3().table();
    CHECK(t3.classes == 350);
    CHECK(t3.transitive == 25);
    CHECK(t3.cyclic == 25);
    CHECK(t3.fixed_point == 172);
    CHECK(t3.criterion == 3);
}

TEST_CASE("degree-5 criterion classes and their orbit types") {
    auto& c = degree5();
    auto v4 = find_orbit_type(c, {2, 2, 2, 4});
    REQUIRE(v4.size() == 1);
    CHECK(c.reports[v4[0]].order == 4);
    CHECK(small_group_label(Group(10, c.reports[v4[0]].gens)) == "V4");

    auto a4 = find_orbit_type(c, {4, 6});
    REQUIRE(a4.size() == 1);
    CHECK(c.reports[a4[0]].order == 12);
    CHECK(small_group_label(Group(10, c.reports[a4[0]].gens)) == "A4");

    // exactly two criterion classes in total
    CHECK(degree5().table().criterion == 2);

    // orbits of length 4 consist of mutually non-adjacent vertices
    CHECK(has_skew_orbit_of_size(c, v4[0], 4));
    CHECK(has_skew_orbit_of_size(c, a4[0], 4));
}

TEST_CASE("degree-3 criterion classes and their orbit types") {
    auto& c = degree3();
    auto d5 = find_orbit_type(c, {2, 5, 5, 5, 10});
    REQUIRE(d5.size() == 1);
    CHECK(c.reports[d5[0]].order == 10);
    CHECK(small_group_label(Group(27, c.reports[d5[0]].gens)) == "D5");

    auto two = find_orbit_type(c, {2, 5, 10, 10});
    REQUIRE(two.size() == 2);
    std::set<uint64_t> orders{c.reports[two[0]].order, c.reports[two[1]].order};
    CHECK(orders == std::set<uint64_t>{20, 120});
    for (size_t i : two) {
        Group h(27, c.reports[i].gens);
        auto label = small_group_label(h);
        CHECK((label == "F20" || label == "S5"));
    }

    // every criterion class has a non-adjacent 2-orbit and a skew 5-orbit
    for (size_t i : {d5[0], two[0], two[1]}) {
        CHECK(has_skew_orbit_of_size(c, i, 2));
        CHECK(has_skew_orbit_of_size(c, i, 5));
    }
}

TEST_CASE("solvable split") {
    auto s3 = solvable_split(degree3());
    CHECK(s3.solvable == 2);      // D5 and the order-20 class
    CHECK(s3.non_solvable == 1);  // S5
    auto s4 = solvable_split(classify_degree(4, {}));
    CHECK(s4.solvable == 0);
    CHECK(s4.non_solvable == 0);
}

TEST_CASE("closed-form degrees") {
    auto v9 = closed_form_answer(9);
    CHECK(v9.hasse_principle_holds);
    CHECK(!v9.recomputed);

    auto v8 = closed_form_answer(8);
    CHECK(!v8.hasse_principle_holds);

    auto v7 = closed_form_answer(7);
    CHECK(v7.recomputed);
    CHECK(v7.criterion_classes == 0);
    CHECK(v7.hasse_principle_holds);

    auto v6 = closed_form_answer(6);
    CHECK(v6.recomputed);
    CHECK(v6.criterion_classes == 0);

    CHECK_THROWS_AS(closed_form_answer(5), std::invalid_argument);
}

TEST_CASE("column consistency") {
    for (int d : {7, 6, 5, 4, 3}) {
        DegreeTable t = classify_degree(d, {}).table();
        CHECK(t.transitive <= t.classes);
        CHECK(t.cyclic <= t.classes);
        CHECK(t.fixed_point <= t.classes);
        CHECK(t.criterion + t.transitive + t.cyclic <= 2 * t.classes);
        CHECK(t.criterion <= t.classes - t.transitive);
    }
}

TEST_CASE("degree mismatch is rejected") {
    Group g = Group::trivial(5);
    CHECK_THROWS_AS(criterion(g, 10), std::invalid_argument);
}

TEST_CASE("small group labels") {
    CHECK(small_group_label(Group(4, {Perm::cycles(4, {{0, 1}, {2, 3}}),
                                      Perm::cycles(4, {{0, 2}, {1, 3}})})) == "V4");
    CHECK(small_group_label(Group(5, {Perm::cycles(5, {{0, 1, 2, 3, 4}}),
                                      Perm::cycles(5, {{1, 4}, {2, 3}})})) == "D5");
    CHECK(small_group_label(Group(5, {Perm::cycles(5, {{0, 1, 2, 3, 4}}),
                                      Perm::cycles(5, {{1, 2, 4, 3}})})) == "F20");
    CHECK(small_group_label(Group(5, {Perm::cycles(5, {{0, 1}}),
                                      Perm::cycles(5, {{0, 1, 2, 3, 4}})})) == "S5");
    CHECK(small_group_label(Group(5, {Perm::cycles(5, {{0, 1, 2}}),
                                      Perm::cycles(5, {{2, 3, 4}})})) == "A5");
}
