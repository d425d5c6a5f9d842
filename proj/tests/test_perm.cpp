#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dpl/conjugacy.hpp"
#include "dpl/lattice.hpp"
#include "dpl/parallel.hpp"
#include "dpl/permgroup.hpp"
#include "dpl/picard.hpp"

#include "oracle.hpp"

#include <random>

using namespace dpl;

namespace {

Group make_s5() {
    return Group(5, {Perm::cycles(5, {{0, 1}}), Perm::cycles(5, {{0, 1, 2, 3, 4}})});
}

// the Petersen graph action: S5 permuting the 2-subsets of {0..4}; built
// here directly as an independent model of the degree-5 line graph
std::vector<std::pair<int, int>> petersen_pairs() {
    std::vector<std::pair<int, int>> ps;
    for (int i = 0; i < 5; ++i)
        for (int j = i + 1; j < 5; ++j) ps.push_back({i, j});
    return ps;
}

Perm pair_perm(const Perm& g) {
    auto ps = petersen_pairs();
    auto idx = [&](int a, int b) {
        if (a > b) std::swap(a, b);
        for (size_t k = 0; k < ps.size(); ++k)
            if (ps[k] == std::make_pair(a, b)) return static_cast<Point>(k);
        throw std::logic_error("pair");
    };
    std::vector<Point> img(10);
    for (size_t k = 0; k < ps.size(); ++k) img[k] = idx(g(ps[k].first), g(ps[k].second));
    return Perm(std::move(img));
}

} // namespace

TEST_CASE("orders of standard groups") {
    CHECK(make_s5().order() == 120);
    CHECK(Group::trivial(5).order() == 1);
    CHECK(Group::symmetric(8).order() == 40320);
    CHECK(picard::weyl_group(4).order() == 1920);
}

TEST_CASE("membership and sifting") {
    Group s5 = make_s5();
    std::mt19937 rng(12345);
    // random words in the generators are members
    for (int trial = 0; trial < 50; ++trial) {
        Perm w = Perm::identity(5);
        int len = 1 + static_cast<int>(rng() % 12);
        for (int i = 0; i < len; ++i) w = w * s5.generators()[rng() % 2];
        CHECK(s5.contains(w));
    }
    // A5 does not contain odd permutations
    Group a5(5, {Perm::cycles(5, {{0, 1, 2}}), Perm::cycles(5, {{2, 3, 4}})});
    CHECK(a5.order() == 60);
    CHECK(!a5.contains(Perm::cycles(5, {{0, 1}})));
    CHECK(a5.contains(Perm::cycles(5, {{0, 1}, {2, 3}})));
}

TEST_CASE("element conjugacy classes") {
    auto cc = element_conjugacy_classes(make_s5());
    CHECK(cc.size() == 7); // partitions of 5
    uint64_t total = 0;
    for (auto& c : cc) total += c.size;
    CHECK(total == 120);

    CHECK(element_conjugacy_classes(Group::trivial(4)).size() == 1);

    // the degree-6 Weyl action is the order-12 dihedral group
    auto w6 = picard::weyl_group(6);
    CHECK(w6.order() == 12);
    CHECK(element_conjugacy_classes(w6).size() == 6);
}

TEST_CASE("fixed points") {
    Perm id27 = Perm::identity(27);
    CHECK(id27.fixed_points().size() == 27);
    Perm t = Perm::cycles(3, {{0, 1}});
    auto f = t.fixed_points();
    REQUIRE(f.size() == 1);
    CHECK(f[0] == 2);

    // any 5-cycle acts freely on the Petersen vertices
    Perm c5 = pair_perm(Perm::cycles(5, {{0, 1, 2, 3, 4}}));
    CHECK(c5.fixed_points().empty());
}

TEST_CASE("transitivity and cyclicity") {
    std::vector<Point> ten(10);
    for (int i = 0; i < 10; ++i) ten[i] = static_cast<Point>((i + 1) % 10);
    Group c10(10, {Perm(std::move(ten))});
    CHECK(c10.is_transitive());
    CHECK(c10.is_cyclic());

    Group triv = Group::trivial(2);
    CHECK(!triv.is_transitive());
    CHECK(triv.is_cyclic());

    // the Frobenius group of order 20 is transitive on the Petersen vertices
    Group f20(10, {pair_perm(Perm::cycles(5, {{0, 1, 2, 3, 4}})),
                   pair_perm(Perm::cycles(5, {{1, 2, 4, 3}}))});
    CHECK(f20.order() == 20);
    CHECK(f20.is_transitive());
}

TEST_CASE("structure predicates") {
    Group s5 = make_s5();
    CHECK(!s5.is_abelian());
    CHECK(s5.is_solvable() == false);
    CHECK(s5.derived_subgroup().order() == 60);
    Group a5(5, {Perm::cycles(5, {{0, 1, 2}}), Perm::cycles(5, {{2, 3, 4}})});
    CHECK(a5.is_perfect());
    Group s4(4, {Perm::cycles(4, {{0, 1}}), Perm::cycles(4, {{0, 1, 2, 3}})});
    CHECK(s4.is_solvable());
}

TEST_CASE("subgroup conjugacy") {
    Group s5 = make_s5();
    Group h1(5, {Perm::cycles(5, {{0, 1}})});
    CHECK(is_conjugate_subgroup(s5, h1, h1));
    Group h2(5, {Perm::cycles(5, {{2, 3}})});
    CHECK(is_conjugate_subgroup(s5, h1, h2));
    Group h3(5, {Perm::cycles(5, {{0, 1}, {2, 3}})});
    CHECK(!is_conjugate_subgroup(s5, h1, h3));

    // the two classes of order-12 subgroups: A4 and S3 x S2
    Group a4(5, {Perm::cycles(5, {{0, 1, 2}}), Perm::cycles(5, {{0, 1}, {2, 3}})});
    Group s3s2(5, {Perm::cycles(5, {{0, 1, 2}}), Perm::cycles(5, {{0, 1}}),
                   Perm::cycles(5, {{3, 4}})});
    REQUIRE(a4.order() == 12);
    REQUIRE(s3s2.order() == 12);
    CHECK(!is_conjugate_subgroup(s5, a4, s3s2));
}

TEST_CASE("subgroup classes: small groups against the brute-force oracle") {
    LatticeOptions opt;

    auto check_group = [&](const Group& g) {
        auto mine = subgroup_classes(g, opt);
        auto oracle = dpl_tests::brute_force_subgroup_classes(g);
        CHECK(mine.classes.size() == oracle.class_count);
        // class counts per order agree
        std::map<uint64_t, size_t> per_order;
        for (auto& c : mine.classes) ++per_order[c.order];
        CHECK(per_order == oracle.classes_per_order);
        // sum of class sizes counts every subgroup
        std::map<uint64_t, Int> sub_counts;
        for (auto& c : mine.classes) sub_counts[c.order] += c.class_size;
        for (auto& [order, count] : oracle.subgroups_per_order) {
            CHECK(sub_counts[order] == count);
        }
    };

    check_group(make_s5());                                         // 19 classes
    check_group(picard::weyl_group(6));                             // dihedral of order 12
    check_group(Group(4, {Perm::cycles(4, {{0, 1}}),
                          Perm::cycles(4, {{0, 1, 2, 3}})}));       // S4: 11 classes
    check_group(Group(5, {Perm::cycles(5, {{0, 1, 2}}),
                          Perm::cycles(5, {{2, 3, 4}})}));          // A5
    check_group(Group(8, {Perm::cycles(8, {{0, 1, 2, 3, 4, 5, 6, 7}})})); // C8
    check_group(Group(6, {Perm::cycles(6, {{0, 1}}), Perm::cycles(6, {{2, 3}}),
                          Perm::cycles(6, {{4, 5}})}));             // (C2)^3
    check_group(Group(6, {Perm::cycles(6, {{0, 1, 2}}), Perm::cycles(6, {{0, 1}}),
                          Perm::cycles(6, {{3, 4, 5}}), Perm::cycles(6, {{3, 4}})})); // S3 x S3
}

TEST_CASE("subgroup classes: known counts") {
    CHECK(subgroup_classes(make_s5(), {}).classes.size() == 19);
    CHECK(subgroup_classes(picard::weyl_group(6), {}).classes.size() == 10);
    CHECK(subgroup_classes(picard::weyl_group(4), {}).classes.size() == 197);
}

TEST_CASE("subgroup classes are deterministic across thread counts") {
    Group w = picard::weyl_group(5);
    set_thread_count(1);
    auto a = subgroup_classes(w, {});
    set_thread_count(2);
    auto b = subgroup_classes(w, {});
    set_thread_count(0);
    REQUIRE(a.classes.size() == b.classes.size());
    for (size_t i = 0; i < a.classes.size(); ++i) {
        CHECK(a.classes[i].order == b.classes[i].order);
        CHECK(a.classes[i].class_size == b.classes[i].class_size);
        REQUIRE(a.classes[i].gens.size() == b.classes[i].gens.size());
        for (size_t j = 0; j < a.classes[i].gens.size(); ++j)
            CHECK(a.classes[i].gens[j] == b.classes[i].gens[j]);
    }
}

TEST_CASE("tier bound is enforced") {
    LatticeOptions opt; // tier A
    CHECK_THROWS_AS(subgroup_classes(picard::weyl_group(2), opt), TierExceededError);
}

TEST_CASE("centralizer via orbit-stabilizer") {
    Group s5 = make_s5();
    Perm t = Perm::cycles(5, {{0, 1}});
    Group c = centralizer(s5, t);
    CHECK(c.order() == 12); // C2 x S3
    CHECK(c.contains(Perm::cycles(5, {{2, 3, 4}})));
}
