#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "dpl/etale.hpp"
#include "dpl/poly.hpp"
#include "dpl/polymod.hpp"

#include <random>

using namespace dpl;

TEST_CASE("polynomial basics") {
    Poly f(std::vector<Int>{-1, 0, 1}); // x^2 - 1
    CHECK(f.degree() == 2);
    CHECK(f(Int(3)) == 8);
    CHECK(f.derivative().coeffs() == std::vector<Int>{0, 2});
    Poly g = f * f;
    CHECK(g.degree() == 4);
    CHECK(g(Int(2)) == 9);
    CHECK(f.compose_linear(2, 1)(Int(1)) == f(Int(3)));
}

TEST_CASE("resultant and discriminant") {
    Poly f(std::vector<Int>{-2, 0, 1});
    CHECK(discriminant(f) == 8);
    Poly g(std::vector<Int>{1, 2, 1}); // (x+1)^2
    CHECK(discriminant(g) == 0);
    CHECK(!is_squarefree(g));
    CHECK(is_squarefree(f));
    CHECK(squarefree_part(g).degree() == 1);
}

TEST_CASE("integer roots against divisor-scan oracle") {
    std::mt19937 rng(777);
    for (int trial = 0; trial < 60; ++trial) {
        std::vector<Int> c(1 + rng() % 5);
        for (Int& x : c) x = Int(static_cast<int>(rng() % 21)) - 10;
        c.push_back(1); // monic
        Poly f(std::move(c));
        auto roots = integer_roots(f);
        // oracle: scan a window certainly containing all integer roots
        Int bound = 1;
        for (const Int& x : f.coeffs()) bound += boost::multiprecision::abs(x);
        std::vector<Int> expect;
        for (Int r = -bound; r <= bound; ++r)
            if (f(r) == 0) expect.push_back(r);
        CHECK(roots == expect);
    }
    CHECK(integer_roots(Poly(std::vector<Int>{-4, 0, 1})) == std::vector<Int>{-2, 2});
    CHECK(integer_roots(Poly(std::vector<Int>{-101, 0, 0, 0, 0, 1})).empty());
}

TEST_CASE("real root counting") {
    CHECK(count_real_roots(Poly(std::vector<Int>{-5, 0, 1})) == 2);
    CHECK(count_real_roots(Poly(std::vector<Int>{1, 0, 1})) == 0);
    CHECK(count_real_roots(Poly(std::vector<Int>{0, -1, 0, 1})) == 3); // x^3 - x
    auto w = real_root_witness(Poly(std::vector<Int>{-5, 0, 1}));
    REQUIRE(w.exists);
    // the isolating interval contains sqrt(5) or -sqrt(5)
    if (w.lo == w.hi) {
        CHECK(w.lo * w.lo == 5);
    } else {
        Rat lo2 = w.lo * w.lo, hi2 = w.hi * w.hi;
        bool contains = (w.lo > 0 && lo2 <= 5 && 5 <= hi2) || (w.hi < 0 && hi2 <= 5 && 5 <= lo2);
        CHECK(contains);
    }
}

TEST_CASE("squarefree reports") {
    auto r1 = squarefree_test(Int(101833));
    CHECK(r1.squarefree);
    CHECK(r1.certified);
    auto r2 = squarefree_test(Int(163) * 163);
    CHECK(!r2.squarefree);
    CHECK(r2.certified);
    auto r3 = squarefree_test(Int(30));
    CHECK(r3.squarefree);
}

TEST_CASE("mod-p factorization") {
    Poly f(std::vector<Int>{-5, 0, 1});
    auto t11 = distinct_degree_type(reduce_mod(f, 11));
    CHECK(t11 == std::vector<int>{1, 1});
    auto t3 = distinct_degree_type(reduce_mod(f, 3));
    CHECK(t3 == std::vector<int>{2});

    // full factorization with multiplicities
    Poly g(std::vector<Int>{0, 0, 1}); // x^2
    auto fac = factor_mod_p(reduce_mod(g, 5));
    REQUIRE(fac.size() == 1);
    CHECK(fac[0].second == 2);

    // deg-7 squarefree product
    Poly h = Poly(std::vector<Int>{1, 1, 1}) * Poly(std::vector<Int>{2, 3, 0, 0, 0, 1});
    auto fh = factor_mod_p(reduce_mod(h, 13));
    int total = 0;
    for (auto& [ir, e] : fh) total += ir.degree() * e;
    CHECK(total == 7);
}

TEST_CASE("irreducibility certificates") {
    CHECK(certify_irreducible(Poly(std::vector<Int>{-2, 0, 1})));
    CHECK(certify_irreducible(Poly(std::vector<Int>{9, 2, -7, -1, 1})));   // A4 quartic
    CHECK(certify_irreducible(Poly(std::vector<Int>{1, 0, -1, 2, -2, 1}))); // D5 quintic
    CHECK(!certify_irreducible(Poly(std::vector<Int>{-4, 0, 1})));          // (x-2)(x+2)
    CHECK(!certify_irreducible(Poly(std::vector<Int>{2, 3, 2, 1})));        // has factor x^2+x+1
}

TEST_CASE("p-adic solubility against exhaustive search") {
    // decisive oracle: a squarefree f has a Z_p root iff it has a root
    // mod p^(2v+1) where v = v_p(disc f)
    std::mt19937 rng(20260810);
    int done = 0;
    while (done < 100) {
        int deg = (rng() % 2) ? 3 : 5;
        std::vector<Int> c(deg);
        for (Int& x : c) x = Int(static_cast<int>(rng() % 15)) - 7;
        Poly f = Poly::monic_from(std::move(c), deg);
        if (!is_squarefree(f)) continue;
        uint64_t p = std::vector<uint64_t>{2, 3, 5, 7}[rng() % 4];
        int v = valuation(discriminant(f), Int(p));
        int k = 2 * v + 1;
        Int pk = 1;
        for (int i = 0; i < k; ++i) pk *= p;
        if (pk > 2000000) continue;
        bool oracle = false;
        for (Int r = 0; r < pk; ++r)
            if (f(r) % pk == 0) {
                oracle = true;
                break;
            }
        auto verdict = etale::qp_soluble(f, Int(p));
        CHECK(verdict.soluble == oracle);
        if (verdict.soluble) {
            // witness soundness: f(r) = 0 mod p^precision, derivative valuation small
            REQUIRE(verdict.has_padic_witness);
            CHECK(f(verdict.padic_root) % verdict.modulus == 0);
            CHECK(verdict.derivative_valuation * 2 < 24);
        }
        ++done;
    }
}

TEST_CASE("primality helpers") {
    CHECK(is_prime_u64(101833));
    CHECK(!is_prime_u64(26569)); // 163^2
    CHECK(miller_rabin(Int("2305843009213693951")));
    CHECK(primes_up_to(20) == std::vector<uint64_t>{2, 3, 5, 7, 11, 13, 17, 19});
    CHECK(valuation(Int(2209), 47) == 2);
}
