#ifndef DPL_POLYMOD_HPP
#define DPL_POLYMOD_HPP

#include "dpl/poly.hpp"

#include <cstdint>
#include <vector>

namespace dpl {

// monic polynomial over F_p, dense, constant first
struct PolyP {
    uint64_t p = 2;
    std::vector<uint64_t> c;

    int degree() const { return static_cast<int>(c.size()) - 1; }
    bool zero() const { return c.empty(); }
    void trim() {
        while (!c.empty() && c.back() == 0) c.pop_back();
    }
};

PolyP reduce_mod(const Poly& f, uint64_t p);

PolyP pm_mul(const PolyP& a, const PolyP& b);
PolyP pm_rem(PolyP a, const PolyP& b);
PolyP pm_gcd(PolyP a, PolyP b);          // monic gcd
PolyP pm_pow_x(uint64_t e_base, uint64_t e_exp, const PolyP& f); // x^(base^exp) mod f
PolyP pm_powmod(PolyP a, const Int& e, const PolyP& f);
PolyP pm_quot(const PolyP& a, const PolyP& b);
void pm_make_monic(PolyP& a);

// multiset of irreducible factor degrees of a squarefree f mod p
std::vector<int> distinct_degree_type(const PolyP& f);

// full factorization into monic irreducibles with multiplicities;
// deterministic (equal-degree splitting sweeps shifts in a fixed order)
std::vector<std::pair<PolyP, int>> factor_mod_p(const PolyP& f);

// irreducibility of f over Q certified by f mod p irreducible for a prime
// p not dividing lc(f)*disc(f); scans p < bound
bool certify_irreducible(const Poly& f, uint64_t bound = 500);

struct DedekindShape {
    bool certified = false;                     // Dedekind criterion passed at p
    std::vector<std::pair<int, int>> shape;     // (ramification e, inertia f) sorted
};

// factorization shape of p in Q[x]/(f) when Z[theta] is p-maximal
DedekindShape dedekind_factorization_shape(const Poly& f, uint64_t p);

} // namespace dpl

#endif
