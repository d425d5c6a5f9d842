#ifndef DPL_PICARD_HPP
#define DPL_PICARD_HPP

#include "dpl/permgroup.hpp"

#include <array>
#include <iosfwd>
#include <vector>

namespace dpl::picard {

/*
 * Divisor classes in Z^{1,n} with the hyperbolic pairing
 *   <x,y> = x0*y0 - x1*y1 - ... - xn*yn.
 * A vector (a; b1,...,bn) stands for a*H - sum bi*Ei, so the i-th
 * exceptional class Ei is (0; ..., -1 at i, ...) and the anticanonical
 * class -K is (3; 1,...,1).
 */
struct DivisorClass {
    std::vector<int> coords; // length n+1

    int pair(const DivisorClass& other) const {
        long long s = static_cast<long long>(coords[0]) * other.coords[0];
        for (size_t i = 1; i < coords.size(); ++i)
            s -= static_cast<long long>(coords[i]) * other.coords[i];
        return static_cast<int>(s);
    }

    int self_intersection() const { return pair(*this); }

    // pairing with -K = (3; 1,...,1)
    int anticanonical_degree() const {
        long long s = 3ll * coords[0];
        for (size_t i = 1; i < coords.size(); ++i) s -= coords[i];
        return static_cast<int>(s);
    }

    bool operator==(const DivisorClass& o) const { return coords == o.coords; }
    bool operator<(const DivisorClass& o) const { return coords < o.coords; }
};

// reflection s_r(x) = x + <x,r>*r in a root r (<r,r> = -2)
DivisorClass reflect(const DivisorClass& x, const DivisorClass& root);

/*
 * The graph G_d: one vertex per line class (l^2 = -1, l.(-K) = 1) of the
 * degree-d Picard lattice Z^{1,9-d}, vertices in lexicographic order, with
 * the symmetric multiplicity matrix mult[i][j] = <l_i, l_j> off the
 * diagonal and -1 on it.
 */
struct LineConfiguration {
    int degree = 0;                       // d, 1..7
    std::vector<DivisorClass> vertices;
    std::vector<std::vector<int>> mult;

    size_t size() const { return vertices.size(); }

    int index_of(const DivisorClass& v) const; // -1 when absent

    // rank of mult over Q (certified by a mod-p lower bound against the
    // structural upper bound rank <= 10-d)
    int rank() const;

    int max_off_diagonal() const;

    void write_adjacency(std::ostream& os) const;
};

LineConfiguration enumerate_lines(int d);

// W(E_{9-d}) generated by the simple-root reflections, as permutations of
// the canonical vertex order of enumerate_lines(d)
Group weyl_group(int d);
Group weyl_group(int d, const LineConfiguration& lc);

// simple roots H-E1-E2-E3 (n >= 3) and Ei-E{i+1}
std::vector<DivisorClass> simple_roots(int n);

struct PairOrbitReport {
    std::vector<uint64_t> orbit_sizes;          // sorted ascending
    bool smallest_orbit_is_double_edges = false; // only meaningful for d <= 2
};

// orbits of weyl_group(d) on unordered vertex pairs
PairOrbitReport verify_pair_orbits(int d);

} // namespace dpl::picard

#endif
