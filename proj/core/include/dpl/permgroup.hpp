#ifndef DPL_PERMGROUP_HPP
#define DPL_PERMGROUP_HPP

#include "dpl/perm.hpp"

#include <boost/multiprecision/cpp_int.hpp>

#include <functional>
#include <optional>
#include <vector>

namespace dpl {

using Int = boost::multiprecision::cpp_int;

class TierExceededError : public std::runtime_error {
public:
    explicit TierExceededError(const std::string& what) : std::runtime_error(what) {}
};

/*
 * Finite permutation group with a base and strong generating set.
 *
 * The stabilizer chain is built by a deterministic Schreier-Sims run over
 * the given generators; base points are chosen as the smallest moved point
 * at each level, so identical generator lists always yield identical chains.
 */
class Group {
public:
    struct Level {
        Point base = 0;
        std::vector<Perm> gens;           // strong generators active at this level
        std::vector<Point> orbit;         // orbit of base, in discovery order
        std::vector<int32_t> where;       // point -> index into orbit, or -1
        std::vector<Perm> trans;          // trans[i] maps base to orbit[i]
        std::vector<Perm> trans_inv;      // inverse transversal element
    };

    Group() = default;
    Group(size_t degree, std::vector<Perm> generators);

    static Group trivial(size_t degree) { return Group(degree, {}); }
    static Group symmetric(size_t degree);

    size_t degree() const { return degree_; }
    const std::vector<Perm>& generators() const { return gens_; }
    const std::vector<Level>& chain() const { return chain_; }

    const Int& order() const { return order_; }
    uint64_t order_u64() const;
    bool is_trivial() const { return order_ == 1; }

    bool contains(const Perm& g) const;

    // residue of g sifted through the chain (identity iff g in group)
    Perm sift(const Perm& g) const;

    // adds a generator and re-closes the chain; no-op when already contained
    void extend(const Perm& g);

    // --- orbits on points -------------------------------------------------
    std::vector<std::vector<Point>> orbits() const;
    std::vector<int32_t> orbit_ids() const;       // point -> orbit index
    std::vector<Point> orbit_of(Point x) const;
    bool is_transitive() const;
    std::vector<Point> fixed_points() const;      // points in singleton orbits

    // --- structure --------------------------------------------------------
    bool is_abelian() const;
    bool is_cyclic() const;
    Group derived_subgroup() const;
    bool is_perfect() const;
    bool is_solvable() const;

    // deterministic enumeration of all elements (throws TierExceededError
    // beyond `bound`); callback may return false to stop early
    void for_each_element(const std::function<bool(const Perm&)>& f,
                          uint64_t bound = UINT64_MAX) const;

    std::vector<Perm> elements(uint64_t bound = 1u << 22) const;

    // sorted multiset hash over all elements' cycle types; requires
    // order() <= bound, otherwise returns nullopt
    std::optional<uint64_t> element_cycle_hash(uint64_t bound) const;

    // reduce to a small generating set (sift-filtered); keeps the group equal
    std::vector<Perm> small_generating_set() const;

private:
    size_t degree_ = 0;
    std::vector<Perm> gens_;
    std::vector<Level> chain_;
    Int order_ = 1;

    void schreier_sims(const std::vector<Point>* preferred_base = nullptr);
    void extend_level(size_t lvl, const Perm& g,
                      const std::vector<Point>* preferred_base);
    void close_orbit(size_t lvl, const std::vector<Point>* preferred_base);
    void recompute_order();
};

// --- free functions on groups ----------------------------------------------

struct ConjClass {
    Perm rep;
    uint64_t size = 0;
};

// complete list of element conjugacy classes; deterministic order
// (by cycle type, then first-found); requires order <= bound
std::vector<ConjClass> element_conjugacy_classes(const Group& g, uint64_t bound = 8000000);

// orbit of a set of points, orbit of pairs, generic orbit machinery
std::vector<int32_t> pair_orbit_ids(const std::vector<Perm>& gens, size_t n);

// centralizer of x in g via orbit-stabilizer on the conjugation action
Group centralizer(const Group& g, const Perm& x, uint64_t class_size_bound = 16000000);

} // namespace dpl

#endif
