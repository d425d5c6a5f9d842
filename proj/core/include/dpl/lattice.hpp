#ifndef DPL_LATTICE_HPP
#define DPL_LATTICE_HPP

#include "dpl/permgroup.hpp"

#include <vector>

namespace dpl {

/*
 * Classification of the subgroups of a finite permutation group up to
 * conjugacy.
 *
 * Strategy: every subgroup H has a perfect solvable residual P (the limit
 * of its derived series) and a subnormal chain P = H_0 < H_1 < ... < H_k = H
 * with prime cyclic quotients, all lying inside N_G(P).  We therefore
 *   1. find all conjugacy classes of perfect subgroups by closing pairs of
 *      element-class representatives (every perfect group occurring at the
 *      orders we handle is 2-generated; the published class counts act as
 *      an end-to-end check of this),
 *   2. for each perfect class P, enumerate cyclic extensions layer by layer
 *      inside N_G(P), extending by prime-power elements ("zuppos") that
 *      normalize the current subgroup and power into it,
 *   3. reduce each layer by conjugacy, bucketing on invariant keys first.
 *
 * Normalizers come for free: N(H) is generated by exactly those zuppos of
 * the ambient group that normalize H.
 */

struct SubgroupClass {
    std::vector<Perm> gens;     // representative, reduced generating set
    uint64_t order = 1;
    uint64_t normalizer_order = 1;
    Int class_size;             // ambient order / normalizer order
    uint64_t seed_order = 1;    // order of the perfect residual
};

enum class Tier { A, B };

struct LatticeOptions {
    Tier tier = Tier::A;
    uint64_t tier_a_bound = 200000;   // ambient order admitted at tier A
    uint64_t tier_b_bound = 8000000;  // ambient order admitted at tier B
    uint64_t elem_key_bound = 5000;   // enumerate elements for keys up to this order
    bool verbose = false;

    uint64_t ambient_bound() const {
        return tier == Tier::A ? tier_a_bound : tier_b_bound;
    }
};

struct SubgroupClassList {
    size_t degree = 0;
    Int ambient_order;
    std::vector<SubgroupClass> classes;
};

SubgroupClassList subgroup_classes(const Group& g, const LatticeOptions& opt = {});

} // namespace dpl

#endif
