#ifndef DPL_CONJUGACY_HPP
#define DPL_CONJUGACY_HPP

#include "dpl/permgroup.hpp"

#include <optional>

namespace dpl {

/*
 * Backtrack search for an ambient-group element conjugating one subgroup
 * onto another.  Candidates are pruned by conjugation-invariant point and
 * pair colourings derived from the subgroups' orbit and orbital structure;
 * surviving leaves are verified exactly, so the answer is never heuristic.
 */
std::optional<Perm> subgroup_conjugator(const Group& ambient, const Group& h1, const Group& h2);

bool is_conjugate_subgroup(const Group& ambient, const Group& h1, const Group& h2);

// conjugation-invariant signature of the action of h on points; equal
// signatures are a necessary condition for conjugacy in any ambient group
uint64_t action_signature(const Group& h);

} // namespace dpl

#endif
