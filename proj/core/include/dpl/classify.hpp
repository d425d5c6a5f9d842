#ifndef DPL_CLASSIFY_HPP
#define DPL_CLASSIFY_HPP

#include "dpl/lattice.hpp"
#include "dpl/picard.hpp"

#include <string>
#include <vector>

namespace dpl::classify {

/*
 * The fixed-point criterion: a subgroup of Aut(G_d), acting as the Galois
 * group of the splitting field on the lines, produces a surface with lines
 * over almost all completions but no rational line exactly when every
 * conjugacy class of the subgroup fixes a vertex while the subgroup as a
 * whole fixes none.
 */
struct CriterionReport {
    uint64_t order = 1;
    Int class_size;
    uint64_t normalizer_order = 1;
    bool transitive = false;
    bool cyclic = false;
    bool has_global_fixed_point = false;
    bool every_element_fixes_a_vertex = false;
    bool satisfies_criterion = false;
    bool solvable = true;
    std::vector<uint64_t> orbit_type; // sorted ascending
    std::vector<Perm> gens;
};

CriterionReport criterion(const Group& gamma, size_t expected_degree);

struct DegreeTable {
    int d = 0;
    uint64_t classes = 0;
    uint64_t transitive = 0;
    uint64_t cyclic = 0;
    uint64_t fixed_point = 0;
    uint64_t criterion = 0;
};

struct Classification {
    int d = 0;
    picard::LineConfiguration lines;
    std::vector<CriterionReport> reports; // one per subgroup class
    DegreeTable table() const;
};

// full classification of the W(E_{9-d}) action on G_d; tier A suffices for
// d >= 3, degrees 2 and 1 need tier B
Classification classify_degree(int d, const LatticeOptions& opt = {});

// published values of the degree 1..5 classification tables, for --check
DegreeTable expected_table(int d);
bool has_expected_table(int d);

struct ClosedFormVerdict {
    int d = 0;
    bool hasse_principle_holds = false;
    bool recomputed = false;  // true when re-derived from the graph
    uint64_t criterion_classes = 0;
    std::string reason;
};

// d in {6,7}: recomputed from Aut(G_d); d in {8,9}: recorded classical facts
ClosedFormVerdict closed_form_answer(int d);

// criterion classes with the given orbit type
std::vector<size_t> find_orbit_type(const Classification& c,
                                    const std::vector<uint64_t>& orbit_type);

// does the class have an orbit of this size whose vertices are pairwise
// non-adjacent (skew lines)
bool has_skew_orbit_of_size(const Classification& c, size_t report_idx, uint64_t size);

struct SolvableSplit {
    uint64_t solvable = 0;
    uint64_t non_solvable = 0;
};

SolvableSplit solvable_split(const Classification& c);

// isomorphism-type label for small groups occurring in the named examples
// ("V4", "A4", "D5", "F20", "S5", "A5", "A5xC2", ...); empty when unknown
std::string small_group_label(const Group& g);

} // namespace dpl::classify

#endif
