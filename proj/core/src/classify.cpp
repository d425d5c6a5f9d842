#include "dpl/classify.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace dpl::classify {

CriterionReport criterion(const Group& gamma, size_t expected_degree) {
    if (gamma.degree() != expected_degree)
        throw std::invalid_argument("criterion: group degree does not match vertex count");

    CriterionReport r;
    r.order = gamma.order_u64();
    r.gens = gamma.generators();

    auto orbs = gamma.orbits();
    r.orbit_type.clear();
    for (auto& o : orbs) r.orbit_type.push_back(o.size());
    std::sort(r.orbit_type.begin(), r.orbit_type.end());

    r.transitive = orbs.size() == 1 && gamma.degree() > 1;
    if (gamma.degree() == 1) r.transitive = true;
    r.cyclic = gamma.is_cyclic();
    r.has_global_fixed_point = !r.orbit_type.empty() && r.orbit_type.front() == 1;

    if (r.has_global_fixed_point) {
        r.every_element_fixes_a_vertex = true;
    } else if (r.transitive) {
        // Jordan: a transitive group on >= 2 points has a fixed-point-free element
        r.every_element_fixes_a_vertex = false;
    } else {
        bool all_fix = true;
        gamma.for_each_element([&](const Perm& p) {
            if (p.count_fixed() == 0) {
                all_fix = false;
                return false;
            }
            return true;
        });
        r.every_element_fixes_a_vertex = all_fix;
    }
    r.satisfies_criterion = r.every_element_fixes_a_vertex && !r.has_global_fixed_point;
    r.solvable = r.cyclic || gamma.is_abelian() || gamma.is_solvable();
    return r;
}

Classification classify_degree(int d, const LatticeOptions& opt) {
    Classification c;
    c.d = d;
    c.lines = picard::enumerate_lines(d);
    Group w = picard::weyl_group(d, c.lines);
    auto cls = subgroup_classes(w, opt);
    c.reports.reserve(cls.classes.size());
    for (auto& sc : cls.classes) {
        Group h(w.degree(), sc.gens);
        CriterionReport r = criterion(h, c.lines.size());
        r.class_size = sc.class_size;
        r.normalizer_order = sc.normalizer_order;
        c.reports.push_back(std::move(r));
    }
    return c;
}

DegreeTable Classification::table() const {
    DegreeTable t;
    t.d = d;
    t.classes = reports.size();
    for (const auto& r : reports) {
        if (r.transitive) ++t.transitive;
        if (r.cyclic) ++t.cyclic;
        if (r.has_global_fixed_point) ++t.fixed_point;
        if (r.satisfies_criterion) ++t.criterion;
    }
    return t;
}

bool has_expected_table(int d) { return d >= 1 && d <= 5; }

DegreeTable expected_table(int d) {
    DegreeTable t;
    t.d = d;
    switch (d) {
        case 5: t.classes = 19;    t.transitive = 3;  t.cyclic = 7;   t.fixed_point = 9;    t.criterion = 2;    break;
        case 4: t.classes = 197;   t.transitive = 51; t.cyclic = 18;  t.fixed_point = 19;   t.criterion = 0;    break;
        case 3: t.classes = 350;   t.transitive = 25; t.cyclic = 25;  t.fixed_point = 172;  t.criterion = 3;    break;
        case 2: t.classes = 8074;  t.transitive = 32; t.cyclic = 60;  t.fixed_point = 350;  t.criterion = 60;   break;
        case 1: t.classes = 62092; t.transitive = 60; t.cyclic = 112; t.fixed_point = 7735; t.criterion = 8742; break;
        default: throw std::invalid_argument("no published table for degree " + std::to_string(d));
    }
    return t;
}

ClosedFormVerdict closed_form_answer(int d) {
    ClosedFormVerdict v;
    v.d = d;
    switch (d) {
        case 9:
            v.hasse_principle_holds = true;
            v.recomputed = false;
            v.reason = "the scheme of lines is itself a degree-9 del Pezzo surface; "
                       "these satisfy the Hasse principle (Chatelet)";
            return v;
        case 8:
            v.hasse_principle_holds = false;
            v.recomputed = false;
            v.reason = "non-quadric twists carry a single line, hence a rational one; "
                       "products of two pointless conics that are jointly soluble "
                       "everywhere give counter-examples among quadric twists";
            return v;
        case 7:
        case 6: {
            LatticeOptions opt;
            Classification c = classify_degree(d, opt);
            DegreeTable t = c.table();
            v.criterion_classes = t.criterion;
            v.hasse_principle_holds = t.criterion == 0;
            v.recomputed = true;
            v.reason = d == 7 ? "Aut(G_7) fixes the middle vertex of the path"
                              : "no subgroup of Aut(G_6) passes the fixed-point criterion";
            return v;
        }
        default:
            throw std::invalid_argument("closed_form_answer: degree must be 6..9");
    }
}

std::vector<size_t> find_orbit_type(const Classification& c,
                                    const std::vector<uint64_t>& orbit_type) {
    std::vector<uint64_t> want = orbit_type;
    std::sort(want.begin(), want.end());
    std::vector<size_t> hits;
    for (size_t i = 0; i < c.reports.size(); ++i) {
        if (!c.reports[i].satisfies_criterion) continue;
        if (c.reports[i].orbit_type == want) hits.push_back(i);
    }
    return hits;
}

bool has_skew_orbit_of_size(const Classification& c, size_t report_idx, uint64_t size) {
    const auto& rep = c.reports.at(report_idx);
    Group h(c.lines.size(), rep.gens);
    for (const auto& orb : h.orbits()) {
        if (orb.size() != size) continue;
        bool skew = true;
        for (size_t i = 0; i < orb.size() && skew; ++i)
            for (size_t j = i + 1; j < orb.size() && skew; ++j)
                if (c.lines.mult[orb[i]][orb[j]] != 0) skew = false;
        if (skew) return true;
    }
    return false;
}

SolvableSplit solvable_split(const Classification& c) {
    SolvableSplit s;
    for (const auto& r : c.reports) {
        if (!r.satisfies_criterion) continue;
        if (r.solvable)
            ++s.solvable;
        else
            ++s.non_solvable;
    }
    return s;
}

std::string small_group_label(const Group& g) {
    uint64_t o = g.order_u64();
    if (o > 200000) return {};
    std::map<uint64_t, uint64_t> hist; // element order -> count
    g.for_each_element([&](const Perm& p) {
        ++hist[p.order()];
        return true;
    }, 200000);
    auto has = [&](uint64_t k) { return hist.count(k) != 0; };
    bool ab = g.is_abelian();

    switch (o) {
        case 1: return "1";
        case 2: return "C2";
        case 3: return "C3";
        case 4: return g.is_cyclic() ? "C4" : "V4";
        case 5: return "C5";
        case 6: return ab ? "C6" : "S3";
        case 10: return ab ? "C10" : "D5";
        case 12:
            if (ab) return g.is_cyclic() ? "C12" : "C2xC6";
            if (!has(6) && !has(4)) return "A4";
            if (has(6) && !has(4)) return "D6";
            return "Dic3";
        case 20:
            if (ab) return g.is_cyclic() ? "C20" : "C2xC10";
            if (has(4) && hist[2] == 5) return "F20";
            if (has(4)) return "Dic5";
            return "D10";
        case 24:
            if (!ab && has(4) && !has(6) && !has(12) && !has(8)) return "S4";
            return {};
        case 60:
            if (g.is_perfect()) return "A5";
            return {};
        case 120:
            if (has(10) && !has(4)) return "A5xC2";
            if (has(4) && !has(10) && !has(12)) return "S5";
            if (hist[2] == 1) return "SL(2,5)";
            return {};
        default: return {};
    }
}

} // namespace dpl::classify
