#ifndef DPL_GEOM_HPP
#define DPL_GEOM_HPP

#include "dpl/forms.hpp"
#include "dpl/poly.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dpl::geom {

/*
 * A closed point of P^2 over Q: a monic irreducible g(t) of degree r and
 * coordinates (x(t) : y(t) : z(t)) with entries in Q[t]/(g).  Its conjugate
 * set consists of the r points obtained from the roots of g.
 */
struct ClosedPoint {
    Poly min_poly;                 // monic irreducible, degree r
    std::array<Poly, 3> coords;    // degree < r each

    int residue_degree() const { return min_poly.degree(); }
};

// --- general position ---------------------------------------------------------

struct GeneralPositionCertificate {
    bool in_general_position = false;
    uint64_t witness_prime = 0;    // split prime where the check passed
    int attempts = 0;
    std::string detail;
};

// checks the three classical conditions on the full conjugate set mod a
// prime that splits every minimal polynomial; a pass certifies general
// position in characteristic zero, a failure triggers a retry at the next
// admissible prime (up to max_attempts)
GeneralPositionCertificate certify_general_position(const std::vector<ClosedPoint>& pts,
                                                    uint64_t prime_bound = 100000,
                                                    int max_attempts = 5);

// single-prime version; nullopt when p is inadmissible (non-split or
// colliding reductions)
std::optional<bool> general_position_mod_p(const std::vector<ClosedPoint>& pts, uint64_t p);

// --- linear conditions and the anticanonical relation --------------------------

// linear conditions on ternary forms of degree m imposed by vanishing at the
// point (order 1) or vanishing doubly (order 2: all three partials)
IntMat vanishing_conditions(const ClosedPoint& pt, int m, int order);

IntMat vanishing_conditions(const std::vector<ClosedPoint>& pts, int m, int order);

struct AnticanonicalRelation {
    Form f2;          // ternary quadratic (integer coefficients)
    Form f4;          // ternary quartic (integer, after absorbing the s^2 scale)
    Int s_scale = 1;  // the relation found is s_scale*s^2 + F2*s + F4 = 0
};

// unique relation s^2 + f2(c0,c1,c2) s + f4(c0,c1,c2) = 0 in degree-12
// ternary forms; throws unless the solution space is exactly 1-dimensional
AnticanonicalRelation dp2_anticanonical_relation(const std::array<Form, 3>& cubics,
                                                 const Form& sextic);

// --- Geiser contraction ---------------------------------------------------------

using CubicSurfaceForm = Form; // vars = 4, deg = 3, variables (x0, x1, x2, w)

// from w^2 + f2 w + f4 = 0 with the two lines over {x0 = 0}, shift w by the
// value of one line and contract: x0 w^2 + f2' w + f3 = 0
CubicSurfaceForm geiser_contract(const Form& f2, const Form& f4);

// --- mod-p verification ----------------------------------------------------------

bool smoothness_mod_p(const CubicSurfaceForm& s, uint64_t p);

// exact number of F_p-rational lines on the reduction; throws on bad reduction
uint64_t count_lines_mod_p(const CubicSurfaceForm& s, uint64_t p);

// --- full construction pipeline ---------------------------------------------------

struct BuildReport {
    CubicSurfaceForm surface;          // integral, primitive
    GeneralPositionCertificate position;
    std::array<Form, 3> cubics;
    Form sextic;
    AnticanonicalRelation relation;
    std::vector<uint64_t> smooth_primes;      // three good primes certifying smoothness
};

// blow-up of the degree-2 point over Q(sqrt 5) and the degree-5 point over
// Q(p^{1/5}), then Geiser contraction; requires p = 1 mod 25, prime
BuildReport build_counterexample_cubic(const Int& p);

// the reference counter-example surface, with its fixed published equation
CubicSurfaceForm reference_surface_1_2();

// serialization: {"degree": d, "vars": v, "terms": {"e0,e1,e2,e3": coeff}}
std::string surface_to_json(const CubicSurfaceForm& s);
CubicSurfaceForm surface_from_json(const std::string& text);

// --- conic bundles ------------------------------------------------------------------

struct ConicBundleFibre {
    Rat t;                 // base point of the singular fibre
    Rat splitting_class;   // square class over which the fibre splits
    int class_tag = -1;    // 0,1,2 = matches a, b, ab; -1 otherwise
};

struct ConicBundleReport {
    std::vector<ConicBundleFibre> fibres; // exactly 6
    bool two_per_class = false;           // exactly 2 fibres split over each of
                                          // k(sqrt a), k(sqrt b), k(sqrt ab)
};

// degree-2 del Pezzo conic bundle  f(t)x^2 + g(t)y^2 + h(t)z^2 = 0 with
// f = a(t-13)(2-t), g = b(t+14)(3-t), h = (t+2)(t-11)
ConicBundleReport verify_conic_bundle_dp2(const Rat& a, const Rat& b);

// first place (prime below bound, or the real place) where no fibre splits;
// nullopt when every checked place has a split fibre
struct PlaceFailure {
    bool real = false;
    uint64_t p = 0;
};
std::optional<PlaceFailure> conic_bundle_insoluble_place(const Rat& a, const Rat& b,
                                                         uint64_t bound);

// quartic g with g(e1) = 1, g(e2) = a, g(e3) = b, g(e4) = ab (Lagrange + lambda*f)
std::vector<Rat> dp1_conic_bundle_g(const std::array<Rat, 4>& e, const Rat& lambda,
                                    const Rat& a, const Rat& b);

// --- pencils of quadrics --------------------------------------------------------------

struct PencilOfQuadrics {
    std::vector<std::vector<Rat>> q1, q2; // symmetric, odd size 2n+3
};

struct PencilDiscriminant {
    std::vector<Rat> coeffs;  // det(lambda Q1 + mu Q2) as poly in t = mu/lambda,
                              // degree 2n+3 as a binary form
    int form_degree = 0;
    bool separable = false;
};

PencilDiscriminant pencil_discriminant(const PencilOfQuadrics& pencil);

// --- square classes --------------------------------------------------------------------

bool is_rational_square(const Rat& q);
bool same_square_class(const Rat& a, const Rat& b);
// is q a square in Q_p (p = 0 means the real place)
bool is_padic_square(const Rat& q, uint64_t p);

} // namespace dpl::geom

#endif
