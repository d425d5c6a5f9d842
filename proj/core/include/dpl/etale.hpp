#ifndef DPL_ETALE_HPP
#define DPL_ETALE_HPP

#include "dpl/permgroup.hpp"
#include "dpl/poly.hpp"

#include <string>
#include <vector>

namespace dpl::etale {

class CertificateError : public std::runtime_error {
public:
    explicit CertificateError(const std::string& w) : std::runtime_error(w) {}
};

/*
 * Finite etale Q-scheme: a disjoint union of Spec Q[x]/(f_i) with the f_i
 * monic, squarefree, integral of degree >= 1.
 */
struct EtaleScheme {
    std::vector<Poly> polys;

    static EtaleScheme from_polys(std::vector<Poly> ps); // validates invariants
    int degree() const;

    std::string to_file_string() const;                  // one poly per line
    static EtaleScheme from_file_string(const std::string& text);
};

/*
 * A supplied Galois certificate: the splitting-field group acting on the
 * concatenated root set (component i occupies the block of its degree, in
 * order), plus every prime dividing the product of the discriminants.
 */
struct GaloisCertificate {
    Group group;
    std::vector<Int> ramified_primes;
};

struct SolubilityVerdict {
    bool real_place = false;
    Int p = 0;
    bool soluble = false;
    // p-adic witness: root mod p^precision with small derivative valuation
    bool has_padic_witness = false;
    Int padic_root = 0;
    Int modulus = 0;
    int derivative_valuation = 0;
    RealRootWitness real_witness;
};

// decision of Z_p-solubility for monic integral f by the p-adic root tree
SolubilityVerdict qp_soluble(const Poly& f, const Int& p, int precision = 24);

SolubilityVerdict real_soluble(const Poly& f);

// multiset of irreducible factor degrees of f mod p; requires p unramified
std::vector<int> frobenius_cycle_type(const Poly& f, uint64_t p);

// all rational (= integral, f monic) points of the scheme
std::vector<Int> rational_points(const EtaleScheme& x);

enum class HasseOutcome { FailsHP, HasRationalPoint, LocallyInsoluble };

struct RamifiedCheck {
    Int p;
    bool soluble = false;
    int component = -1;         // index of the soluble component
    SolubilityVerdict verdict;  // its witness
};

struct HasseReport {
    HasseOutcome outcome = HasseOutcome::LocallyInsoluble;
    bool failing_real = false;
    Int failing_p = 0;
    std::vector<Int> rational_pts;
    std::vector<RamifiedCheck> ramified_checks;
    int real_component = -1;
    SolubilityVerdict real_witness;
    bool every_class_fixes = false;
    bool real_ok = false;
    uint64_t sampled_primes = 0;
    // statistical completeness: every cycle type of the certified group was
    // observed among the sampled Frobenius types (reported, not required)
    bool observed_types_complete = false;
    std::string detail;
};

/*
 * fails_HP iff: no rational point, every conjugacy class of the certified
 * Galois group fixes a root (covers the real place and all primes not
 * dividing the discriminants), and each ramified prime and the real place
 * admit a point on some component.  Cycle types sampled up to sample_bound
 * must occur in the certificate group, otherwise CertificateError.
 */
HasseReport hasse_failure_check(const EtaleScheme& x, const GaloisCertificate& cert,
                                uint64_t sample_bound = 10000);

struct BiquadraticResult {
    EtaleScheme scheme;
    GaloisCertificate cert;
    HasseReport report;
};

// (x^2-p)(x^2-q)(x^2-pq) for p = 1 mod 8, q = 1 mod p, with verified verdict
BiquadraticResult biquadratic_scheme(const Int& p, const Int& q, uint64_t sample_bound = 10000);

struct DiscriminantReport {
    Int disc;
    SquarefreeReport squarefree;
};

DiscriminantReport poly_discriminant(const Poly& f);

// sum over pairs of roots, Prod_{i<j} (x - r_i - r_j); exact, monic input
Poly pair_sum_resolvent(const Poly& f);

// --- named examples ----------------------------------------------------------

struct NamedExample {
    std::string id;
    EtaleScheme scheme;
    GaloisCertificate cert;
    std::string description;
};

std::vector<std::string> named_example_ids();
NamedExample named_example(const std::string& id);

} // namespace dpl::etale

#endif
