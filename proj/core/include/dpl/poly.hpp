#ifndef DPL_POLY_HPP
#define DPL_POLY_HPP

#include "dpl/linalg.hpp"

#include <optional>
#include <string>
#include <vector>

namespace dpl {

/*
 * Dense univariate polynomial with integer coefficients, constant term
 * first (the serialization order used by the scheme files).
 */
class Poly {
public:
    Poly() = default;
    explicit Poly(std::vector<Int> coeffs) : c_(std::move(coeffs)) { trim(); }

    // x^n + lower, from "lower" coefficients constant-first
    static Poly monic_from(std::vector<Int> lower, size_t degree);
    static Poly from_string(const std::string& s); // "c0 c1 c2 ..." constant first

    const std::vector<Int>& coeffs() const { return c_; }
    bool zero() const { return c_.empty(); }
    int degree() const { return static_cast<int>(c_.size()) - 1; }
    const Int& lead() const { return c_.back(); }
    Int coeff(size_t i) const { return i < c_.size() ? c_[i] : Int(0); }
    bool monic() const { return !c_.empty() && c_.back() == 1; }

    Int operator()(const Int& x) const;
    Rat operator()(const Rat& x) const;

    Poly derivative() const;
    Poly operator+(const Poly& o) const;
    Poly operator-(const Poly& o) const;
    Poly operator*(const Poly& o) const;
    Poly operator*(const Int& k) const;
    bool operator==(const Poly& o) const { return c_ == o.c_; }

    Int content() const;
    Poly primitive_part() const;

    // substitute x -> a*x + b
    Poly compose_linear(const Int& a, const Int& b) const;

    std::string to_string(const std::string& var = "x") const;

private:
    std::vector<Int> c_;
    void trim() {
        while (!c_.empty() && c_.back() == 0) c_.pop_back();
    }
};

// resultant of f and g by Sylvester determinant (exact)
Int resultant(const Poly& f, const Poly& g);

// disc(f) = (-1)^{n(n-1)/2} Res(f, f') / lc(f)
Int discriminant(const Poly& f);

// gcd over Q, returned monic-primitive over Z (subresultant-free, rational)
Poly gcd_q(const Poly& f, const Poly& g);

bool is_squarefree(const Poly& f);

// f divided by gcd(f, f'), cleared to integer coefficients
Poly squarefree_part(const Poly& f);

// all integer roots of an integer polynomial (monic inputs: all rational roots)
std::vector<Int> integer_roots(const Poly& f);

// --- real root machinery (Sturm) -------------------------------------------

struct RealRootWitness {
    bool exists = false;
    Rat lo, hi;               // isolating interval (lo == hi for exact roots)
};

int count_real_roots(const Poly& f);
RealRootWitness real_root_witness(const Poly& f);

// --- primes and integer helpers ---------------------------------------------

bool is_prime_u64(uint64_t n);
bool miller_rabin(const Int& n);
std::vector<uint64_t> primes_up_to(uint64_t bound);

// v_p of an integer / exact square test
int valuation(Int n, const Int& p);
bool is_perfect_square(const Int& n, Int* root = nullptr);

struct SquarefreeReport {
    bool squarefree = false;
    bool certified = false;   // full factorization found below the trial bound
    std::vector<std::pair<Int, int>> known_factors;
    Int cofactor = 1;         // unfactored part (certified prime or probable)
};

// trial division up to `bound`, then primality testing on the cofactor
SquarefreeReport squarefree_test(const Int& n, uint64_t bound = 1000000);

} // namespace dpl

#endif
