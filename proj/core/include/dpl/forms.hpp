#ifndef DPL_FORMS_HPP
#define DPL_FORMS_HPP

#include "dpl/linalg.hpp"

#include <array>
#include <cstdint>
#include <string>
#include <vector>

namespace dpl::geom {

/*
 * Dense homogeneous form of fixed degree in 3 or 4 variables with rational
 * coefficients, indexed by exponent tuples in lexicographic order.
 */
struct Form {
    int vars = 3;
    int deg = 0;
    std::vector<Rat> c;

    Form() = default;
    Form(int v, int d) : vars(v), deg(d), c(dim(v, d), Rat(0)) {}

    static size_t dim(int vars, int deg);
    static const std::vector<std::array<int, 4>>& exponents(int vars, int deg);
    static size_t index_of(int vars, int deg, const std::array<int, 4>& e);

    Rat& coeff(const std::array<int, 4>& e) { return c[index_of(vars, deg, e)]; }
    const Rat& coeff(const std::array<int, 4>& e) const { return c[index_of(vars, deg, e)]; }

    bool zero() const {
        for (const Rat& x : c)
            if (x != 0) return false;
        return true;
    }

    Form operator+(const Form& o) const;
    Form operator-(const Form& o) const;
    Form operator*(const Form& o) const;
    Form scaled(const Rat& k) const;

    Form partial(int var) const;       // derivative, degree drops by one
    Form substitute_zero(int var) const; // set one variable to 0 (same indexing, vars kept)

    // divide by a single variable; throws when not divisible
    Form divide_by_var(int var) const;

    Rat evaluate(const std::vector<Rat>& xs) const;

    // integer model: coefficients cleared to coprime integers
    std::vector<Int> integer_coeffs() const; // throws if any denominator remains after clearing
    Form primitive_integer() const;          // cleared and divided by content

    std::string to_string(const std::vector<std::string>& names) const;
};

// mod-p evaluation table of a form with integer-cleared coefficients
struct FormModP {
    int vars;
    int deg;
    uint64_t p;
    std::vector<uint64_t> c; // coefficient per exponent tuple
    std::vector<std::array<int, 4>> exps;

    static FormModP reduce(const Form& f, uint64_t p);
    uint64_t evaluate(const std::array<uint64_t, 4>& xs) const;
};

} // namespace dpl::geom

#endif
