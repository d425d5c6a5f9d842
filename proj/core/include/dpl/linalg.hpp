#ifndef DPL_LINALG_HPP
#define DPL_LINALG_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <vector>

namespace dpl {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

struct IntMat {
    size_t rows = 0, cols = 0;
    std::vector<Int> a;

    IntMat() = default;
    IntMat(size_t r, size_t c) : rows(r), cols(c), a(r * c) {}

    Int& at(size_t i, size_t j) { return a[i * cols + j]; }
    const Int& at(size_t i, size_t j) const { return a[i * cols + j]; }
};

// determinant by fraction-free (Bareiss) elimination
Int bareiss_determinant(IntMat m);

// rank over Q by fraction-free elimination
size_t bareiss_rank(IntMat m);

// basis of the right kernel over Q, cleared to primitive integer vectors;
// deterministic (free variables in column order, each basis vector primitive
// with positive leading entry)
std::vector<std::vector<Int>> nullspace(const IntMat& m);

// divide a vector by the gcd of its entries and normalize the sign of the
// first non-zero entry to be positive
void make_primitive(std::vector<Int>& v);

} // namespace dpl

#endif
