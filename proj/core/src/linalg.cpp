#include "dpl/linalg.hpp"

#include <stdexcept>

namespace dpl {

using boost::multiprecision::gcd;

Int bareiss_determinant(IntMat m) {
    if (m.rows != m.cols) throw std::invalid_argument("determinant of non-square matrix");
    const size_t n = m.rows;
    if (n == 0) return 1;
    Int prev = 1;
    int sign = 1;
    for (size_t k = 0; k + 1 < n; ++k) {
        if (m.at(k, k) == 0) {
            size_t piv = k + 1;
            while (piv < n && m.at(piv, k) == 0) ++piv;
            if (piv == n) return 0;
            for (size_t j = 0; j < n; ++j) std::swap(m.at(k, j), m.at(piv, j));
            sign = -sign;
        }
        for (size_t i = k + 1; i < n; ++i) {
            for (size_t j = k + 1; j < n; ++j) {
                Int t = m.at(i, j) * m.at(k, k) - m.at(i, k) * m.at(k, j);
                m.at(i, j) = t / prev; // exact by Sylvester's identity
            }
            m.at(i, k) = 0;
        }
        prev = m.at(k, k);
    }
    return sign > 0 ? m.at(n - 1, n - 1) : -m.at(n - 1, n - 1);
}

namespace {

// fraction-free row echelon; returns pivot columns, matrix modified in place
std::vector<size_t> bareiss_echelon(IntMat& m) {
    std::vector<size_t> pivots;
    Int prev = 1;
    size_t row = 0;
    for (size_t col = 0; col < m.cols && row < m.rows; ++col) {
        size_t piv = row;
        while (piv < m.rows && m.at(piv, col) == 0) ++piv;
        if (piv == m.rows) continue;
        if (piv != row)
            for (size_t j = 0; j < m.cols; ++j) std::swap(m.at(row, j), m.at(piv, j));
        for (size_t i = row + 1; i < m.rows; ++i) {
            for (size_t j = col + 1; j < m.cols; ++j) {
                Int t = m.at(i, j) * m.at(row, col) - m.at(i, col) * m.at(row, j);
                m.at(i, j) = t / prev;
            }
            m.at(i, col) = 0;
        }
        prev = m.at(row, col);
        pivots.push_back(col);
        ++row;
    }
    return pivots;
}

} // namespace

size_t bareiss_rank(IntMat m) { return bareiss_echelon(m).size(); }

void make_primitive(std::vector<Int>& v) {
    Int g = 0;
    for (const Int& x : v) g = gcd(g, x);
    if (g == 0) return;
    for (Int& x : v) x /= g;
    for (const Int& x : v) {
        if (x == 0) continue;
        if (x < 0)
            for (Int& y : v) y = -y;
        break;
    }
}

std::vector<std::vector<Int>> nullspace(const IntMat& m) {
    IntMat e = m;
    auto pivots = bareiss_echelon(e);
    std::vector<int32_t> pivot_row(m.cols, -1);
    for (size_t r = 0; r < pivots.size(); ++r) pivot_row[pivots[r]] = static_cast<int32_t>(r);

    std::vector<std::vector<Int>> basis;
    for (size_t free_col = 0; free_col < m.cols; ++free_col) {
        if (pivot_row[free_col] >= 0) continue;
        std::vector<Rat> x(m.cols, Rat(0));
        x[free_col] = 1;
        // back-substitute through pivot rows bottom-up
        for (size_t r = pivots.size(); r-- > 0;) {
            size_t pc = pivots[r];
            if (pc > free_col) continue;
            Rat s = 0;
            for (size_t j = pc + 1; j < m.cols; ++j)
                if (x[j] != 0) s += Rat(e.at(r, j)) * x[j];
            x[pc] = -s / Rat(e.at(r, pc));
        }
        // clear denominators
        Int den = 1;
        for (const Rat& q : x) den = den / gcd(den, Int(denominator(q))) * Int(denominator(q));
        std::vector<Int> v(m.cols);
        for (size_t j = 0; j < m.cols; ++j)
            v[j] = Int(numerator(x[j])) * (den / Int(denominator(x[j])));
        make_primitive(v);
        basis.push_back(std::move(v));
    }
    return basis;
}

} // namespace dpl
