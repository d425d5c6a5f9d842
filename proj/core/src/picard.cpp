#include "dpl/picard.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace dpl::picard {

DivisorClass reflect(const DivisorClass& x, const DivisorClass& root) {
    int c = x.pair(root);
    DivisorClass y = x;
    for (size_t i = 0; i < y.coords.size(); ++i) y.coords[i] += c * root.coords[i];
    return y;
}

namespace {

// enumerate integer vectors (b1..bn) with sum = s and sum of squares = q,
// |bi| <= bmax, in lexicographic order
void enum_b(int idx, int n, int s, int q, int bmax, std::vector<int>& acc,
            std::vector<DivisorClass>& out, int a) {
    if (idx == n) {
        if (s == 0 && q == 0) {
            DivisorClass dc;
            dc.coords.reserve(n + 1);
            dc.coords.push_back(a);
            for (int v : acc) dc.coords.push_back(v);
            out.push_back(std::move(dc));
        }
        return;
    }
    int k = n - idx - 1; // slots after this one
    for (int b = -bmax; b <= bmax; ++b) {
        int q2 = q - b * b;
        if (q2 < 0) continue;
        int s2 = s - b;
        // Cauchy-Schwarz: k slots can reach sum s2 only if s2^2 <= k*q2
        if (static_cast<long long>(s2) * s2 > static_cast<long long>(k) * q2) continue;
        acc.push_back(b);
        enum_b(idx + 1, n, s2, q2, bmax, acc, out, a);
        acc.pop_back();
    }
}

} // namespace

LineConfiguration enumerate_lines(int d) {
    if (d < 1 || d > 7) throw std::invalid_argument("enumerate_lines: degree must be 1..7");
    const int n = 9 - d;
    LineConfiguration lc;
    lc.degree = d;

    // l = (a; b), l^2 = a^2 - sum b^2 = -1, l.(-K) = 3a - sum b = 1;
    // |a| is bounded by 6 for n <= 8 (Cauchy-Schwarz against -K)
    for (int a = 0; a <= 6; ++a) {
        int s = 3 * a - 1;      // required sum of b
        int q = a * a + 1;      // required sum of b^2
        int bmax = static_cast<int>(std::sqrt(static_cast<double>(q)));
        std::vector<int> acc;
        enum_b(0, n, s, q, bmax, acc, lc.vertices, a);
    }
    std::sort(lc.vertices.begin(), lc.vertices.end());

    const size_t m = lc.vertices.size();
    lc.mult.assign(m, std::vector<int>(m, 0));
    for (size_t i = 0; i < m; ++i) {
        lc.mult[i][i] = -1;
        for (size_t j = i + 1; j < m; ++j) {
            int v = lc.vertices[i].pair(lc.vertices[j]);
            lc.mult[i][j] = v;
            lc.mult[j][i] = v;
        }
    }
    return lc;
}

int LineConfiguration::index_of(const DivisorClass& v) const {
    auto it = std::lower_bound(vertices.begin(), vertices.end(), v);
    if (it == vertices.end() || !(*it == v)) return -1;
    return static_cast<int>(it - vertices.begin());
}

int LineConfiguration::max_off_diagonal() const {
    int mx = 0;
    for (size_t i = 0; i < mult.size(); ++i)
        for (size_t j = i + 1; j < mult.size(); ++j) mx = std::max(mx, mult[i][j]);
    return mx;
}

int LineConfiguration::rank() const {
    // mult is the Gram matrix of vectors spanning a sublattice of Z^{1,n},
    // so rank <= n+1 = 10-d; a mod-p rank reaching that bound certifies it
    const int64_t p = 1000003;
    size_t m = mult.size();
    std::vector<std::vector<int64_t>> a(m, std::vector<int64_t>(m));
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j < m; ++j) a[i][j] = ((mult[i][j] % p) + p) % p;
    int rank = 0;
    size_t row = 0;
    for (size_t col = 0; col < m && row < m; ++col) {
        size_t piv = row;
        while (piv < m && a[piv][col] == 0) ++piv;
        if (piv == m) continue;
        std::swap(a[piv], a[row]);
        // modular inverse via Fermat
        int64_t inv = 1, base = a[row][col] % p, e = p - 2;
        while (e) {
            if (e & 1) inv = inv * base % p;
            base = base * base % p;
            e >>= 1;
        }
        for (size_t j = col; j < m; ++j) a[row][j] = a[row][j] * inv % p;
        for (size_t i = 0; i < m; ++i) {
            if (i == row || a[i][col] == 0) continue;
            int64_t f = a[i][col];
            for (size_t j = col; j < m; ++j)
                a[i][j] = ((a[i][j] - f * a[row][j]) % p + p) % p;
        }
        ++row;
        ++rank;
    }
    return rank;
}

void LineConfiguration::write_adjacency(std::ostream& os) const {
    os << degree << ' ' << vertices.size() << '\n';
    for (const auto& v : vertices) {
        for (size_t i = 0; i < v.coords.size(); ++i) {
            if (i) os << ' ';
            os << v.coords[i];
        }
        os << '\n';
    }
    for (const auto& row : mult) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i) os << ' ';
            os << row[i];
        }
        os << '\n';
    }
}

std::vector<DivisorClass> simple_roots(int n) {
    std::vector<DivisorClass> roots;
    if (n >= 3) {
        DivisorClass r;
        r.coords.assign(n + 1, 0);
        r.coords[0] = 1;
        r.coords[1] = r.coords[2] = r.coords[3] = 1;
        roots.push_back(std::move(r));
    }
    for (int i = 1; i < n; ++i) {
        DivisorClass r;
        r.coords.assign(n + 1, 0);
        r.coords[i] = -1;
        r.coords[i + 1] = 1;
        roots.push_back(std::move(r));
    }
    return roots;
}

Group weyl_group(int d, const LineConfiguration& lc) {
    const int n = 9 - d;
    const size_t m = lc.size();
    std::vector<Perm> gens;
    for (const DivisorClass& r : simple_roots(n)) {
        if (r.self_intersection() != -2)
            throw std::logic_error("simple root with wrong self-intersection");
        std::vector<Point> img(m);
        for (size_t i = 0; i < m; ++i) {
            int j = lc.index_of(reflect(lc.vertices[i], r));
            if (j < 0)
                throw std::logic_error("reflection does not permute the line classes");
            img[i] = static_cast<Point>(j);
        }
        gens.emplace_back(std::move(img));
    }
    return Group(m, std::move(gens));
}

Group weyl_group(int d) { return weyl_group(d, enumerate_lines(d)); }

PairOrbitReport verify_pair_orbits(int d) {
    LineConfiguration lc = enumerate_lines(d);
    Group w = weyl_group(d, lc);
    const size_t m = lc.size();
    auto ids = pair_orbit_ids(w.generators(), m);
    int32_t cnt = 0;
    for (int32_t v : ids) cnt = std::max(cnt, v + 1);
    std::vector<uint64_t> sizes(cnt, 0);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = i + 1; j < m; ++j) ++sizes[ids[i * m + j]];

    PairOrbitReport rep;
    rep.orbit_sizes = sizes;
    std::sort(rep.orbit_sizes.begin(), rep.orbit_sizes.end());

    // is the smallest orbit exactly the multiplicity-2 pairs?
    if (!sizes.empty()) {
        int32_t small_id = 0;
        for (int32_t k = 1; k < cnt; ++k)
            if (sizes[k] < sizes[small_id]) small_id = k;
        bool ok = true;
        for (size_t i = 0; i < m && ok; ++i)
            for (size_t j = i + 1; j < m && ok; ++j) {
                bool in_small = ids[i * m + j] == small_id;
                bool is_double = lc.mult[i][j] == 2;
                if (in_small != is_double) ok = false;
            }
        rep.smallest_orbit_is_double_edges = ok;
    }
    return rep;
}

} // namespace dpl::picard
