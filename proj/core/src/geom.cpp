#include "dpl/geom.hpp"
#include "dpl/polymod.hpp"

#include <json.hpp>

#include <algorithm>
#include <sstream>

namespace dpl::geom {

using boost::multiprecision::abs;
using boost::multiprecision::gcd;

namespace {

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = static_cast<uint64_t>(static_cast<unsigned __int128>(r) * a % p);
        a = static_cast<uint64_t>(static_cast<unsigned __int128>(a) * a % p);
        e >>= 1;
    }
    return r;
}

uint64_t inv_u64(uint64_t a, uint64_t p) { return powmod_u64(a, p - 2, p); }

// roots of f mod p (p small), with multiplicity ignored
std::vector<uint64_t> roots_mod_p(const Poly& f, uint64_t p) {
    std::vector<uint64_t> rs;
    for (uint64_t r = 0; r < p; ++r) {
        Int v = f(Int(r)) % Int(p);
        if (v == 0) rs.push_back(r);
    }
    return rs;
}

// determinant over F_p
uint64_t det_mod_p(std::vector<std::vector<uint64_t>> m, uint64_t p) {
    const size_t n = m.size();
    uint64_t det = 1;
    for (size_t k = 0; k < n; ++k) {
        size_t piv = k;
        while (piv < n && m[piv][k] == 0) ++piv;
        if (piv == n) return 0;
        if (piv != k) {
            std::swap(m[piv], m[k]);
            det = p - det;
        }
        det = static_cast<uint64_t>(static_cast<unsigned __int128>(det) * m[k][k] % p);
        uint64_t inv = inv_u64(m[k][k], p);
        for (size_t i = k + 1; i < n; ++i) {
            if (m[i][k] == 0) continue;
            uint64_t f = static_cast<uint64_t>(static_cast<unsigned __int128>(m[i][k]) * inv % p);
            for (size_t j = k; j < n; ++j) {
                uint64_t t = static_cast<uint64_t>(static_cast<unsigned __int128>(f) * m[k][j] % p);
                m[i][j] = (m[i][j] + p - t) % p;
            }
        }
    }
    return det % p;
}

struct Fp2Point {
    std::array<uint64_t, 3> x;
};

// reduce the conjugate set of the closed points mod p; nullopt when p is
// inadmissible (min_poly does not split simply, or reductions collide)
std::optional<std::vector<Fp2Point>> reduce_points(const std::vector<ClosedPoint>& pts,
                                                   uint64_t p) {
    std::vector<Fp2Point> out;
    for (const ClosedPoint& pt : pts) {
        auto rs = roots_mod_p(pt.min_poly, p);
        if (static_cast<int>(rs.size()) != pt.residue_degree()) return std::nullopt;
        // roots must be simple
        Poly der = pt.min_poly.derivative();
        for (uint64_t r : rs)
            if (der(Int(r)) % Int(p) == 0) return std::nullopt;
        for (uint64_t r : rs) {
            Fp2Point q;
            for (int c = 0; c < 3; ++c) {
                Int v = pt.coords[c](Int(r)) % Int(p);
                if (v < 0) v += p;
                q.x[c] = static_cast<uint64_t>(v);
            }
            if (q.x[0] == 0 && q.x[1] == 0 && q.x[2] == 0) return std::nullopt;
            // normalize: last nonzero coordinate = 1
            int lead = 2;
            while (q.x[lead] == 0) --lead;
            uint64_t inv = inv_u64(q.x[lead], p);
            for (int c = 0; c < 3; ++c)
                q.x[c] = static_cast<uint64_t>(static_cast<unsigned __int128>(q.x[c]) * inv % p);
            out.push_back(q);
        }
    }
    for (size_t i = 0; i < out.size(); ++i)
        for (size_t j = i + 1; j < out.size(); ++j)
            if (out[i].x == out[j].x) return std::nullopt;
    return out;
}

} // namespace

std::optional<bool> general_position_mod_p(const std::vector<ClosedPoint>& pts, uint64_t p) {
    size_t total = 0;
    for (const auto& pt : pts) total += pt.residue_degree();
    if (total > 8) throw std::invalid_argument("general position: more than 8 points");

    auto reduced = reduce_points(pts, p);
    if (!reduced) return std::nullopt;
    const auto& q = *reduced;
    const size_t n = q.size();

    // no three collinear
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j)
            for (size_t k = j + 1; k < n; ++k) {
                std::vector<std::vector<uint64_t>> m{
                    {q[i].x[0], q[i].x[1], q[i].x[2]},
                    {q[j].x[0], q[j].x[1], q[j].x[2]},
                    {q[k].x[0], q[k].x[1], q[k].x[2]}};
                if (det_mod_p(m, p) == 0) return false;
            }

    // no six on a conic
    auto conic_row = [&](const Fp2Point& a) {
        auto [x, y, z] = std::array<uint64_t, 3>{a.x[0], a.x[1], a.x[2]};
        auto mul = [&](uint64_t u, uint64_t v) {
            return static_cast<uint64_t>(static_cast<unsigned __int128>(u) * v % p);
        };
        return std::vector<uint64_t>{mul(x, x), mul(x, y), mul(y, y),
                                     mul(x, z), mul(y, z), mul(z, z)};
    };
    if (n >= 6) {
        std::vector<size_t> idx(n);
        for (size_t i = 0; i < n; ++i) idx[i] = i;
        std::vector<size_t> pick;
        std::function<bool(size_t, size_t)> rec = [&](size_t start, size_t need) -> bool {
            if (need == 0) {
                std::vector<std::vector<uint64_t>> m;
                for (size_t t : pick) m.push_back(conic_row(q[t]));
                return det_mod_p(m, p) == 0;
            }
            for (size_t i = start; i + need <= n + 1 && i < n; ++i) {
                pick.push_back(i);
                if (rec(i + 1, need - 1)) return true;
                pick.pop_back();
            }
            return false;
        };
        if (rec(0, 6)) return false;
    }

    // no eight on a cubic singular at one of them
    if (n == 8) {
        const auto& exps = Form::exponents(3, 3);
        auto cubic_row = [&](const Fp2Point& a) {
            std::vector<uint64_t> row(exps.size());
            for (size_t t = 0; t < exps.size(); ++t) {
                uint64_t v = 1;
                for (int c = 0; c < 3; ++c)
                    for (int k = 0; k < exps[t][c]; ++k)
                        v = static_cast<uint64_t>(static_cast<unsigned __int128>(v) * a.x[c] % p);
                row[t] = v;
            }
            return row;
        };
        auto partial_row = [&](const Fp2Point& a, int var) {
            std::vector<uint64_t> row(exps.size(), 0);
            for (size_t t = 0; t < exps.size(); ++t) {
                if (exps[t][var] == 0) continue;
                uint64_t v = exps[t][var] % p;
                for (int c = 0; c < 3; ++c) {
                    int e = exps[t][c] - (c == var ? 1 : 0);
                    for (int k = 0; k < e; ++k)
                        v = static_cast<uint64_t>(static_cast<unsigned __int128>(v) * a.x[c] % p);
                }
                row[t] = v;
            }
            return row;
        };
        for (size_t s = 0; s < n; ++s) {
            std::vector<std::vector<uint64_t>> m;
            for (size_t i = 0; i < n; ++i)
                if (i != s) m.push_back(cubic_row(q[i]));
            for (int var = 0; var < 3; ++var) m.push_back(partial_row(q[s], var));
            if (det_mod_p(m, p) == 0) return false;
        }
    }
    return true;
}

GeneralPositionCertificate certify_general_position(const std::vector<ClosedPoint>& pts,
                                                    uint64_t prime_bound, int max_attempts) {
    GeneralPositionCertificate cert;
    for (uint64_t p : primes_up_to(prime_bound)) {
        if (p < 5) continue;
        auto res = general_position_mod_p(pts, p);
        if (!res) continue;
        ++cert.attempts;
        if (*res) {
            cert.in_general_position = true;
            cert.witness_prime = p;
            cert.detail = "conditions verified over F_" + std::to_string(p);
            return cert;
        }
        if (cert.attempts >= max_attempts) {
            cert.detail = "degenerate at " + std::to_string(cert.attempts) +
                          " admissible primes; points are presumably not in general position";
            return cert;
        }
    }
    cert.detail = "no admissible split prime below " + std::to_string(prime_bound);
    return cert;
}

// --- vanishing conditions -------------------------------------------------------

namespace {

// a * b mod g, all integral, g monic
Poly polymul_mod(const Poly& a, const Poly& b, const Poly& g) {
    Poly prod = a * b;
    std::vector<Int> c = prod.coeffs();
    const auto& gd = g.coeffs();
    while (c.size() >= gd.size()) {
        Int lead = c.back();
        size_t off = c.size() - gd.size();
        for (size_t i = 0; i < gd.size(); ++i) c[off + i] -= lead * gd[i];
        while (!c.empty() && c.back() == 0) c.pop_back();
        if (c.size() < gd.size()) break;
    }
    return Poly(std::move(c));
}

} // namespace

IntMat vanishing_conditions(const ClosedPoint& pt, int m, int order) {
    if (order != 1 && order != 2) throw std::invalid_argument("vanishing order must be 1 or 2");
    const int r = pt.residue_degree();
    const auto& exps = Form::exponents(3, m);
    const size_t cols = exps.size();

    // powers of the coordinates mod g
    std::vector<std::vector<Poly>> pw(3);
    for (int c = 0; c < 3; ++c) {
        pw[c].resize(m + 1);
        pw[c][0] = Poly(std::vector<Int>{1});
        for (int k = 1; k <= m; ++k) pw[c][k] = polymul_mod(pw[c][k - 1], pt.coords[c], pt.min_poly);
    }
    auto monomial_at = [&](const std::array<int, 4>& e) {
        Poly v = pw[0][e[0]];
        v = polymul_mod(v, pw[1][e[1]], pt.min_poly);
        v = polymul_mod(v, pw[2][e[2]], pt.min_poly);
        return v;
    };

    size_t nrows = order == 1 ? static_cast<size_t>(r) : static_cast<size_t>(3 * r);
    IntMat mat(nrows, cols);
    for (size_t col = 0; col < cols; ++col) {
        if (order == 1) {
            Poly v = monomial_at(exps[col]);
            for (int i = 0; i < r; ++i) mat.at(i, col) = v.coeff(i);
        } else {
            for (int var = 0; var < 3; ++var) {
                if (exps[col][var] == 0) continue;
                std::array<int, 4> e = exps[col];
                int k = e[var];
                e[var] -= 1;
                Poly v = monomial_at(e);
                for (int i = 0; i < r; ++i) mat.at(var * r + i, col) = v.coeff(i) * k;
            }
        }
    }
    return mat;
}

IntMat vanishing_conditions(const std::vector<ClosedPoint>& pts, int m, int order) {
    std::vector<IntMat> blocks;
    size_t rows = 0;
    for (const auto& pt : pts) {
        blocks.push_back(vanishing_conditions(pt, m, order));
        rows += blocks.back().rows;
    }
    IntMat mat(rows, Form::dim(3, m));
    size_t at = 0;
    for (const auto& b : blocks) {
        for (size_t i = 0; i < b.rows; ++i)
            for (size_t j = 0; j < b.cols; ++j) mat.at(at + i, j) = b.at(i, j);
        at += b.rows;
    }
    return mat;
}

// --- the anticanonical relation ---------------------------------------------------

AnticanonicalRelation dp2_anticanonical_relation(const std::array<Form, 3>& cubics,
                                                 const Form& sextic) {
    for (const Form& c : cubics)
        if (c.vars != 3 || c.deg != 3) throw std::invalid_argument("cubics must be ternary");
    if (sextic.vars != 3 || sextic.deg != 6)
        throw std::invalid_argument("sextic expected");

    const auto& q_exps = Form::exponents(3, 2);  // 6 quadratic monomials in c
    const auto& f_exps = Form::exponents(3, 4);  // 15 quartic monomials in c
    const size_t rows = Form::dim(3, 12);        // 91
    const size_t cols = 1 + q_exps.size() + f_exps.size();

    auto c_monomial = [&](const std::array<int, 4>& e) {
        Form prod(3, 0);
        prod.c[0] = 1;
        for (int t = 0; t < 3; ++t)
            for (int k = 0; k < e[t]; ++k) prod = prod * cubics[t];
        return prod; // degree 3*(e0+e1+e2)
    };

    IntMat mat(rows, cols);
    auto put = [&](size_t col, const Form& f) {
        auto ic = f.integer_coeffs();
        for (size_t i = 0; i < ic.size(); ++i) mat.at(i, col) = ic[i];
    };
    put(0, sextic * sextic);
    for (size_t k = 0; k < q_exps.size(); ++k) put(1 + k, c_monomial(q_exps[k]) * sextic);
    for (size_t k = 0; k < f_exps.size(); ++k) put(1 + q_exps.size() + k, c_monomial(f_exps[k]));

    auto kernel = nullspace(mat);
    if (kernel.size() != 1)
        throw std::logic_error("anticanonical relation space has dimension " +
                               std::to_string(kernel.size()) + " (expected 1)");
    std::vector<Int> v = kernel[0];
    if (v[0] == 0) throw std::logic_error("relation degenerate: no s^2 term");
    if (v[0] < 0)
        for (Int& x : v) x = -x;

    AnticanonicalRelation rel;
    rel.s_scale = v[0];
    rel.f2 = Form(3, 2);
    for (size_t k = 0; k < q_exps.size(); ++k) rel.f2.c[k] = Rat(v[1 + k]);
    rel.f4 = Form(3, 4);
    for (size_t k = 0; k < f_exps.size(); ++k)
        rel.f4.c[k] = Rat(v[1 + q_exps.size() + k] * rel.s_scale);
    return rel;
}

// --- Geiser contraction -------------------------------------------------------------

namespace {

// binary form of degree d in (x1, x2): coefficient of x1^i x2^(d-i) at index i
std::vector<Rat> restrict_x0(const Form& f) {
    std::vector<Rat> out(f.deg + 1, Rat(0));
    const auto& exps = Form::exponents(f.vars, f.deg);
    for (size_t t = 0; t < f.c.size(); ++t) {
        if (f.c[t] == 0) continue;
        if (exps[t][0] != 0) continue;
        out[exps[t][1]] += f.c[t];
    }
    return out;
}

std::optional<std::vector<Rat>> binary_sqrt(const std::vector<Rat>& d) {
    // d has degree 4 slots (indices 0..4); find r (indices 0..2) with r^2 = d
    int top = -1;
    for (int i = 4; i >= 0; --i)
        if (d[i] != 0) {
            top = i;
            break;
        }
    if (top < 0) return std::nullopt; // identically zero
    if (top % 2 != 0) return std::nullopt;
    int rt = top / 2;
    // rational square root of the leading coefficient
    Int num = Int(numerator(d[top])), den = Int(denominator(d[top]));
    Int rn, rd;
    if (num < 0 || !is_perfect_square(num, &rn) || !is_perfect_square(den, &rd))
        return std::nullopt;
    std::vector<Rat> r(3, Rat(0));
    r[rt] = Rat(rn) / Rat(rd);
    for (int i = rt - 1; i >= 0; --i) {
        // match the coefficient of x1^(rt+i): isolate the 2 r[i] r[rt] term
        Rat s = 0;
        for (int a = 0; a <= rt; ++a) {
            int b = rt + i - a;
            if (b < 0 || b > rt) continue;
            if ((a == i && b == rt) || (a == rt && b == i)) continue;
            s += r[a] * r[b];
        }
        r[i] = (d[rt + i] - s) / (2 * r[rt]);
    }
    // verify
    std::vector<Rat> sq(5, Rat(0));
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b) sq[a + b] += r[a] * r[b];
    for (int i = 0; i <= 4; ++i)
        if (sq[i] != d[i]) return std::nullopt;
    // canonical sign: first nonzero coefficient positive
    for (int i = 2; i >= 0; --i) {
        if (r[i] == 0) continue;
        if (r[i] < 0)
            for (Rat& x : r) x = -x;
        break;
    }
    return r;
}

Form ternary_from_binary(const std::vector<Rat>& b, int deg) {
    Form f(3, deg);
    for (int i = 0; i < static_cast<int>(b.size()); ++i) {
        if (b[i] == 0) continue;
        f.coeff({0, i, deg - i, 0}) = b[i];
    }
    return f;
}

} // namespace

CubicSurfaceForm geiser_contract(const Form& f2, const Form& f4) {
    if (f2.vars != 3 || f2.deg != 2 || f4.vars != 3 || f4.deg != 4)
        throw std::invalid_argument("geiser_contract expects ternary forms of degrees 2 and 4");

    // restriction to x0 = 0 and the discriminant of w^2 + f2 w + f4 there
    auto b2 = restrict_x0(f2);
    auto b4 = restrict_x0(f4);
    std::vector<Rat> disc(5, Rat(0));
    for (int a = 0; a <= 2; ++a)
        for (int b = 0; b <= 2; ++b) disc[a + b] += b2[a] * b2[b];
    for (int i = 0; i <= 4; ++i) disc[i] -= 4 * b4[i];

    auto root = binary_sqrt(disc);
    if (!root)
        throw std::invalid_argument(
            "geiser_contract: w^2 + f2 w + f4 does not split into two rational lines over x0=0");

    // shift w by one line value q = (r - f2|_{x0=0})/2
    std::vector<Rat> qb(3, Rat(0));
    for (int i = 0; i <= 2; ++i) qb[i] = ((*root)[i] - b2[i]) / 2;
    Form q = ternary_from_binary(qb, 2);

    Form f2p = f2 + q.scaled(2);
    Form f4p = f4 + f2 * q + q * q;

    // x0 must divide the shifted quartic
    {
        const auto& exps = Form::exponents(3, 4);
        for (size_t t = 0; t < f4p.c.size(); ++t)
            if (f4p.c[t] != 0 && exps[t][0] == 0)
                throw std::invalid_argument("geiser_contract: shifted f4 not divisible by x0");
    }
    Form f3 = f4p.divide_by_var(0);

    // assemble x0 w^2 + f2' w + f3 in (x0, x1, x2, w)
    Form surf(4, 3);
    surf.coeff({1, 0, 0, 2}) = 1;
    {
        const auto& e2 = Form::exponents(3, 2);
        for (size_t t = 0; t < f2p.c.size(); ++t) {
            if (f2p.c[t] == 0) continue;
            surf.coeff({e2[t][0], e2[t][1], e2[t][2], 1}) += f2p.c[t];
        }
        const auto& e3 = Form::exponents(3, 3);
        for (size_t t = 0; t < f3.c.size(); ++t) {
            if (f3.c[t] == 0) continue;
            surf.coeff({e3[t][0], e3[t][1], e3[t][2], 0}) += f3.c[t];
        }
    }
    return surf.primitive_integer();
}

// --- mod-p checks ----------------------------------------------------------------------

bool smoothness_mod_p(const CubicSurfaceForm& s, uint64_t p) {
    if (s.vars != 4 || s.deg != 3) throw std::invalid_argument("cubic surface expected");
    FormModP f = FormModP::reduce(s.primitive_integer(), p);
    std::array<FormModP, 4> grad;
    for (int v = 0; v < 4; ++v) grad[v] = FormModP::reduce(s.partial(v), p);

    auto singular_at = [&](const std::array<uint64_t, 4>& x) {
        if (f.evaluate(x) != 0) return false;
        for (int v = 0; v < 4; ++v)
            if (grad[v].evaluate(x) != 0) return false;
        return true;
    };

    // charts by leading 1
    std::array<uint64_t, 4> x{};
    for (int lead = 0; lead < 4; ++lead) {
        std::vector<int> free;
        for (int v = lead + 1; v < 4; ++v) free.push_back(v);
        for (int v = 0; v < lead; ++v) x[v] = 0;
        x[lead] = 1;
        size_t count = 1;
        for (size_t i = 0; i < free.size(); ++i) count *= p;
        for (size_t idx = 0; idx < count; ++idx) {
            size_t rest = idx;
            for (int v : free) {
                x[v] = rest % p;
                rest /= p;
            }
            if (singular_at(x)) return false;
        }
    }
    return true;
}

uint64_t count_lines_mod_p(const CubicSurfaceForm& s, uint64_t p) {
    if (!smoothness_mod_p(s, p))
        throw std::invalid_argument("bad reduction at p = " + std::to_string(p));
    FormModP f = FormModP::reduce(s.primitive_integer(), p);

    auto eval = [&](const std::array<uint64_t, 4>& x) { return f.evaluate(x); };
    auto line_in_surface = [&](const std::array<uint64_t, 4>& u,
                               const std::array<uint64_t, 4>& v) {
        if (eval(u) != 0 || eval(v) != 0) return false;
        // a binary cubic vanishing at >= 4 projective points vanishes
        for (uint64_t t : {uint64_t(1), p - 1}) {
            std::array<uint64_t, 4> w;
            for (int i = 0; i < 4; ++i)
                w[i] = (u[i] + t * v[i]) % p;
            if (eval(w) != 0) return false;
        }
        if (p < 5) {
            for (uint64_t t = 2; t < p - 1; ++t) {
                std::array<uint64_t, 4> w;
                for (int i = 0; i < 4; ++i) w[i] = (u[i] + t * v[i]) % p;
                if (eval(w) != 0) return false;
            }
        }
        return true;
    };

    uint64_t total = 0;
    // RREF charts: pivot columns a < b; row1 = e_a + free entries at non-pivot
    // columns > a, row2 = e_b + free entries at non-pivot columns > b
    for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) {
            std::vector<int> free1, free2;
            for (int v = 0; v < 4; ++v) {
                if (v == a || v == b) continue;
                if (v > a) free1.push_back(v);
                if (v > b) free2.push_back(v);
            }
            // enumerate zero sets of f on each row family independently
            auto zeros = [&](int pivot, const std::vector<int>& free,
                             int other_pivot) {
                std::vector<std::array<uint64_t, 4>> zs;
                size_t count = 1;
                for (size_t i = 0; i < free.size(); ++i) count *= p;
                std::array<uint64_t, 4> x{};
                for (size_t idx = 0; idx < count; ++idx) {
                    x = {0, 0, 0, 0};
                    x[pivot] = 1;
                    x[other_pivot] = 0;
                    size_t rest = idx;
                    for (int v : free) {
                        x[v] = rest % p;
                        rest /= p;
                    }
                    if (eval(x) == 0) zs.push_back(x);
                }
                return zs;
            };
            auto z1 = zeros(a, free1, b);
            auto z2 = zeros(b, free2, a);
            for (const auto& u : z1)
                for (const auto& v : z2)
                    if (line_in_surface(u, v)) ++total;
        }
    }
    return total;
}

// --- build pipeline ----------------------------------------------------------------------

namespace {

Form form_from_int_vector(const std::vector<Int>& v, int vars, int deg) {
    Form f(vars, deg);
    for (size_t i = 0; i < v.size(); ++i) f.c[i] = Rat(v[i]);
    return f;
}

std::vector<Int> form_to_int_vector(const Form& f) { return f.integer_coeffs(); }

// rank of a stack of integer coefficient vectors
size_t span_rank(const std::vector<std::vector<Int>>& vs) {
    if (vs.empty()) return 0;
    IntMat m(vs.size(), vs[0].size());
    for (size_t i = 0; i < vs.size(); ++i)
        for (size_t j = 0; j < vs[i].size(); ++j) m.at(i, j) = vs[i][j];
    return bareiss_rank(std::move(m));
}

bool satisfies_conditions(const IntMat& cond, const std::vector<Int>& v) {
    for (size_t i = 0; i < cond.rows; ++i) {
        Int s = 0;
        for (size_t j = 0; j < cond.cols; ++j) s += cond.at(i, j) * v[j];
        if (s != 0) return false;
    }
    return true;
}

} // namespace

BuildReport build_counterexample_cubic(const Int& p) {
    if (!miller_rabin(p)) throw std::invalid_argument("build: p must be prime");
    if (p % 25 != 1) throw std::invalid_argument("build: p must be 1 mod 25, got " + p.str());

    BuildReport rep;

    // the two closed points: degree 2 over t^2 - 5 at (t : t : 1), degree 5
    // over t^5 - p at (t : t^2 : 1)
    ClosedPoint p2;
    p2.min_poly = Poly(std::vector<Int>{-5, 0, 1});
    p2.coords = {Poly(std::vector<Int>{0, 1}), Poly(std::vector<Int>{0, 1}),
                 Poly(std::vector<Int>{1})};
    ClosedPoint p5;
    p5.min_poly = Poly(std::vector<Int>{-p, 0, 0, 0, 0, 1});
    p5.coords = {Poly(std::vector<Int>{0, 1}), Poly(std::vector<Int>{0, 0, 1}),
                 Poly(std::vector<Int>{1})};
    std::vector<ClosedPoint> pts{p2, p5};

    rep.position = certify_general_position(pts);
    if (!rep.position.in_general_position)
        throw std::runtime_error("build: points not certified in general position: " +
                                 rep.position.detail);

    // cubics through the seven points
    IntMat cond3 = vanishing_conditions(pts, 3, 1);
    auto cubic_basis = nullspace(cond3);
    if (cubic_basis.size() != 3)
        throw std::logic_error("build: cubic system has dimension " +
                               std::to_string(cubic_basis.size()) + " (expected 3)");

    // c0 = (x - y)(yz - x^2): the line through the degree-2 orbit times the
    // conic through the degree-5 orbit
    Form line(3, 1), conic(3, 2);
    line.coeff({1, 0, 0, 0}) = 1;
    line.coeff({0, 1, 0, 0}) = -1;
    conic.coeff({0, 1, 1, 0}) = 1;
    conic.coeff({2, 0, 0, 0}) = -1;
    Form c0 = line * conic;
    auto c0v = form_to_int_vector(c0);
    if (!satisfies_conditions(cond3, c0v))
        throw std::logic_error("build: split cubic c0 does not vanish on the points");

    std::array<Form, 3> cubics;
    cubics[0] = c0;
    {
        std::vector<std::vector<Int>> span{c0v};
        size_t have = 1;
        for (const auto& v : cubic_basis) {
            if (have == 3) break;
            auto test = span;
            test.push_back(v);
            if (span_rank(test) > have) {
                cubics[have] = form_from_int_vector(v, 3, 3);
                span.push_back(v);
                ++have;
            }
        }
        if (have != 3) throw std::logic_error("build: could not complete cubic basis");
    }
    rep.cubics = cubics;

    // sextics with double points at all seven points
    IntMat cond6 = vanishing_conditions(pts, 6, 2);
    auto sextic_basis = nullspace(cond6);
    if (sextic_basis.size() != 7)
        throw std::logic_error("build: sextic system has dimension " +
                               std::to_string(sextic_basis.size()) + " (expected 7)");
    std::vector<std::vector<Int>> products;
    for (int i = 0; i < 3; ++i)
        for (int j = i; j < 3; ++j)
            products.push_back(form_to_int_vector(cubics[i] * cubics[j]));
    if (span_rank(products) != 6)
        throw std::logic_error("build: cubic products are not independent");
    bool found = false;
    for (const auto& v : sextic_basis) {
        auto test = products;
        test.push_back(v);
        if (span_rank(test) == 7) {
            rep.sextic = form_from_int_vector(v, 3, 6);
            found = true;
            break;
        }
    }
    if (!found) throw std::logic_error("build: no sextic outside the product span");

    rep.relation = dp2_anticanonical_relation(cubics, rep.sextic);
    rep.surface = geiser_contract(rep.relation.f2, rep.relation.f4);

    // three good primes certifying smoothness
    for (uint64_t q : primes_up_to(200)) {
        if (q < 5) continue;
        if (smoothness_mod_p(rep.surface, q)) rep.smooth_primes.push_back(q);
        if (rep.smooth_primes.size() == 3) break;
    }
    if (rep.smooth_primes.size() < 3)
        throw std::logic_error("build: could not certify smoothness at three primes");
    return rep;
}

CubicSurfaceForm reference_surface_1_2() {
    Form f(4, 3);
    auto set = [&](int a, int b, int c, int d, int64_t v) { f.coeff({a, b, c, d}) = Rat(v); };
    set(2, 0, 0, 1, -5);
    set(1, 2, 0, 0, -5);
    set(1, 1, 0, 1, -2);
    set(1, 0, 2, 0, 5);
    set(1, 0, 1, 1, -9);
    set(1, 0, 0, 2, -5);
    set(0, 3, 0, 0, 9);
    set(0, 2, 1, 0, -11);
    set(0, 2, 0, 1, 29);
    set(0, 1, 2, 0, 43);
    set(0, 1, 1, 1, -52);
    set(0, 1, 0, 2, -4);
    set(0, 0, 3, 0, -13);
    set(0, 0, 2, 1, 14);
    set(0, 0, 1, 2, -96);
    set(0, 0, 0, 3, 45);
    return f;
}

std::string surface_to_json(const CubicSurfaceForm& s) {
    nlohmann::json j;
    j["degree"] = s.deg;
    j["vars"] = s.vars;
    nlohmann::json terms = nlohmann::json::object();
    const auto& exps = Form::exponents(s.vars, s.deg);
    auto ic = s.integer_coeffs();
    for (size_t t = 0; t < ic.size(); ++t) {
        if (ic[t] == 0) continue;
        std::ostringstream key;
        for (int v = 0; v < s.vars; ++v) key << (v ? "," : "") << exps[t][v];
        terms[key.str()] = ic[t].str();
    }
    j["terms"] = std::move(terms);
    return j.dump(2);
}

CubicSurfaceForm surface_from_json(const std::string& text) {
    nlohmann::json j = nlohmann::json::parse(text);
    int deg = j.at("degree").get<int>();
    int vars = j.at("vars").get<int>();
    Form f(vars, deg);
    for (auto& [key, val] : j.at("terms").items()) {
        std::array<int, 4> e{0, 0, 0, 0};
        std::istringstream is(key);
        std::string tok;
        int v = 0;
        while (std::getline(is, tok, ',')) e[v++] = std::stoi(tok);
        Int coeff(val.get<std::string>());
        f.coeff(e) = Rat(coeff);
    }
    return f;
}

// --- conic bundles --------------------------------------------------------------------

bool is_rational_square(const Rat& q) {
    if (q < 0) return false;
    if (q == 0) return true;
    Int n = Int(numerator(q)), d = Int(denominator(q));
    return is_perfect_square(n) && is_perfect_square(d);
}

bool same_square_class(const Rat& a, const Rat& b) {
    if (a == 0 || b == 0) throw std::invalid_argument("square class of zero");
    return is_rational_square(a * b);
}

bool is_padic_square(const Rat& q, uint64_t p) {
    if (q == 0) return true;
    if (p == 0) return q > 0;
    Int m = Int(numerator(q)) * Int(denominator(q));
    bool neg = m < 0;
    if (neg) m = -m;
    int v = valuation(m, Int(p));
    if (v % 2 != 0) return false;
    for (int i = 0; i < v; ++i) m /= Int(p);
    if (neg) m = -m;
    if (p == 2) {
        Int r = m % 8;
        if (r < 0) r += 8;
        return r == 1;
    }
    Int r = boost::multiprecision::powm(m % Int(p) < 0 ? m % Int(p) + Int(p) : m % Int(p),
                                        Int((p - 1) / 2), Int(p));
    return r == 1;
}

ConicBundleReport verify_conic_bundle_dp2(const Rat& a, const Rat& b) {
    if (is_rational_square(a) || is_rational_square(b) || is_rational_square(a * b))
        throw std::invalid_argument("conic bundle: a, b, ab must all be non-squares");

    // f = a(t-13)(2-t), g = b(t+14)(3-t), h = (t+2)(t-11)
    auto f = [&](const Rat& t) { return a * (t - 13) * (2 - t); };
    auto g = [&](const Rat& t) { return b * (t + 14) * (3 - t); };
    auto h = [&](const Rat& t) { return (t + 2) * (t - 11); };

    ConicBundleReport rep;
    const std::array<Rat, 6> ts{Rat(13), Rat(2), Rat(-14), Rat(3), Rat(-2), Rat(11)};
    std::array<int, 3> per_class{0, 0, 0};
    for (const Rat& t : ts) {
        ConicBundleFibre fib;
        fib.t = t;
        Rat fa = f(t), gb = g(t), hc = h(t);
        // splitting class: negated product of the two surviving coefficients
        if (fa == 0)
            fib.splitting_class = -gb * hc;
        else if (gb == 0)
            fib.splitting_class = -fa * hc;
        else
            fib.splitting_class = -fa * gb;
        if (same_square_class(fib.splitting_class, a)) fib.class_tag = 0;
        else if (same_square_class(fib.splitting_class, b)) fib.class_tag = 1;
        else if (same_square_class(fib.splitting_class, a * b)) fib.class_tag = 2;
        if (fib.class_tag >= 0) ++per_class[fib.class_tag];
        rep.fibres.push_back(fib);
    }
    rep.two_per_class = per_class[0] == 2 && per_class[1] == 2 && per_class[2] == 2;
    return rep;
}

std::optional<PlaceFailure> conic_bundle_insoluble_place(const Rat& a, const Rat& b,
                                                         uint64_t bound) {
    auto rep = verify_conic_bundle_dp2(a, b);
    // a fibre with splitting class c gives a line over k_v iff c is a square in k_v
    auto some_split = [&](uint64_t p) {
        for (const auto& fib : rep.fibres)
            if (is_padic_square(fib.splitting_class, p)) return true;
        return false;
    };
    if (!some_split(0)) return PlaceFailure{true, 0};
    for (uint64_t p : primes_up_to(bound))
        if (!some_split(p)) return PlaceFailure{false, p};
    return std::nullopt;
}

std::vector<Rat> dp1_conic_bundle_g(const std::array<Rat, 4>& e, const Rat& lambda,
                                    const Rat& a, const Rat& b) {
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j)
            if (e[i] == e[j]) throw std::invalid_argument("dp1 bundle: nodes must be distinct");

    const std::array<Rat, 4> vals{Rat(1), a, b, a * b};
    // g = lambda*f + sum_i vals[i] * prod_{j != i} (t - e_j)/(e_i - e_j)
    std::vector<Rat> gpoly(5, Rat(0));
    // f = prod (t - e_i)
    std::vector<Rat> fpoly{1};
    for (int i = 0; i < 4; ++i) {
        std::vector<Rat> next(fpoly.size() + 1, Rat(0));
        for (size_t t = 0; t < fpoly.size(); ++t) {
            next[t + 1] += fpoly[t];
            next[t] -= e[i] * fpoly[t];
        }
        fpoly = std::move(next);
    }
    for (size_t t = 0; t < fpoly.size(); ++t) gpoly[t] += lambda * fpoly[t];
    for (int i = 0; i < 4; ++i) {
        std::vector<Rat> num{1};
        Rat den = 1;
        for (int j = 0; j < 4; ++j) {
            if (j == i) continue;
            std::vector<Rat> next(num.size() + 1, Rat(0));
            for (size_t t = 0; t < num.size(); ++t) {
                next[t + 1] += num[t];
                next[t] -= e[j] * num[t];
            }
            num = std::move(next);
            den *= e[i] - e[j];
        }
        for (size_t t = 0; t < num.size(); ++t) gpoly[t] += vals[i] * num[t] / den;
    }
    // the displayed evaluation identities
    for (int i = 0; i < 4; ++i) {
        Rat v = 0;
        for (size_t t = gpoly.size(); t-- > 0;) v = v * e[i] + gpoly[t];
        if (v != vals[i]) throw std::logic_error("dp1 bundle: interpolation identity failed");
    }
    while (!gpoly.empty() && gpoly.back() == 0) gpoly.pop_back();
    if (static_cast<int>(gpoly.size()) - 1 > 4)
        throw std::logic_error("dp1 bundle: degree exceeds 4");
    return gpoly;
}

// --- pencils of quadrics ------------------------------------------------------------------

PencilDiscriminant pencil_discriminant(const PencilOfQuadrics& pencil) {
    const size_t n = pencil.q1.size();
    if (n < 3 || n % 2 == 0)
        throw std::invalid_argument("pencil: matrices must have odd size >= 3");
    auto check_sym = [&](const std::vector<std::vector<Rat>>& q) {
        if (q.size() != n) throw std::invalid_argument("pencil: size mismatch");
        for (size_t i = 0; i < n; ++i) {
            if (q[i].size() != n) throw std::invalid_argument("pencil: matrix not square");
            for (size_t j = 0; j < n; ++j)
                if (q[i][j] != q[j][i]) throw std::invalid_argument("pencil: matrix not symmetric");
        }
    };
    check_sym(pencil.q1);
    check_sym(pencil.q2);

    // interpolate det(Q1 + t*Q2) at t = 0..n, plus det(Q2) for the t^n term
    auto det_rat = [&](const std::vector<std::vector<Rat>>& m) {
        Int den = 1;
        for (const auto& row : m)
            for (const Rat& q : row) den = den / gcd(den, Int(denominator(q))) * Int(denominator(q));
        IntMat im(n, n);
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j)
                im.at(i, j) = Int(numerator(m[i][j])) * (den / Int(denominator(m[i][j])));
        Int d = bareiss_determinant(std::move(im));
        Rat dd(d);
        for (size_t i = 0; i < n; ++i) dd /= Rat(den);
        return dd;
    };

    std::vector<Rat> xs, ys;
    for (size_t k = 0; k <= n; ++k) {
        std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
        for (size_t i = 0; i < n; ++i)
            for (size_t j = 0; j < n; ++j) m[i][j] = pencil.q1[i][j] + Rat(k) * pencil.q2[i][j];
        xs.emplace_back(k);
        ys.push_back(det_rat(m));
    }
    // Lagrange interpolation, degree <= n
    std::vector<Rat> coeffs(n + 1, Rat(0));
    for (size_t i = 0; i <= n; ++i) {
        std::vector<Rat> basis{1};
        Rat den = 1;
        for (size_t j = 0; j <= n; ++j) {
            if (j == i) continue;
            std::vector<Rat> next(basis.size() + 1, Rat(0));
            for (size_t t = 0; t < basis.size(); ++t) {
                next[t + 1] += basis[t];
                next[t] -= xs[j] * basis[t];
            }
            basis = std::move(next);
            den *= xs[i] - xs[j];
        }
        Rat w = ys[i] / den;
        for (size_t t = 0; t < basis.size(); ++t) coeffs[t] += w * basis[t];
    }

    PencilDiscriminant out;
    out.coeffs = coeffs;
    out.form_degree = static_cast<int>(n);
    // separability: squarefree as a univariate poly and degree drop <= 1
    // (a drop of k means a root of multiplicity k at infinity)
    int actual = -1;
    for (int i = static_cast<int>(n); i >= 0; --i)
        if (coeffs[i] != 0) {
            actual = i;
            break;
        }
    if (actual < 0) {
        out.separable = false;
        return out;
    }
    Int den = 1;
    for (const Rat& q : coeffs) den = den / gcd(den, Int(denominator(q))) * Int(denominator(q));
    std::vector<Int> ic(actual + 1);
    for (int i = 0; i <= actual; ++i)
        ic[i] = Int(numerator(coeffs[i])) * (den / Int(denominator(coeffs[i])));
    Poly univ(std::move(ic));
    out.separable = (static_cast<int>(n) - actual <= 1) && is_squarefree(univ);
    return out;
}

} // namespace dpl::geom
