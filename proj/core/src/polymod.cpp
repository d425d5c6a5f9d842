#include "dpl/polymod.hpp"

#include <algorithm>
#include <functional>
#include <stdexcept>

namespace dpl {

namespace {

uint64_t mulmod_u64(uint64_t a, uint64_t b, uint64_t p) {
    return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % p);
}

uint64_t powmod_u64(uint64_t a, uint64_t e, uint64_t p) {
    uint64_t r = 1;
    a %= p;
    while (e) {
        if (e & 1) r = mulmod_u64(r, a, p);
        a = mulmod_u64(a, a, p);
        e >>= 1;
    }
    return r;
}

uint64_t invmod_u64(uint64_t a, uint64_t p) { return powmod_u64(a, p - 2, p); }

} // namespace

PolyP reduce_mod(const Poly& f, uint64_t p) {
    PolyP r;
    r.p = p;
    r.c.reserve(f.coeffs().size());
    for (const Int& x : f.coeffs()) {
        Int m = x % Int(p);
        if (m < 0) m += p;
        r.c.push_back(static_cast<uint64_t>(m));
    }
    r.trim();
    return r;
}

PolyP pm_mul(const PolyP& a, const PolyP& b) {
    PolyP r;
    r.p = a.p;
    if (a.zero() || b.zero()) return r;
    r.c.assign(a.c.size() + b.c.size() - 1, 0);
    for (size_t i = 0; i < a.c.size(); ++i) {
        if (a.c[i] == 0) continue;
        for (size_t j = 0; j < b.c.size(); ++j)
            r.c[i + j] = (r.c[i + j] + mulmod_u64(a.c[i], b.c[j], a.p)) % a.p;
    }
    r.trim();
    return r;
}

PolyP pm_rem(PolyP a, const PolyP& b) {
    if (b.zero()) throw std::invalid_argument("polynomial division by zero");
    const uint64_t p = b.p;
    uint64_t inv = invmod_u64(b.c.back(), p);
    while (a.c.size() >= b.c.size()) {
        uint64_t q = mulmod_u64(a.c.back(), inv, p);
        size_t off = a.c.size() - b.c.size();
        if (q != 0)
            for (size_t i = 0; i < b.c.size(); ++i) {
                uint64_t t = mulmod_u64(q, b.c[i], p);
                a.c[off + i] = (a.c[off + i] + p - t) % p;
            }
        a.c.pop_back();
        while (!a.c.empty() && a.c.back() == 0) a.c.pop_back();
        if (a.c.size() < b.c.size()) break;
    }
    a.trim();
    return a;
}

PolyP pm_quot(const PolyP& a, const PolyP& b) {
    PolyP rem = a;
    PolyP q;
    q.p = a.p;
    if (a.c.size() < b.c.size()) return q;
    q.c.assign(a.c.size() - b.c.size() + 1, 0);
    const uint64_t p = b.p;
    uint64_t inv = invmod_u64(b.c.back(), p);
    while (rem.c.size() >= b.c.size() && !rem.zero()) {
        uint64_t co = mulmod_u64(rem.c.back(), inv, p);
        size_t off = rem.c.size() - b.c.size();
        q.c[off] = co;
        for (size_t i = 0; i < b.c.size(); ++i) {
            uint64_t t = mulmod_u64(co, b.c[i], p);
            rem.c[off + i] = (rem.c[off + i] + p - t) % p;
        }
        while (!rem.c.empty() && rem.c.back() == 0) rem.c.pop_back();
    }
    q.trim();
    return q;
}

void pm_make_monic(PolyP& a) {
    if (a.zero() || a.c.back() == 1) return;
    uint64_t inv = invmod_u64(a.c.back(), a.p);
    for (uint64_t& x : a.c) x = mulmod_u64(x, inv, a.p);
}

PolyP pm_gcd(PolyP a, PolyP b) {
    while (!b.zero()) {
        PolyP r = pm_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    pm_make_monic(a);
    return a;
}

PolyP pm_powmod(PolyP a, const Int& e_, const PolyP& f) {
    PolyP r;
    r.p = f.p;
    r.c = {1};
    a = pm_rem(std::move(a), f);
    Int e = e_;
    while (e > 0) {
        if ((e & 1) == 1) r = pm_rem(pm_mul(r, a), f);
        a = pm_rem(pm_mul(a, a), f);
        e >>= 1;
    }
    return r;
}

PolyP pm_pow_x(uint64_t base, uint64_t exp, const PolyP& f) {
    PolyP x;
    x.p = f.p;
    x.c = {0, 1};
    x = pm_rem(std::move(x), f);
    PolyP r = x;
    // r = x^(base^exp) by repeated base-th powering
    for (uint64_t i = 0; i < exp; ++i) r = pm_powmod(r, Int(base), f);
    return r;
}

std::vector<int> distinct_degree_type(const PolyP& f) {
    if (f.degree() < 1) return {};
    PolyP g = f;
    pm_make_monic(g);
    std::vector<int> degs;
    PolyP xq; // x^(p^d) mod g, updated as d grows
    {
        PolyP x;
        x.p = g.p;
        x.c = {0, 1};
        xq = pm_rem(std::move(x), g);
    }
    int d = 0;
    while (g.degree() > 0) {
        ++d;
        if (2 * d > g.degree()) {
            degs.push_back(g.degree()); // remainder is a single irreducible
            break;
        }
        xq = pm_powmod(xq, Int(g.p), g);
        PolyP diff = xq;
        // diff = x^{p^d} - x
        if (diff.c.size() < 2) diff.c.resize(2, 0);
        diff.c[1] = (diff.c[1] + g.p - 1) % g.p;
        diff.trim();
        PolyP h = pm_gcd(diff, g);
        if (h.degree() > 0) {
            for (int k = 0; k < h.degree() / d; ++k) degs.push_back(d);
            g = pm_quot(g, h);
            pm_make_monic(g);
            xq = pm_rem(std::move(xq), g);
        }
    }
    std::sort(degs.begin(), degs.end());
    return degs;
}

namespace {

// equal-degree splitting of a product of irreducibles of degree d, odd p:
// sweep gcd(f, (x+c)^((p^d-1)/2) - 1) over c = 0,1,2,...
void edf_odd(const PolyP& f, int d, std::vector<PolyP>& out) {
    if (f.degree() == d) {
        out.push_back(f);
        return;
    }
    Int e = (boost::multiprecision::pow(Int(f.p), static_cast<unsigned>(d)) - 1) / 2;
    for (uint64_t c = 0;; ++c) {
        PolyP shift;
        shift.p = f.p;
        shift.c = {c % f.p, 1};
        PolyP w = pm_powmod(shift, e, f);
        if (w.c.empty())
            w.c = {f.p - 1};
        else
            w.c[0] = (w.c[0] + f.p - 1) % f.p;
        w.trim();
        PolyP g = pm_gcd(w, f);
        if (g.degree() > 0 && g.degree() < f.degree()) {
            edf_odd(g, d, out);
            PolyP h = pm_quot(f, g);
            pm_make_monic(h);
            edf_odd(h, d, out);
            return;
        }
        if (c > 4 * f.p + 64)
            throw std::logic_error("equal-degree factorization sweep failed to split");
    }
}

// p = 2: trial division by all monic irreducibles of degree d
void edf_two(const PolyP& f, int d, std::vector<PolyP>& out) {
    PolyP rem = f;
    for (uint64_t mask = 0; mask < (1ull << d) && rem.degree() > 0; ++mask) {
        PolyP cand;
        cand.p = 2;
        cand.c.resize(d + 1, 0);
        for (int i = 0; i < d; ++i) cand.c[i] = (mask >> i) & 1;
        cand.c[d] = 1;
        // irreducible iff it has no factor of smaller degree; cheap check:
        // gcd with x^(2^k)-x for k < d must be 1
        bool irred = true;
        for (int k = 1; irred && 2 * k <= d; ++k) {
            PolyP xq = pm_pow_x(2, static_cast<uint64_t>(k), cand);
            if (xq.c.size() < 2) xq.c.resize(2, 0);
            xq.c[1] ^= 1;
            xq.trim();
            if (pm_gcd(xq, cand).degree() > 0) irred = false;
        }
        if (!irred) continue;
        while (rem.degree() >= d) {
            PolyP q = pm_quot(rem, cand);
            if (pm_mul(q, cand).c == rem.c) {
                out.push_back(cand);
                rem = q;
                pm_make_monic(rem);
            } else {
                break;
            }
        }
    }
}

} // namespace

std::vector<std::pair<PolyP, int>> factor_mod_p(const PolyP& f_) {
    PolyP f = f_;
    pm_make_monic(f);
    std::vector<std::pair<PolyP, int>> out;
    if (f.degree() < 1) return out;

    // squarefree decomposition, char p aware
    std::vector<std::pair<PolyP, int>> squarefree_pieces; // (product, multiplicity)
    std::function<void(PolyP, int)> decompose = [&](PolyP g, int mult) {
        if (g.degree() < 1) return;
        PolyP der;
        der.p = g.p;
        der.c.assign(g.c.size() > 1 ? g.c.size() - 1 : 0, 0);
        for (size_t i = 1; i < g.c.size(); ++i)
            der.c[i - 1] = mulmod_u64(g.c[i], i % g.p, g.p);
        der.trim();
        if (der.zero()) {
            // g = h(x^p); over F_p, h has the same coefficients spread out
            PolyP h;
            h.p = g.p;
            for (size_t i = 0; i < g.c.size(); i += g.p) h.c.push_back(g.c[i]);
            h.trim();
            decompose(std::move(h), mult * static_cast<int>(g.p));
            return;
        }
        PolyP d = pm_gcd(g, der);
        if (d.degree() == 0) {
            squarefree_pieces.push_back({std::move(g), mult});
            return;
        }
        PolyP sf = pm_quot(g, d);
        pm_make_monic(sf);
        // peel multiplicities: factors of sf with multiplicity k in g
        int k = 1;
        PolyP rest = std::move(d);
        PolyP cur = std::move(sf);
        while (cur.degree() > 0) {
            PolyP nxt = pm_gcd(cur, rest);
            PolyP exact = pm_quot(cur, nxt);
            pm_make_monic(exact);
            if (exact.degree() > 0) squarefree_pieces.push_back({exact, mult * k});
            if (nxt.degree() > 0) rest = pm_quot(rest, nxt);
            pm_make_monic(rest);
            cur = std::move(nxt);
            ++k;
        }
        if (rest.degree() > 0) decompose(std::move(rest), mult);
    };
    decompose(f, 1);

    for (auto& [piece, mult] : squarefree_pieces) {
        // distinct degree then equal degree
        PolyP g = piece;
        PolyP xq;
        {
            PolyP x;
            x.p = g.p;
            x.c = {0, 1};
            xq = pm_rem(std::move(x), g);
        }
        int d = 0;
        while (g.degree() > 0) {
            ++d;
            if (2 * d > g.degree()) {
                out.push_back({g, mult});
                break;
            }
            xq = pm_powmod(xq, Int(g.p), g);
            PolyP diff = xq;
            if (diff.c.size() < 2) diff.c.resize(2, 0);
            diff.c[1] = (diff.c[1] + g.p - 1) % g.p;
            diff.trim();
            PolyP h = pm_gcd(diff, g);
            if (h.degree() > 0) {
                std::vector<PolyP> irreds;
                if (g.p == 2)
                    edf_two(h, d, irreds);
                else
                    edf_odd(h, d, irreds);
                for (auto& ir : irreds) out.push_back({std::move(ir), mult});
                g = pm_quot(g, h);
                pm_make_monic(g);
                xq = pm_rem(std::move(xq), g);
            }
        }
    }
    std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
        if (a.first.c.size() != b.first.c.size()) return a.first.c.size() < b.first.c.size();
        if (a.first.c != b.first.c) return a.first.c < b.first.c;
        return a.second < b.second;
    });
    return out;
}

namespace {

// does the monic g divide f exactly over Z
bool divides_exactly(const Poly& f, const Poly& g) {
    std::vector<Int> r = f.coeffs();
    const auto& d = g.coeffs();
    while (r.size() >= d.size()) {
        Int c = r.back();
        size_t off = r.size() - d.size();
        for (size_t i = 0; i < d.size(); ++i) r[off + i] -= c * d[i];
        while (!r.empty() && r.back() == 0) r.pop_back();
        if (r.empty()) return true;
        if (r.size() < d.size()) break;
    }
    return r.empty();
}

// search for a monic integer factor of degree k (Mignotte coefficient bounds)
bool has_monic_factor(const Poly& f, int k) {
    Int norm2 = 0;
    for (const Int& c : f.coeffs()) norm2 += c * c;
    Int m = boost::multiprecision::sqrt(norm2) + 1;
    std::vector<Int> bound(k);
    Int binom = 1;
    for (int j = 0; j < k; ++j) {
        // binom(k, j) * (Mahler bound), plus the lead-1 carry
        bound[j] = binom * m + binom;
        binom = binom * (k - j) / (j + 1);
    }
    // candidate constant terms must divide f(0) (assume f(0) != 0; roots at 0
    // are stripped by the caller)
    std::vector<Int> coeffs(k + 1);
    coeffs[k] = 1;
    std::function<bool(int)> rec = [&](int j) -> bool {
        if (j == k) return divides_exactly(f, Poly(std::vector<Int>(coeffs)));
        for (Int c = -bound[j]; c <= bound[j]; ++c) {
            if (j == 0) {
                if (c == 0 || f.coeff(0) % c != 0) continue;
            }
            coeffs[j] = c;
            if (rec(j + 1)) return true;
        }
        return false;
    };
    return rec(0);
}

} // namespace

bool certify_irreducible(const Poly& f, uint64_t bound) {
    if (f.degree() < 1) return false;
    if (f.degree() == 1) return true;
    Int disc = discriminant(f);
    if (disc == 0) return false;
    for (uint64_t p : primes_up_to(bound)) {
        if (f.lead() % Int(p) == 0) continue;
        if (disc % Int(p) == 0) continue;
        auto ddt = distinct_degree_type(reduce_mod(f, p));
        if (ddt.size() == 1 && ddt[0] == f.degree()) return true;
    }
    // groups without an n-cycle never reduce irreducibly; fall back to a
    // bounded search for monic rational factors
    if (!f.monic()) return false;
    if (f.coeff(0) == 0) return false; // x divides
    if (!integer_roots(f).empty()) return false;
    for (int k = 2; 2 * k <= f.degree(); ++k) {
        if (f.degree() > 8)
            throw std::invalid_argument("certify_irreducible: degree too large for factor search");
        if (has_monic_factor(f, k)) return false;
    }
    return true;
}

DedekindShape dedekind_factorization_shape(const Poly& f, uint64_t p) {
    if (!f.monic()) throw std::invalid_argument("dedekind: polynomial must be monic");
    if (!certify_irreducible(f))
        throw std::invalid_argument("dedekind: cannot certify irreducibility over Q");
    DedekindShape res;
    auto factors = factor_mod_p(reduce_mod(f, p));

    // Dedekind's criterion: with fbar = prod g_i^{e_i}, set g = prod g_i,
    // h = prod g_i^{e_i - 1} (monic lifts), T = (g*h - f)/p; the order Z[x]/f
    // is p-maximal iff gcd(Tbar, gbar, hbar) = 1
    PolyP gbar, hbar;
    gbar.p = hbar.p = p;
    gbar.c = {1};
    hbar.c = {1};
    for (auto& [ir, e] : factors) {
        gbar = pm_mul(gbar, ir);
        PolyP pw;
        pw.p = p;
        pw.c = {1};
        for (int k = 0; k < e - 1; ++k) pw = pm_mul(pw, ir);
        hbar = pm_mul(hbar, pw);
    }
    auto lift = [&](const PolyP& a) {
        std::vector<Int> c(a.c.size());
        for (size_t i = 0; i < a.c.size(); ++i) {
            uint64_t v = a.c[i];
            c[i] = v > p / 2 ? Int(v) - Int(p) : Int(v); // symmetric lift
        }
        return Poly(std::move(c));
    };
    Poly g = lift(gbar), h = lift(hbar);
    Poly t = g * h - f;
    std::vector<Int> tc = t.coeffs();
    for (Int& x : tc) {
        if (x % Int(p) != 0) throw std::logic_error("dedekind: g*h != f mod p");
        x /= Int(p);
    }
    PolyP tbar = reduce_mod(Poly(std::move(tc)), p);
    PolyP common = pm_gcd(pm_gcd(tbar, gbar), hbar);
    res.certified = common.degree() == 0;
    if (res.certified)
        for (auto& [ir, e] : factors) res.shape.push_back({e, ir.degree()});
    std::sort(res.shape.begin(), res.shape.end());
    return res;
}

} // namespace dpl
