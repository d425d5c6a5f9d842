#include "dpl/etale.hpp"
#include "dpl/polymod.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

namespace dpl::etale {

using boost::multiprecision::abs;
using boost::multiprecision::gcd;

EtaleScheme EtaleScheme::from_polys(std::vector<Poly> ps) {
    if (ps.empty()) throw std::invalid_argument("etale scheme needs at least one polynomial");
    for (const Poly& f : ps) {
        if (f.degree() < 1) throw std::invalid_argument("component of degree 0");
        if (!f.monic()) throw std::invalid_argument("component is not monic");
        if (!is_squarefree(f))
            throw std::invalid_argument("component is not squarefree: " + f.to_string());
    }
    EtaleScheme x;
    x.polys = std::move(ps);
    return x;
}

int EtaleScheme::degree() const {
    int d = 0;
    for (const Poly& f : polys) d += f.degree();
    return d;
}

std::string EtaleScheme::to_file_string() const {
    std::ostringstream os;
    for (const Poly& f : polys) {
        for (size_t i = 0; i < f.coeffs().size(); ++i) {
            if (i) os << ' ';
            os << f.coeffs()[i].str();
        }
        os << '\n';
    }
    return os.str();
}

EtaleScheme EtaleScheme::from_file_string(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    std::vector<Poly> ps;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#') continue;
        ps.push_back(Poly::from_string(line));
    }
    return from_polys(std::move(ps));
}

// --- p-adic solubility --------------------------------------------------------

namespace {

Int inv_mod(const Int& a, const Int& m) {
    Int old_r = a % m, r = m;
    if (old_r < 0) old_r += m;
    Int old_s = 1, s = 0;
    while (r != 0) {
        Int q = old_r / r;
        Int t = old_r - q * r;
        old_r = r;
        r = t;
        t = old_s - q * s;
        old_s = s;
        s = t;
    }
    if (old_r != 1) throw std::logic_error("inv_mod: not invertible");
    Int res = old_s % m;
    if (res < 0) res += m;
    return res;
}

struct TreeRoot {
    bool found = false;
    Int root = 0;  // approximation in Z, valid mod p^known
    int known = 0; // digits of the expansion fixed so far
};

// p-adic root tree on integral f; returns some Z_p root approximation
TreeRoot root_tree(const Poly& f, const Int& p, int depth, int depth_limit) {
    TreeRoot res;
    if (depth > depth_limit)
        throw std::logic_error("p-adic root tree exceeded its depth bound");
    uint64_t pu = static_cast<uint64_t>(p);
    for (uint64_t r = 0; r < pu; ++r) {
        Int rr(r);
        if (f(rr) % p != 0) continue;
        Int fprime = f.derivative()(rr);
        if (fprime % p != 0) {
            // simple root: it lifts, expansion starts with r
            res.found = true;
            res.root = rr;
            res.known = 1;
            return res;
        }
        // singular: substitute x = r + p*t and strip the content power of p
        Poly g = f.compose_linear(p, rr);
        int c = 0;
        {
            std::vector<Int> gc = g.coeffs();
            bool all = true;
            while (all && !gc.empty()) {
                for (const Int& x : gc)
                    if (x % p != 0) {
                        all = false;
                        break;
                    }
                if (all) {
                    for (Int& x : gc) x /= p;
                    ++c;
                }
            }
            g = Poly(std::move(gc));
        }
        if (g.zero()) { // f vanishes identically on this branch (not squarefree)
            res.found = true;
            res.root = rr;
            res.known = 1;
            return res;
        }
        TreeRoot sub = root_tree(g, p, depth + 1, depth_limit);
        if (sub.found) {
            res.found = true;
            res.root = rr + p * sub.root;
            res.known = sub.known + 1;
            return res;
        }
    }
    return res;
}

} // namespace

SolubilityVerdict qp_soluble(const Poly& f_, const Int& p, int precision) {
    if (!f_.monic()) throw std::invalid_argument("qp_soluble: polynomial must be monic");
    if (p < 2 || !miller_rabin(p)) throw std::invalid_argument("qp_soluble: p must be prime");
    if (precision < 1 || precision > 4096) throw std::invalid_argument("qp_soluble: bad precision");

    SolubilityVerdict v;
    v.p = p;

    Poly f = squarefree_part(f_);
    int disc_val = valuation(discriminant(f), p);
    int depth_limit = 2 * disc_val + 3;

    TreeRoot tr = root_tree(f, p, 0, depth_limit);
    v.soluble = tr.found;
    if (!tr.found) return v;

    // refine the approximation by generalized Newton until
    // v(f(a)) >= precision with e = v(f'(a)) stable
    Int a = tr.root;
    Int pk = 1;
    for (int i = 0; i < precision; ++i) pk *= p;
    for (int rounds = 0; rounds < 64; ++rounds) {
        Int fa = f(a);
        if (fa % pk == 0) break;
        Int fpa = f.derivative()(a);
        if (fpa == 0) throw std::logic_error("qp_soluble: derivative vanished during refinement");
        int e = valuation(fpa, p);
        Int pe = 1;
        for (int i = 0; i < e; ++i) pe *= p;
        Int unit = fpa / pe;
        int fv = valuation(fa, p);
        if (fv <= 2 * e)
            throw std::logic_error("qp_soluble: refinement stalled (valuation too small)");
        // a <- a - f(a)/f'(a): exact in Z_p since v(fa) > e
        Int step = (fa / pe) % pk;
        step = step * inv_mod(unit, pk) % pk;
        a = (a - step) % pk;
        if (a < 0) a += pk;
    }
    if (f(a) % pk != 0) throw std::logic_error("qp_soluble: refinement did not converge");
    Int fpa = f_.derivative()(a);
    v.has_padic_witness = true;
    v.padic_root = a % pk;
    if (v.padic_root < 0) v.padic_root += pk;
    v.modulus = pk;
    v.derivative_valuation = fpa == 0 ? precision : valuation(fpa, p);
    return v;
}

SolubilityVerdict real_soluble(const Poly& f) {
    if (f.zero()) throw std::invalid_argument("real_soluble: zero polynomial");
    SolubilityVerdict v;
    v.real_place = true;
    if (f.degree() % 2 == 1) {
        v.soluble = true;
        v.real_witness = real_root_witness(f);
        return v;
    }
    v.real_witness = real_root_witness(f);
    v.soluble = v.real_witness.exists;
    return v;
}

std::vector<int> frobenius_cycle_type(const Poly& f, uint64_t p) {
    if (!f.monic()) throw std::invalid_argument("frobenius_cycle_type: monic input required");
    if (discriminant(f) % Int(p) == 0)
        throw std::invalid_argument("frobenius_cycle_type: p divides disc(f), p = " +
                                    std::to_string(p));
    return distinct_degree_type(reduce_mod(f, p));
}

std::vector<Int> rational_points(const EtaleScheme& x) {
    std::vector<Int> pts;
    for (const Poly& f : x.polys)
        for (const Int& r : integer_roots(f)) pts.push_back(r);
    std::sort(pts.begin(), pts.end());
    return pts;
}

// --- Hasse failure check -------------------------------------------------------

namespace {

// cycle types of all elements of a small group, as sorted degree multisets
std::set<std::vector<int>> group_cycle_types(const Group& g) {
    std::set<std::vector<int>> types;
    g.for_each_element([&](const Perm& p) {
        auto ct = p.cycle_type();
        types.insert(std::vector<int>(ct.begin(), ct.end()));
        return true;
    }, 4000000);
    return types;
}

bool every_class_fixes_a_point(const Group& g) {
    bool ok = true;
    g.for_each_element([&](const Perm& p) {
        if (p.count_fixed() == 0) {
            ok = false;
            return false;
        }
        return true;
    }, 4000000);
    return ok;
}

} // namespace

HasseReport hasse_failure_check(const EtaleScheme& x, const GaloisCertificate& cert,
                                uint64_t sample_bound) {
    HasseReport rep;
    if (static_cast<int>(cert.group.degree()) != x.degree())
        throw std::invalid_argument("certificate degree does not match scheme degree");

    // ramified primes must cover the discriminant divisors
    Int disc_prod = 1;
    for (const Poly& f : x.polys) disc_prod *= discriminant(f);
    if (disc_prod == 0) throw std::invalid_argument("scheme has a repeated root");
    {
        Int rest = abs(disc_prod);
        for (const Int& p : cert.ramified_primes)
            while (rest % p == 0) rest /= p;
        if (rest != 1)
            throw CertificateError("ramified_primes misses a divisor of the discriminant: " +
                                   rest.str());
    }

    // (a) rational points
    rep.rational_pts = rational_points(x);
    if (!rep.rational_pts.empty()) {
        rep.outcome = HasseOutcome::HasRationalPoint;
        rep.detail = "scheme has a rational point";
        return rep;
    }

    // certificate consistency: sampled Frobenius cycle types must occur
    auto types = group_cycle_types(cert.group);
    std::set<std::vector<int>> observed;
    for (uint64_t p : primes_up_to(sample_bound)) {
        if (disc_prod % Int(p) == 0) continue;
        std::vector<int> joint;
        for (const Poly& f : x.polys)
            for (int d : distinct_degree_type(reduce_mod(f, p))) joint.push_back(d);
        std::sort(joint.begin(), joint.end());
        ++rep.sampled_primes;
        if (!types.count(joint)) {
            std::ostringstream os;
            os << "cycle type at p=" << p << " (";
            for (size_t i = 0; i < joint.size(); ++i) os << (i ? "," : "") << joint[i];
            os << ") does not occur in the certified group";
            throw CertificateError(os.str());
        }
        observed.insert(std::move(joint));
    }
    rep.observed_types_complete = observed == types;

    // (d) the real place
    for (size_t i = 0; i < x.polys.size(); ++i) {
        auto v = real_soluble(x.polys[i]);
        if (v.soluble) {
            rep.real_ok = true;
            rep.real_component = static_cast<int>(i);
            rep.real_witness = std::move(v);
            break;
        }
    }
    if (!rep.real_ok) {
        rep.outcome = HasseOutcome::LocallyInsoluble;
        rep.failing_real = true;
        rep.detail = "no component has a real point";
        return rep;
    }

    // (c) ramified primes
    for (const Int& p : cert.ramified_primes) {
        RamifiedCheck chk;
        chk.p = p;
        for (size_t i = 0; i < x.polys.size(); ++i) {
            auto v = qp_soluble(x.polys[i], p);
            if (v.soluble) {
                chk.soluble = true;
                chk.component = static_cast<int>(i);
                chk.verdict = std::move(v);
                break;
            }
        }
        bool ok = chk.soluble;
        rep.ramified_checks.push_back(std::move(chk));
        if (!ok) {
            rep.outcome = HasseOutcome::LocallyInsoluble;
            rep.failing_p = p;
            rep.detail = "no component is soluble at the ramified prime " + p.str();
            return rep;
        }
    }

    // (b) the group criterion for all unramified places
    rep.every_class_fixes = every_class_fixes_a_point(cert.group);
    if (rep.every_class_fixes) {
        rep.outcome = HasseOutcome::FailsHP;
        rep.detail = "no rational point; every conjugacy class fixes a root; "
                     "ramified primes and the real place are soluble";
        return rep;
    }

    // some class acts freely: find a concrete insoluble unramified prime
    rep.outcome = HasseOutcome::LocallyInsoluble;
    for (uint64_t p : primes_up_to(sample_bound)) {
        if (disc_prod % Int(p) == 0) continue;
        bool deg1 = false;
        for (const Poly& f : x.polys) {
            auto t = distinct_degree_type(reduce_mod(f, p));
            if (std::find(t.begin(), t.end(), 1) != t.end()) {
                deg1 = true;
                break;
            }
        }
        if (!deg1) {
            rep.failing_p = p;
            rep.detail = "no component has a degree-1 factor mod " + Int(p).str();
            return rep;
        }
    }
    rep.detail = "a conjugacy class acts without fixed points (insoluble at infinitely many "
                 "places); no witness prime below the sample bound";
    return rep;
}

// --- biquadratic construction ---------------------------------------------------

namespace {

std::vector<Int> ramified_primes_for(const std::vector<Poly>& polys, uint64_t bound = 1000000) {
    Int prod = 1;
    for (const Poly& f : polys) prod *= discriminant(f);
    prod = abs(prod);
    std::set<Int> ps;
    for (uint64_t d = 2; Int(d) * d <= prod && d <= bound; ++d) {
        while (prod % d == 0) {
            ps.insert(Int(d));
            prod /= d;
        }
    }
    if (prod > 1) {
        if (!miller_rabin(prod))
            throw std::invalid_argument("cannot factor the discriminant product; cofactor " +
                                        prod.str());
        ps.insert(prod);
    }
    return std::vector<Int>(ps.begin(), ps.end());
}

Perm perm_from_images(std::vector<Point> v) { return Perm(std::move(v)); }

} // namespace

BiquadraticResult biquadratic_scheme(const Int& p, const Int& q, uint64_t sample_bound) {
    if (!miller_rabin(p) || !miller_rabin(q))
        throw std::invalid_argument("biquadratic_scheme: inputs must be prime");
    if (p % 8 != 1)
        throw std::invalid_argument("biquadratic_scheme: p must be 1 mod 8, got " + p.str());
    if (q % p != 1)
        throw std::invalid_argument("biquadratic_scheme: q must be 1 mod p");

    BiquadraticResult out;
    auto quad = [](const Int& a) { return Poly(std::vector<Int>{-a, 0, 1}); };
    out.scheme = EtaleScheme::from_polys({quad(p), quad(q), quad(p * q)});

    // V4 on roots (sp, -sp, sq, -sq, spq, -spq)
    Perm sigma = perm_from_images({1, 0, 2, 3, 5, 4}); // sp -> -sp, spq -> -spq
    Perm tau = perm_from_images({0, 1, 3, 2, 5, 4});   // sq -> -sq, spq -> -spq
    out.cert.group = Group(6, {sigma, tau});
    out.cert.ramified_primes = ramified_primes_for(out.scheme.polys);
    out.report = hasse_failure_check(out.scheme, out.cert, sample_bound);
    return out;
}

DiscriminantReport poly_discriminant(const Poly& f) {
    if (!f.monic()) throw std::invalid_argument("poly_discriminant: monic input required");
    DiscriminantReport rep;
    rep.disc = discriminant(f);
    rep.squarefree = squarefree_test(rep.disc);
    return rep;
}

Poly pair_sum_resolvent(const Poly& f) {
    if (!f.monic()) throw std::invalid_argument("pair_sum_resolvent: monic input required");
    const int n = f.degree();
    if (n < 2) throw std::invalid_argument("pair_sum_resolvent: degree >= 2 required");

    // Res_y(f(y), f(x-y)) = prod_{i,j} (x - r_i - r_j)
    //                     = [2^n f(x/2)] * R(x)^2  with R = prod_{i<j}(x - r_i - r_j)
    const int total = n * n;
    std::vector<Rat> xs, ys;
    for (int k = 0; k <= total; ++k) {
        Poly fk = f.compose_linear(Int(-1), Int(k)); // f(k - y) as polynomial in y
        xs.emplace_back(k);
        ys.emplace_back(resultant(f, fk));
    }
    // Lagrange interpolation of the degree-n^2 resultant polynomial S(x)
    std::vector<Rat> S(total + 1, Rat(0));
    for (int i = 0; i <= total; ++i) {
        std::vector<Rat> basis{1};
        Rat denom = 1;
        for (int j = 0; j <= total; ++j) {
            if (j == i) continue;
            std::vector<Rat> nb(basis.size() + 1, Rat(0));
            for (size_t t = 0; t < basis.size(); ++t) {
                nb[t + 1] += basis[t];
                nb[t] -= xs[j] * basis[t];
            }
            basis = std::move(nb);
            denom *= xs[i] - xs[j];
        }
        Rat w = ys[i] / denom;
        for (size_t t = 0; t < basis.size(); ++t) S[t] += w * basis[t];
    }
    // divide by 2^n f(x/2) (the i = j diagonal part)
    std::vector<Rat> diag(n + 1);
    for (int i = 0; i <= n; ++i) {
        Int tw = boost::multiprecision::pow(Int(2), static_cast<unsigned>(n - i));
        diag[i] = Rat(f.coeff(i) * tw);
    }
    // exact polynomial division S / diag
    std::vector<Rat> rem = S, quot(S.size() - diag.size() + 1, Rat(0));
    while (rem.size() >= diag.size()) {
        Rat c = rem.back() / diag.back();
        size_t off = rem.size() - diag.size();
        quot[off] = c;
        for (size_t i = 0; i < diag.size(); ++i) rem[off + i] -= c * diag[i];
        while (!rem.empty() && rem.back() == 0) rem.pop_back();
        if (rem.empty()) break;
    }
    if (!rem.empty()) throw std::logic_error("pair_sum_resolvent: diagonal division not exact");

    // integer square root of the quotient: R^2 = quot, R monic of degree n(n-1)/2
    const int m = n * (n - 1) / 2;
    std::vector<Rat> R(m + 1, Rat(0));
    R[m] = 1;
    for (int i = m - 1; i >= 0; --i) {
        // coefficient of x^(m+i) in R^2: 2*R[i]*R[m] + sum_{j=i+1..m-1} R[j]R[m+i-j]
        Rat s = 0;
        for (int j = i + 1; j <= m - 1 && m + i - j >= 0; ++j)
            if (m + i - j <= m) s += R[j] * R[m + i - j];
        R[i] = (quot[m + i] - s) / 2;
    }
    // verify and clear to integers
    std::vector<Rat> sq(2 * m + 1, Rat(0));
    for (int i = 0; i <= m; ++i)
        for (int j = 0; j <= m; ++j) sq[i + j] += R[i] * R[j];
    for (int i = 0; i <= 2 * m; ++i)
        if (sq[i] != quot[i]) throw std::logic_error("pair_sum_resolvent: square root failed");
    std::vector<Int> out(m + 1);
    for (int i = 0; i <= m; ++i) {
        if (Int(denominator(R[i])) != 1)
            throw std::logic_error("pair_sum_resolvent: non-integral coefficient");
        out[i] = Int(numerator(R[i]));
    }
    return Poly(std::move(out));
}

// --- named examples ---------------------------------------------------------------

namespace {

// induced action on unordered pairs of {0..n-1}, appended after base blocks
Perm pair_action(const Perm& g, size_t n, size_t offset, size_t total) {
    std::vector<Point> img(total);
    for (size_t i = 0; i < total; ++i) img[i] = static_cast<Point>(i);
    std::vector<std::pair<size_t, size_t>> pairs;
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) pairs.push_back({i, j});
    auto index_of = [&](size_t a, size_t b) {
        if (a > b) std::swap(a, b);
        size_t k = 0;
        for (auto& pr : pairs) {
            if (pr.first == a && pr.second == b) return k;
            ++k;
        }
        throw std::logic_error("pair index");
    };
    for (size_t k = 0; k < pairs.size(); ++k) {
        size_t a = g(static_cast<Point>(pairs[k].first));
        size_t b = g(static_cast<Point>(pairs[k].second));
        img[offset + k] = static_cast<Point>(offset + index_of(a, b));
    }
    return Perm(std::move(img));
}

// extend a permutation given on a block, identity elsewhere
Perm block_perm(size_t total, size_t offset, const std::vector<Point>& images) {
    std::vector<Point> img(total);
    for (size_t i = 0; i < total; ++i) img[i] = static_cast<Point>(i);
    for (size_t i = 0; i < images.size(); ++i)
        img[offset + i] = static_cast<Point>(offset + images[i]);
    return Perm(std::move(img));
}

Perm merge(const Perm& a, const Perm& b) {
    std::vector<Point> img(a.degree());
    for (size_t i = 0; i < a.degree(); ++i) {
        Point x = a(static_cast<Point>(i));
        img[i] = x == i ? b(static_cast<Point>(i)) : x;
    }
    return Perm(std::move(img));
}

} // namespace

std::vector<std::string> named_example_ids() {
    return {"biquadratic-2-17-34", "a4-163", "d5-47", "s5-101833", "z5z4-101"};
}

NamedExample named_example(const std::string& id) {
    NamedExample ex;
    ex.id = id;
    auto quad = [](int64_t a) { return Poly(std::vector<Int>{Int(-a), 0, 1}); };

    if (id == "biquadratic-2-17-34") {
        ex.scheme = EtaleScheme::from_polys({quad(2), quad(17), quad(34)});
        Perm sigma = Perm(std::vector<Point>{1, 0, 2, 3, 5, 4});
        Perm tau = Perm(std::vector<Point>{0, 1, 3, 2, 5, 4});
        ex.cert.group = Group(6, {sigma, tau});
        ex.description = "integral polynomial with a root modulo every integer but no "
                         "integer root (V4 splitting group)";
    } else if (id == "a4-163") {
        Poly f = Poly(std::vector<Int>{9, 2, -7, -1, 1});
        Poly r = pair_sum_resolvent(f);
        ex.scheme = EtaleScheme::from_polys({f, r});
        // A4 on 4 roots plus the induced action on the 6 root pairs
        Perm a3 = Perm::cycles(4, {{0, 1, 2}});
        Perm v = Perm::cycles(4, {{0, 1}, {2, 3}});
        size_t total = 10;
        Perm g1 = merge(block_perm(total, 0, a3.images()), pair_action(a3, 4, 4, total));
        Perm g2 = merge(block_perm(total, 0, v.images()), pair_action(v, 4, 4, total));
        ex.cert.group = Group(total, {g1, g2});
        ex.description = "quartic with A4 splitting group, discriminant 163^2";
    } else if (id == "d5-47") {
        Poly f = Poly(std::vector<Int>{1, 0, -1, 2, -2, 1});
        ex.scheme = EtaleScheme::from_polys({f, quad(-47)});
        // D5 on the 5 quintic roots plus the quadratic subfield Q(sqrt(-47))
        size_t total = 7;
        Perm rot = block_perm(total, 0, Perm::cycles(5, {{0, 1, 2, 3, 4}}).images());
        Perm refl = merge(block_perm(total, 0, Perm::cycles(5, {{1, 4}, {2, 3}}).images()),
                          block_perm(total, 5, {1, 0}));
        ex.cert.group = Group(total, {rot, refl});
        ex.description = "quintic with D5 splitting group, discriminant 47^2";
    } else if (id == "s5-101833") {
        Poly f = Poly(std::vector<Int>{-1, 2, 5, -5, -1, 1});
        Poly r = pair_sum_resolvent(f);
        ex.scheme = EtaleScheme::from_polys({f, quad(101833), r});
        // S5 on 5 roots + sign action on the quadratic + action on root pairs
        size_t total = 17;
        Perm c5 = Perm::cycles(5, {{0, 1, 2, 3, 4}});
        Perm t2 = Perm::cycles(5, {{0, 1}});
        Perm g1 = merge(block_perm(total, 0, c5.images()), pair_action(c5, 5, 7, total));
        Perm g2 = merge(merge(block_perm(total, 0, t2.images()), block_perm(total, 5, {1, 0})),
                        pair_action(t2, 5, 7, total));
        ex.cert.group = Group(total, {g1, g2});
        ex.description = "quintic with S5 splitting group, prime discriminant 101833";
    } else if (id == "z5z4-101") {
        Poly f5 = Poly(std::vector<Int>{-101, 0, 0, 0, 0, 1});
        ex.scheme = EtaleScheme::from_polys({quad(5), f5});
        // F20 = Z/5 x| Z/4 on sqrt5-roots (2 points) + the five 5th roots
        size_t total = 7;
        Perm rot = block_perm(total, 2, Perm::cycles(5, {{0, 1, 2, 3, 4}}).images());
        Perm four = merge(block_perm(total, 0, {1, 0}),
                          block_perm(total, 2, Perm::cycles(5, {{1, 2, 4, 3}}).images()));
        ex.cert.group = Group(total, {rot, four});
        ex.description = "(x^2-5)(x^5-101): the splitting group is Z/5 x| Z/4";
    } else {
        throw std::invalid_argument("unknown example id: " + id);
    }
    ex.cert.ramified_primes = ramified_primes_for(ex.scheme.polys);
    return ex;
}

} // namespace dpl::etale
