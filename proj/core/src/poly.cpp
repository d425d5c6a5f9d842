#include "dpl/poly.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace dpl {

using boost::multiprecision::abs;
using boost::multiprecision::gcd;

Poly Poly::monic_from(std::vector<Int> lower, size_t degree) {
    lower.resize(degree + 1, 0);
    lower[degree] = 1;
    return Poly(std::move(lower));
}

Poly Poly::from_string(const std::string& s) {
    std::istringstream is(s);
    std::vector<Int> c;
    std::string tok;
    while (is >> tok) c.push_back(Int(tok));
    return Poly(std::move(c));
}

Int Poly::operator()(const Int& x) const {
    Int v = 0;
    for (size_t i = c_.size(); i-- > 0;) v = v * x + c_[i];
    return v;
}

Rat Poly::operator()(const Rat& x) const {
    Rat v = 0;
    for (size_t i = c_.size(); i-- > 0;) v = v * x + Rat(c_[i]);
    return v;
}

Poly Poly::derivative() const {
    if (c_.size() <= 1) return Poly();
    std::vector<Int> d(c_.size() - 1);
    for (size_t i = 1; i < c_.size(); ++i) d[i - 1] = c_[i] * static_cast<int64_t>(i);
    return Poly(std::move(d));
}

Poly Poly::operator+(const Poly& o) const {
    std::vector<Int> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] += o.c_[i];
    return Poly(std::move(r));
}

Poly Poly::operator-(const Poly& o) const {
    std::vector<Int> r(std::max(c_.size(), o.c_.size()), 0);
    for (size_t i = 0; i < c_.size(); ++i) r[i] += c_[i];
    for (size_t i = 0; i < o.c_.size(); ++i) r[i] -= o.c_[i];
    return Poly(std::move(r));
}

Poly Poly::operator*(const Poly& o) const {
    if (zero() || o.zero()) return Poly();
    std::vector<Int> r(c_.size() + o.c_.size() - 1, 0);
    for (size_t i = 0; i < c_.size(); ++i)
        for (size_t j = 0; j < o.c_.size(); ++j) r[i + j] += c_[i] * o.c_[j];
    return Poly(std::move(r));
}

Poly Poly::operator*(const Int& k) const {
    std::vector<Int> r = c_;
    for (Int& x : r) x *= k;
    return Poly(std::move(r));
}

Int Poly::content() const {
    Int g = 0;
    for (const Int& x : c_) g = gcd(g, x);
    return g;
}

Poly Poly::primitive_part() const {
    Int g = content();
    if (g == 0) return *this;
    std::vector<Int> r = c_;
    for (Int& x : r) x /= g;
    return Poly(std::move(r));
}

Poly Poly::compose_linear(const Int& a, const Int& b) const {
    // f(a*x + b) via Horner
    Poly res;
    Poly lin(std::vector<Int>{b, a});
    for (size_t i = c_.size(); i-- > 0;) {
        res = res * lin + Poly(std::vector<Int>{c_[i]});
    }
    return res;
}

std::string Poly::to_string(const std::string& var) const {
    if (zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (size_t i = c_.size(); i-- > 0;) {
        if (c_[i] == 0) continue;
        Int a = c_[i];
        if (first) {
            if (a < 0) os << '-';
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        Int m = abs(a);
        if (m != 1 || i == 0) os << m.str();
        if (i >= 1) {
            os << var;
            if (i >= 2) os << '^' << i;
        }
        first = false;
    }
    return os.str();
}

Int resultant(const Poly& f, const Poly& g) {
    if (f.zero() || g.zero()) return 0;
    const size_t n = f.degree(), m = g.degree();
    if (n == 0) return boost::multiprecision::pow(f.lead(), static_cast<unsigned>(m));
    if (m == 0) return boost::multiprecision::pow(g.lead(), static_cast<unsigned>(n));
    IntMat s(n + m, n + m);
    for (size_t i = 0; i < m; ++i)
        for (size_t j = 0; j <= n; ++j) s.at(i, i + j) = f.coeff(n - j);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j <= m; ++j) s.at(m + i, i + j) = g.coeff(m - j);
    return bareiss_determinant(std::move(s));
}

Int discriminant(const Poly& f) {
    if (f.degree() < 1) throw std::invalid_argument("discriminant needs degree >= 1");
    if (f.degree() == 1) return 1;
    Int r = resultant(f, f.derivative());
    r /= f.lead();
    int n = f.degree();
    return (static_cast<int64_t>(n) * (n - 1) / 2) % 2 == 0 ? r : -r;
}

namespace {

// rational polynomial remainder
std::vector<Rat> rat_rem(std::vector<Rat> a, const std::vector<Rat>& b) {
    while (a.size() >= b.size() && !b.empty()) {
        Rat q = a.back() / b.back();
        size_t off = a.size() - b.size();
        for (size_t i = 0; i < b.size(); ++i) a[off + i] -= q * b[i];
        while (!a.empty() && a.back() == 0) a.pop_back();
        if (a.empty()) break;
    }
    return a;
}

std::vector<Rat> to_rat(const Poly& f) {
    std::vector<Rat> v;
    v.reserve(f.coeffs().size());
    for (const Int& x : f.coeffs()) v.emplace_back(x);
    return v;
}

} // namespace

Poly gcd_q(const Poly& f, const Poly& g) {
    std::vector<Rat> a = to_rat(f), b = to_rat(g);
    if (a.size() < b.size()) std::swap(a, b);
    while (!b.empty()) {
        auto r = rat_rem(a, b);
        a = std::move(b);
        b = std::move(r);
    }
    if (a.empty()) return Poly();
    // clear denominators, primitive part
    Int den = 1;
    for (const Rat& q : a) den = den / gcd(den, Int(denominator(q))) * Int(denominator(q));
    std::vector<Int> v(a.size());
    for (size_t i = 0; i < a.size(); ++i)
        v[i] = Int(numerator(a[i])) * (den / Int(denominator(a[i])));
    Poly p = Poly(std::move(v)).primitive_part();
    if (p.lead() < 0) p = p * Int(-1);
    return p;
}

bool is_squarefree(const Poly& f) {
    if (f.degree() <= 1) return !f.zero();
    return gcd_q(f, f.derivative()).degree() == 0;
}

std::vector<Int> integer_roots(const Poly& f) {
    std::vector<Int> roots;
    if (f.zero()) return roots;
    Poly g = f;
    // strip powers of x
    size_t k = 0;
    while (k < g.coeffs().size() && g.coeffs()[k] == 0) ++k;
    if (k > 0) {
        roots.push_back(0);
        std::vector<Int> c(g.coeffs().begin() + k, g.coeffs().end());
        g = Poly(std::move(c));
    }
    if (g.degree() < 1) {
        std::sort(roots.begin(), roots.end());
        return roots;
    }
    Int c0 = abs(g.coeff(0));
    for (Int d = 1; d * d <= c0; ++d) {
        if (c0 % d != 0) continue;
        Int e = c0 / d;
        for (Int cand : {Int(d), Int(e), Int(-d), Int(-e)}) {
            if (g(cand) == 0 && std::find(roots.begin(), roots.end(), cand) == roots.end())
                roots.push_back(cand);
        }
    }
    std::sort(roots.begin(), roots.end());
    return roots;
}

// --- Sturm ------------------------------------------------------------------

namespace {

int sign_at(const std::vector<std::vector<Rat>>& sturm, const Rat& x, bool at_inf, bool plus) {
    int changes = 0, prev = 0;
    for (const auto& p : sturm) {
        if (p.empty()) continue;
        int s;
        if (at_inf) {
            Rat l = p.back();
            s = l == 0 ? 0 : (l > 0 ? 1 : -1);
            if (!plus && (p.size() - 1) % 2 == 1) s = -s;
        } else {
            Rat v = 0;
            for (size_t i = p.size(); i-- > 0;) v = v * x + p[i];
            s = v == 0 ? 0 : (v > 0 ? 1 : -1);
        }
        if (s == 0) continue;
        if (prev != 0 && s != prev) ++changes;
        prev = s;
    }
    return changes;
}

std::vector<std::vector<Rat>> sturm_chain(const Poly& f) {
    std::vector<std::vector<Rat>> chain;
    std::vector<Rat> a = to_rat(f), b = to_rat(f.derivative());
    if (a.empty()) return chain;
    chain.push_back(a);
    while (!b.empty()) {
        chain.push_back(b);
        auto r = rat_rem(a, b);
        for (Rat& x : r) x = -x;
        a = std::move(b);
        b = std::move(r);
    }
    return chain;
}

// exact quotient f / g over Q, cleared to integer coefficients
Poly exact_quotient(const Poly& f, const Poly& g) {
    std::vector<Rat> num = to_rat(f), den = to_rat(g);
    std::vector<Rat> q(num.size() - den.size() + 1, Rat(0));
    while (num.size() >= den.size() && !num.empty()) {
        Rat c = num.back() / den.back();
        size_t off = num.size() - den.size();
        q[off] = c;
        for (size_t i = 0; i < den.size(); ++i) num[off + i] -= c * den[i];
        while (!num.empty() && num.back() == 0) num.pop_back();
    }
    Int d = 1;
    for (Rat& x : q) d = d / gcd(d, Int(denominator(x))) * Int(denominator(x));
    std::vector<Int> qi(q.size());
    for (size_t i = 0; i < q.size(); ++i)
        qi[i] = Int(numerator(q[i])) * (d / Int(denominator(q[i])));
    return Poly(std::move(qi));
}

} // namespace

Poly squarefree_part(const Poly& f) {
    Poly g = gcd_q(f, f.derivative());
    if (g.degree() == 0) return f;
    return exact_quotient(f, g);
}

int count_real_roots(const Poly& f) {
    if (f.zero()) throw std::invalid_argument("zero polynomial");
    auto chain = sturm_chain(squarefree_part(f));
    return sign_at(chain, 0, true, false) - sign_at(chain, 0, true, true);
}

RealRootWitness real_root_witness(const Poly& f) {
    RealRootWitness w;
    if (count_real_roots(f) == 0) return w;
    w.exists = true;
    // Cauchy bound on root size
    Rat bound = 1;
    for (int i = 0; i < f.degree(); ++i) {
        Rat c = Rat(abs(f.coeff(i))) / Rat(abs(f.lead()));
        if (c + 1 > bound) bound = c + 1;
    }
    Poly sf = squarefree_part(f);
    auto ch = sturm_chain(sf);
    auto roots_in = [&](const Rat& lo, const Rat& hi) {
        return sign_at(ch, lo, false, false) - sign_at(ch, hi, false, false);
    };
    Rat lo = -bound, hi = bound;
    for (int it = 0; it < 100 && roots_in(lo, hi) > 1; ++it) {
        Rat mid = (lo + hi) / 2;
        if (sf(mid) == 0) {
            w.lo = w.hi = mid;
            return w;
        }
        if (roots_in(lo, mid) >= 1)
            hi = mid;
        else
            lo = mid;
    }
    for (int it = 0; it < 20; ++it) {
        Rat mid = (lo + hi) / 2;
        if (sf(mid) == 0) {
            w.lo = w.hi = mid;
            return w;
        }
        if (roots_in(lo, mid) == 1)
            hi = mid;
        else
            lo = mid;
    }
    w.lo = lo;
    w.hi = hi;
    return w;
}

// --- primes -------------------------------------------------------------------

bool is_prime_u64(uint64_t n) {
    if (n < 2) return false;
    for (uint64_t p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        if (n == p) return true;
        if (n % p == 0) return false;
    }
    auto mulmod = [](uint64_t a, uint64_t b, uint64_t m) {
        return static_cast<uint64_t>(static_cast<unsigned __int128>(a) * b % m);
    };
    auto powmod = [&](uint64_t a, uint64_t e, uint64_t m) {
        uint64_t r = 1;
        a %= m;
        while (e) {
            if (e & 1) r = mulmod(r, a, m);
            a = mulmod(a, a, m);
            e >>= 1;
        }
        return r;
    };
    uint64_t d = n - 1;
    int s = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++s;
    }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        uint64_t x = powmod(a, d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int i = 1; i < s; ++i) {
            x = mulmod(x, x, n);
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

bool miller_rabin(const Int& n) {
    if (n <= std::numeric_limits<uint64_t>::max())
        return is_prime_u64(static_cast<uint64_t>(n));
    if (n % 2 == 0) return false;
    Int d = n - 1;
    int s = 0;
    while (d % 2 == 0) {
        d /= 2;
        ++s;
    }
    for (uint64_t a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
        Int x = boost::multiprecision::powm(Int(a), d, n);
        if (x == 1 || x == n - 1) continue;
        bool comp = true;
        for (int i = 1; i < s; ++i) {
            x = x * x % n;
            if (x == n - 1) {
                comp = false;
                break;
            }
        }
        if (comp) return false;
    }
    return true;
}

std::vector<uint64_t> primes_up_to(uint64_t bound) {
    std::vector<bool> sieve(bound + 1, true);
    std::vector<uint64_t> ps;
    for (uint64_t i = 2; i <= bound; ++i) {
        if (!sieve[i]) continue;
        ps.push_back(i);
        for (uint64_t j = i * i; j <= bound; j += i) sieve[j] = false;
    }
    return ps;
}

int valuation(Int n, const Int& p) {
    if (n == 0) throw std::invalid_argument("valuation of zero");
    int v = 0;
    while (n % p == 0) {
        n /= p;
        ++v;
    }
    return v;
}

bool is_perfect_square(const Int& n, Int* root) {
    if (n < 0) return false;
    Int r = boost::multiprecision::sqrt(n);
    while (r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    if (r * r == n) {
        if (root) *root = r;
        return true;
    }
    return false;
}

SquarefreeReport squarefree_test(const Int& n, uint64_t bound) {
    SquarefreeReport rep;
    Int m = abs(n);
    if (m <= 1) {
        rep.squarefree = m == 1;
        rep.certified = true;
        return rep;
    }
    bool sf = true;
    for (uint64_t p = 2; p <= bound && Int(p) * p <= m * 4; ++p) {
        if (m % p != 0) continue;
        int e = 0;
        while (m % p == 0) {
            m /= p;
            ++e;
        }
        rep.known_factors.push_back({Int(p), e});
        if (e > 1) sf = false;
    }
    rep.cofactor = m;
    if (m == 1) {
        rep.squarefree = sf;
        rep.certified = true;
    } else if (miller_rabin(m)) {
        rep.known_factors.push_back({m, 1});
        rep.cofactor = 1;
        rep.squarefree = sf;
        rep.certified = true;
    } else if (Int r; is_perfect_square(m, &r)) {
        rep.squarefree = false;
        rep.certified = true;
    } else {
        rep.squarefree = sf; // probable: cofactor composite but could be squarefull
        rep.certified = false;
    }
    return rep;
}

} // namespace dpl
