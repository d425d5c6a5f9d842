#include "dpl/forms.hpp"

#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>

namespace dpl::geom {

using boost::multiprecision::gcd;

namespace {

std::map<std::pair<int, int>, std::vector<std::array<int, 4>>> g_exp_cache;
std::map<std::pair<int, int>, std::map<uint32_t, size_t>> g_idx_cache;
std::mutex g_cache_mutex;

uint32_t pack(const std::array<int, 4>& e) {
    return static_cast<uint32_t>(e[0]) | (static_cast<uint32_t>(e[1]) << 8) |
           (static_cast<uint32_t>(e[2]) << 16) | (static_cast<uint32_t>(e[3]) << 24);
}

void build_tables(int vars, int deg) {
    auto key = std::make_pair(vars, deg);
    if (g_exp_cache.count(key)) return;
    std::vector<std::array<int, 4>> exps;
    if (vars == 3) {
        for (int i = deg; i >= 0; --i)
            for (int j = deg - i; j >= 0; --j) exps.push_back({i, j, deg - i - j, 0});
    } else if (vars == 4) {
        for (int i = deg; i >= 0; --i)
            for (int j = deg - i; j >= 0; --j)
                for (int k = deg - i - j; k >= 0; --k) exps.push_back({i, j, k, deg - i - j - k});
    } else {
        throw std::invalid_argument("forms support 3 or 4 variables");
    }
    std::map<uint32_t, size_t> idx;
    for (size_t t = 0; t < exps.size(); ++t) idx[pack(exps[t])] = t;
    g_exp_cache[key] = std::move(exps);
    g_idx_cache[key] = std::move(idx);
}

} // namespace

size_t Form::dim(int vars, int deg) {
    return exponents(vars, deg).size();
}

const std::vector<std::array<int, 4>>& Form::exponents(int vars, int deg) {
    std::lock_guard<std::mutex> lk(g_cache_mutex);
    build_tables(vars, deg);
    return g_exp_cache[{vars, deg}];
}

size_t Form::index_of(int vars, int deg, const std::array<int, 4>& e) {
    std::lock_guard<std::mutex> lk(g_cache_mutex);
    build_tables(vars, deg);
    auto& idx = g_idx_cache[{vars, deg}];
    auto it = idx.find(pack(e));
    if (it == idx.end()) throw std::invalid_argument("exponent tuple out of range");
    return it->second;
}

Form Form::operator+(const Form& o) const {
    if (vars != o.vars || deg != o.deg) throw std::invalid_argument("form shape mismatch");
    Form r = *this;
    for (size_t i = 0; i < c.size(); ++i) r.c[i] += o.c[i];
    return r;
}

Form Form::operator-(const Form& o) const {
    if (vars != o.vars || deg != o.deg) throw std::invalid_argument("form shape mismatch");
    Form r = *this;
    for (size_t i = 0; i < c.size(); ++i) r.c[i] -= o.c[i];
    return r;
}

Form Form::operator*(const Form& o) const {
    if (vars != o.vars) throw std::invalid_argument("form variable mismatch");
    Form r(vars, deg + o.deg);
    const auto& ea = exponents(vars, deg);
    const auto& eb = exponents(vars, o.deg);
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        for (size_t j = 0; j < o.c.size(); ++j) {
            if (o.c[j] == 0) continue;
            std::array<int, 4> e;
            for (int t = 0; t < 4; ++t) e[t] = ea[i][t] + eb[j][t];
            r.c[index_of(vars, r.deg, e)] += c[i] * o.c[j];
        }
    }
    return r;
}

Form Form::scaled(const Rat& k) const {
    Form r = *this;
    for (Rat& x : r.c) x *= k;
    return r;
}

Form Form::partial(int var) const {
    if (deg == 0) return Form(vars, 0);
    Form r(vars, deg - 1);
    const auto& ea = exponents(vars, deg);
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0 || ea[i][var] == 0) continue;
        std::array<int, 4> e = ea[i];
        int k = e[var];
        e[var] -= 1;
        r.c[index_of(vars, r.deg, e)] += c[i] * k;
    }
    return r;
}

Form Form::substitute_zero(int var) const {
    Form r(vars, deg);
    const auto& ea = exponents(vars, deg);
    for (size_t i = 0; i < c.size(); ++i)
        if (ea[i][var] == 0) r.c[i] = c[i];
    return r;
}

Form Form::divide_by_var(int var) const {
    Form r(vars, deg - 1);
    const auto& ea = exponents(vars, deg);
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        if (ea[i][var] == 0)
            throw std::invalid_argument("form is not divisible by the variable");
        std::array<int, 4> e = ea[i];
        e[var] -= 1;
        r.c[index_of(vars, r.deg, e)] = c[i];
    }
    return r;
}

Rat Form::evaluate(const std::vector<Rat>& xs) const {
    if (static_cast<int>(xs.size()) != vars) throw std::invalid_argument("evaluation arity");
    const auto& ea = exponents(vars, deg);
    Rat total = 0;
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        Rat term = c[i];
        for (int v = 0; v < vars; ++v)
            for (int k = 0; k < ea[i][v]; ++k) term *= xs[v];
        total += term;
    }
    return total;
}

std::vector<Int> Form::integer_coeffs() const {
    Int den = 1;
    for (const Rat& q : c) den = den / gcd(den, Int(denominator(q))) * Int(denominator(q));
    std::vector<Int> out(c.size());
    for (size_t i = 0; i < c.size(); ++i)
        out[i] = Int(numerator(c[i])) * (den / Int(denominator(c[i])));
    return out;
}

Form Form::primitive_integer() const {
    std::vector<Int> ic = integer_coeffs();
    Int g = 0;
    for (const Int& x : ic) g = gcd(g, x);
    Form r(vars, deg);
    if (g == 0) return r;
    for (size_t i = 0; i < ic.size(); ++i) r.c[i] = Rat(ic[i] / g);
    // normalize sign on the first nonzero coefficient
    for (const Rat& x : r.c) {
        if (x == 0) continue;
        if (x < 0)
            for (Rat& y : r.c) y = -y;
        break;
    }
    return r;
}

std::string Form::to_string(const std::vector<std::string>& names) const {
    const auto& ea = exponents(vars, deg);
    std::ostringstream os;
    bool first = true;
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        Rat a = c[i];
        if (first) {
            if (a < 0) os << '-';
        } else {
            os << (a < 0 ? " - " : " + ");
        }
        Rat m = a < 0 ? Rat(-a) : a;
        bool unit = m == 1;
        bool constant = true;
        for (int v = 0; v < vars; ++v)
            if (ea[i][v] > 0) constant = false;
        if (!unit || constant) os << m;
        for (int v = 0; v < vars; ++v) {
            if (ea[i][v] == 0) continue;
            os << names[v];
            if (ea[i][v] > 1) os << '^' << ea[i][v];
        }
        first = false;
    }
    if (first) return "0";
    return os.str();
}

FormModP FormModP::reduce(const Form& f, uint64_t p) {
    FormModP r;
    r.vars = f.vars;
    r.deg = f.deg;
    r.p = p;
    r.exps = Form::exponents(f.vars, f.deg);
    auto ic = f.integer_coeffs();
    r.c.resize(ic.size());
    for (size_t i = 0; i < ic.size(); ++i) {
        Int m = ic[i] % Int(p);
        if (m < 0) m += p;
        r.c[i] = static_cast<uint64_t>(m);
    }
    return r;
}

uint64_t FormModP::evaluate(const std::array<uint64_t, 4>& xs) const {
    uint64_t total = 0;
    for (size_t i = 0; i < c.size(); ++i) {
        if (c[i] == 0) continue;
        uint64_t term = c[i];
        for (int v = 0; v < vars; ++v)
            for (int k = 0; k < exps[i][v]; ++k) term = term * xs[v] % p;
        total = (total + term) % p;
    }
    return total;
}

} // namespace dpl::geom
