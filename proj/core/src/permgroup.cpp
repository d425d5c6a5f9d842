#include "dpl/permgroup.hpp"

#include <algorithm>
#include <map>
#include <unordered_map>

namespace dpl {

namespace {

uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

uint64_t cycle_type_hash(const std::vector<uint16_t>& ct) {
    uint64_t h = 0x2545f4914f6cdd1dull;
    for (uint16_t l : ct) h = mix64(h ^ (0x100000001b3ull * l));
    return h;
}

} // namespace

Group::Group(size_t degree, std::vector<Perm> generators) : degree_(degree) {
    for (auto& g : generators) {
        if (g.degree() != degree_) throw std::invalid_argument("generator degree mismatch");
        if (!g.is_valid()) throw std::invalid_argument("generator is not a bijection");
        if (!g.is_identity()) gens_.push_back(std::move(g));
    }
    schreier_sims();
}

Group Group::symmetric(size_t degree) {
    std::vector<Perm> gens;
    if (degree >= 2) {
        gens.push_back(Perm::cycles(degree, {{0, 1}}));
        if (degree >= 3) {
            std::vector<Point> c(degree);
            for (size_t i = 0; i < degree; ++i) c[i] = static_cast<Point>((i + 1) % degree);
            gens.push_back(Perm(std::move(c)));
        }
    }
    return Group(degree, std::move(gens));
}

uint64_t Group::order_u64() const {
    if (order_ > std::numeric_limits<uint64_t>::max())
        throw TierExceededError("group order exceeds 64 bits");
    return static_cast<uint64_t>(order_);
}

/*
 * Deterministic Schreier-Sims.
 *
 * Strong generators live in a single append-only list; each carries the
 * first level whose base point it moves.  A generator is active at level
 * k iff its first-moved level is >= k.  Levels are verified bottom-up;
 * a failed sift adds the residue at its stuck level and verification
 * resumes there, so every addition strictly enlarges the group described
 * below that level.
 */
namespace {
struct SSState {
    size_t degree;
    const std::vector<Point>* pref = nullptr;
    std::vector<Perm> sgens;
    std::vector<size_t> sgen_level; // first-moved level of each strong generator

    struct Lvl {
        Point base;
        std::vector<Point> orbit;
        std::vector<int32_t> where;
        std::vector<Perm> trans;
        std::vector<Perm> trans_inv;
        size_t done_orbit = 0; // Schreier pairs verified below this watermark
        size_t done_gens = 0;
    };
    std::vector<Lvl> lvls;

    bool active(size_t gen_idx, size_t lvl) const { return sgen_level[gen_idx] >= lvl; }

    Point pick_base(const Perm& g) const {
        auto is_base = [&](Point p) {
            for (const auto& l : lvls)
                if (l.base == p) return true;
            return false;
        };
        if (pref) {
            for (Point p : *pref)
                if (g(p) != p && !is_base(p)) return p;
        }
        for (size_t i = 0; i < degree; ++i)
            if (g(static_cast<Point>(i)) != i && !is_base(static_cast<Point>(i)))
                return static_cast<Point>(i);
        throw std::logic_error("no base point for non-identity generator");
    }

    void new_level(Point b) {
        Lvl l;
        l.base = b;
        l.orbit.push_back(b);
        l.where.assign(degree, -1);
        l.where[b] = 0;
        l.trans.push_back(Perm::identity(degree));
        l.trans_inv.push_back(Perm::identity(degree));
        lvls.push_back(std::move(l));
    }

    // returns the level the generator was placed at
    size_t place(Perm g) {
        size_t lvl = 0;
        while (lvl < lvls.size() && g(lvls[lvl].base) == lvls[lvl].base) ++lvl;
        if (lvl == lvls.size()) new_level(pick_base(g));
        sgens.push_back(std::move(g));
        sgen_level.push_back(lvl);
        return lvl;
    }

    void close_orbit(size_t lvl) {
        Lvl& l = lvls[lvl];
        for (size_t i = 0; i < l.orbit.size(); ++i) {
            for (size_t j = 0; j < sgens.size(); ++j) {
                if (!active(j, lvl)) continue;
                Point y = sgens[j](l.orbit[i]);
                if (l.where[y] < 0) {
                    l.where[y] = static_cast<int32_t>(l.orbit.size());
                    l.orbit.push_back(y);
                    l.trans.push_back(l.trans[i] * sgens[j]);
                    l.trans_inv.push_back(l.trans.back().inverse());
                }
            }
        }
    }

    // sift g through levels >= lvl; returns residue
    Perm sift_from(size_t lvl, Perm g) const {
        for (size_t k = lvl; k < lvls.size(); ++k) {
            const Lvl& l = lvls[k];
            Point x = g(l.base);
            if (x == l.base) continue;
            int32_t idx = l.where[x];
            if (idx < 0) return g;
            g = g * l.trans_inv[idx];
        }
        return g;
    }

    void run(const std::vector<Perm>& initial) {
        for (const Perm& g : initial)
            if (!g.is_identity()) place(g);
        if (lvls.empty()) return;
        // process levels from deepest to top; on a failed sift jump back down
        // to the stuck level
        size_t lvl = lvls.size() - 1;
        while (true) {
            close_orbit(lvl);
            Lvl& l = lvls[lvl];
            bool failed = false;
            // verify Schreier generators beyond the watermark
            for (size_t oi = 0; oi < l.orbit.size() && !failed; ++oi) {
                for (size_t gj = 0; gj < sgens.size() && !failed; ++gj) {
                    if (oi < l.done_orbit && gj < l.done_gens) continue;
                    if (!active(gj, lvl)) continue;
                    Point y = sgens[gj](l.orbit[oi]);
                    Perm sg = l.trans[oi] * sgens[gj] * l.trans_inv[l.where[y]];
                    Perm res = sift_from(lvl + 1, std::move(sg));
                    if (!res.is_identity()) {
                        size_t at = place(std::move(res));
                        // levels in (lvl, at] now stale; resume at the deepest changed level
                        lvl = at;
                        failed = true;
                    }
                }
            }
            if (failed) continue;
            l.done_orbit = l.orbit.size();
            l.done_gens = sgens.size();
            if (lvl == 0) break;
            --lvl;
        }
    }
};
} // namespace

void Group::schreier_sims(const std::vector<Point>* preferred_base) {
    chain_.clear();
    SSState st;
    st.degree = degree_;
    st.pref = preferred_base;
    st.run(gens_);
    chain_.reserve(st.lvls.size());
    for (size_t k = 0; k < st.lvls.size(); ++k) {
        Level lv;
        lv.base = st.lvls[k].base;
        lv.orbit = std::move(st.lvls[k].orbit);
        lv.where = std::move(st.lvls[k].where);
        lv.trans = std::move(st.lvls[k].trans);
        lv.trans_inv = std::move(st.lvls[k].trans_inv);
        for (size_t j = 0; j < st.sgens.size(); ++j)
            if (st.sgen_level[j] >= k) lv.gens.push_back(st.sgens[j]);
        chain_.push_back(std::move(lv));
    }
    recompute_order();
}

void Group::recompute_order() {
    order_ = 1;
    for (const auto& l : chain_) order_ *= static_cast<uint64_t>(l.orbit.size());
}

Perm Group::sift(const Perm& g) const {
    Perm r = g;
    for (const auto& l : chain_) {
        Point x = r(l.base);
        if (x == l.base) continue;
        int32_t idx = l.where[x];
        if (idx < 0) return r;
        r = r * l.trans_inv[idx];
    }
    return r;
}

bool Group::contains(const Perm& g) const {
    if (g.degree() != degree_) return false;
    return sift(g).is_identity();
}

void Group::extend(const Perm& g) {
    if (contains(g)) return;
    gens_.push_back(g);
    schreier_sims();
}

// --- orbits ------------------------------------------------------------

std::vector<int32_t> Group::orbit_ids() const {
    std::vector<int32_t> id(degree_, -1);
    int32_t next = 0;
    std::vector<Point> stack;
    for (size_t s = 0; s < degree_; ++s) {
        if (id[s] >= 0) continue;
        id[s] = next;
        stack.assign(1, static_cast<Point>(s));
        while (!stack.empty()) {
            Point x = stack.back();
            stack.pop_back();
            for (const Perm& g : gens_) {
                Point y = g(x);
                if (id[y] < 0) {
                    id[y] = next;
                    stack.push_back(y);
                }
            }
        }
        ++next;
    }
    return id;
}

std::vector<std::vector<Point>> Group::orbits() const {
    auto id = orbit_ids();
    int32_t n = *std::max_element(id.begin(), id.end()) + 1;
    std::vector<std::vector<Point>> res(n);
    for (size_t i = 0; i < degree_; ++i) res[id[i]].push_back(static_cast<Point>(i));
    return res;
}

std::vector<Point> Group::orbit_of(Point x) const {
    std::vector<char> in(degree_, 0);
    std::vector<Point> orb{x};
    in[x] = 1;
    for (size_t i = 0; i < orb.size(); ++i)
        for (const Perm& g : gens_) {
            Point y = g(orb[i]);
            if (!in[y]) {
                in[y] = 1;
                orb.push_back(y);
            }
        }
    std::sort(orb.begin(), orb.end());
    return orb;
}

bool Group::is_transitive() const {
    return degree_ > 0 && orbit_of(0).size() == degree_;
}

std::vector<Point> Group::fixed_points() const {
    std::vector<Point> f;
    for (size_t i = 0; i < degree_; ++i) {
        bool fixed = true;
        for (const Perm& g : gens_)
            if (g(static_cast<Point>(i)) != i) {
                fixed = false;
                break;
            }
        if (fixed) f.push_back(static_cast<Point>(i));
    }
    return f;
}

// --- structure ----------------------------------------------------------

bool Group::is_abelian() const {
    for (size_t i = 0; i < gens_.size(); ++i)
        for (size_t j = i + 1; j < gens_.size(); ++j)
            if (!(gens_[i] * gens_[j] == gens_[j] * gens_[i])) return false;
    return true;
}

bool Group::is_cyclic() const {
    if (!is_abelian()) return false;
    Int exponent = 1;
    for (const Perm& g : gens_) {
        uint64_t o = g.order();
        Int e = exponent * o / boost::multiprecision::gcd(exponent, Int(o));
        exponent = e;
    }
    return exponent == order_;
}

Group Group::derived_subgroup() const {
    std::vector<Perm> comms;
    for (size_t i = 0; i < gens_.size(); ++i)
        for (size_t j = i + 1; j < gens_.size(); ++j)
            comms.push_back(gens_[i].inverse() * gens_[j].inverse() * gens_[i] * gens_[j]);
    Group d(degree_, comms);
    // normal closure under the ambient generators
    std::vector<Perm> work = d.generators();
    while (!work.empty()) {
        Perm h = std::move(work.back());
        work.pop_back();
        for (const Perm& g : gens_) {
            Perm c = h.conj(g);
            if (!d.contains(c)) {
                d.extend(c);
                work.push_back(std::move(c));
            }
        }
    }
    return d;
}

bool Group::is_perfect() const {
    if (order_ == 1) return false;
    return derived_subgroup().order() == order_;
}

bool Group::is_solvable() const {
    Group cur = *this;
    while (cur.order() > 1) {
        Group d = cur.derived_subgroup();
        if (d.order() == cur.order()) return false;
        cur = std::move(d);
    }
    return true;
}

// --- element enumeration -------------------------------------------------

void Group::for_each_element(const std::function<bool(const Perm&)>& f, uint64_t bound) const {
    if (order_ > bound)
        throw TierExceededError("element enumeration bound exceeded (order " + order_.str() + ")");
    size_t k = chain_.size();
    if (k == 0) {
        f(Perm::identity(degree_));
        return;
    }
    // odometer over transversal indices; partial[i] = product of levels i..k-1
    std::vector<size_t> idx(k, 0);
    std::vector<Perm> partial(k + 1);
    partial[k] = Perm::identity(degree_);
    for (size_t i = k; i-- > 0;) partial[i] = partial[i + 1] * chain_[i].trans[0];
    while (true) {
        if (!f(partial[0])) return;
        size_t i = 0;
        while (i < k) {
            if (++idx[i] < chain_[i].orbit.size()) break;
            idx[i] = 0;
            ++i;
        }
        if (i == k) return;
        for (size_t j = i + 1; j-- > 0;) partial[j] = partial[j + 1] * chain_[j].trans[idx[j]];
    }
}

std::vector<Perm> Group::elements(uint64_t bound) const {
    std::vector<Perm> out;
    out.reserve(static_cast<size_t>(std::min<Int>(order_, bound)));
    for_each_element([&](const Perm& p) {
        out.push_back(p);
        return true;
    }, bound);
    return out;
}

std::optional<uint64_t> Group::element_cycle_hash(uint64_t bound) const {
    if (order_ > bound) return std::nullopt;
    uint64_t acc = 0;
    for_each_element([&](const Perm& p) {
        acc += cycle_type_hash(p.cycle_type());
        return true;
    });
    return acc;
}

std::vector<Perm> Group::small_generating_set() const {
    std::vector<Perm> keep;
    Group h = Group::trivial(degree_);
    for (const Perm& g : gens_) {
        if (!h.contains(g)) {
            h.extend(g);
            keep.push_back(g);
        }
    }
    // drop generators that are redundant, last added first
    for (size_t i = keep.size(); i-- > 0 && keep.size() > 1;) {
        std::vector<Perm> test;
        for (size_t j = 0; j < keep.size(); ++j)
            if (j != i) test.push_back(keep[j]);
        if (Group(degree_, test).order() == order_) keep = std::move(test);
    }
    return keep;
}

// --- conjugacy classes of elements ---------------------------------------

std::vector<ConjClass> element_conjugacy_classes(const Group& g, uint64_t bound) {
    if (g.order() > bound)
        throw TierExceededError("element class enumeration bound exceeded");
    const size_t n = g.degree();
    const uint64_t m = g.order_u64();

    // flat element table in deterministic enumeration order
    std::vector<Point> flat;
    flat.reserve(m * n);
    std::unordered_map<uint64_t, std::vector<uint32_t>> index;
    index.reserve(m * 2);
    g.for_each_element([&](const Perm& p) {
        flat.insert(flat.end(), p.images().begin(), p.images().end());
        index[p.hash()].push_back(static_cast<uint32_t>(flat.size() / n - 1));
        return true;
    });
    auto lookup = [&](const Perm& p) -> uint32_t {
        auto it = index.find(p.hash());
        for (uint32_t i : it->second) {
            if (std::equal(p.images().begin(), p.images().end(), flat.begin() + size_t(i) * n))
                return i;
        }
        throw std::logic_error("conjugate not found in element table");
    };

    // union-find under conjugation by generators
    std::vector<uint32_t> parent(m);
    for (uint32_t i = 0; i < m; ++i) parent[i] = i;
    std::function<uint32_t(uint32_t)> find = [&](uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    };
    auto unite = [&](uint32_t a, uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    };

    std::vector<Point> tmp(n);
    for (uint32_t i = 0; i < m; ++i) {
        const Point* e = flat.data() + size_t(i) * n;
        for (const Perm& s : g.generators()) {
            for (size_t x = 0; x < n; ++x) tmp[s(static_cast<Point>(x))] = s(e[x]);
            unite(i, lookup(Perm(std::vector<Point>(tmp))));
        }
    }

    std::map<uint32_t, uint64_t> sizes;
    for (uint32_t i = 0; i < m; ++i) ++sizes[find(i)];
    std::vector<ConjClass> out;
    out.reserve(sizes.size());
    for (auto& [root, sz] : sizes) {
        ConjClass c;
        c.rep = Perm(std::vector<Point>(flat.begin() + size_t(root) * n,
                                        flat.begin() + size_t(root + 1) * n));
        c.size = sz;
        out.push_back(std::move(c));
    }
    std::sort(out.begin(), out.end(), [](const ConjClass& a, const ConjClass& b) {
        auto ca = a.rep.cycle_type(), cb = b.rep.cycle_type();
        if (ca != cb) return ca < cb;
        return a.rep.images() < b.rep.images();
    });
    return out;
}

std::vector<int32_t> pair_orbit_ids(const std::vector<Perm>& gens, size_t n) {
    // unordered pairs {i,j}, i<j, indexed by i*n+j
    std::vector<int32_t> id(n * n, -2);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = i + 1; j < n; ++j) id[i * n + j] = -1;
    int32_t next = 0;
    std::vector<std::pair<Point, Point>> stack;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = i + 1; j < n; ++j) {
            if (id[i * n + j] != -1) continue;
            id[i * n + j] = next;
            stack.assign(1, {static_cast<Point>(i), static_cast<Point>(j)});
            while (!stack.empty()) {
                auto [a, b] = stack.back();
                stack.pop_back();
                for (const Perm& g : gens) {
                    Point x = g(a), y = g(b);
                    if (x > y) std::swap(x, y);
                    if (id[size_t(x) * n + y] == -1) {
                        id[size_t(x) * n + y] = next;
                        stack.push_back({x, y});
                    }
                }
            }
            ++next;
        }
    }
    return id;
}

Group centralizer(const Group& g, const Perm& x, uint64_t class_size_bound) {
    const size_t n = g.degree();
    // orbit of x under conjugation, with Schreier transversal words
    std::vector<Perm> orbit{x};
    std::vector<Perm> uword{Perm::identity(n)};
    std::unordered_map<Perm, uint32_t, PermHash> where;
    where.emplace(x, 0);
    Group cent = Group::trivial(n);
    Int target = 0; // unknown until orbit complete
    for (size_t i = 0; i < orbit.size(); ++i) {
        if (orbit.size() > class_size_bound)
            throw TierExceededError("conjugacy class too large for centralizer computation");
        for (const Perm& s : g.generators()) {
            Perm y = orbit[i].conj(s);
            auto it = where.find(y);
            if (it == where.end()) {
                where.emplace(y, static_cast<uint32_t>(orbit.size()));
                orbit.push_back(std::move(y));
                uword.push_back(uword[i] * s);
            } else {
                Perm c = uword[i] * s * uword[it->second].inverse();
                if (!cent.contains(c)) cent.extend(c);
            }
        }
    }
    target = g.order() / orbit.size();
    if (cent.order() != target)
        throw std::logic_error("centralizer computation incomplete");
    return cent;
}

} // namespace dpl
