#include "dpl/conjugacy.hpp"

#include <algorithm>
#include <cstring>

namespace dpl {

namespace {

uint64_t mix64(uint64_t x) {
    x += 0x9e3779b97f4a7c15ull;
    x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
    x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
    return x ^ (x >> 31);
}

// orbit ids of the action on ordered pairs (x,y), x != y; diagonal gets -1
std::vector<int32_t> ordered_pair_orbits(const std::vector<Perm>& gens, size_t n,
                                         std::vector<uint32_t>& orbit_sizes) {
    std::vector<int32_t> id(n * n, -1);
    int32_t next = 0;
    std::vector<uint32_t> stack;
    for (size_t i = 0; i < n; ++i) {
        for (size_t j = 0; j < n; ++j) {
            if (i == j || id[i * n + j] >= 0) continue;
            uint32_t count = 0;
            id[i * n + j] = next;
            stack.assign(1, static_cast<uint32_t>(i * n + j));
            ++count;
            while (!stack.empty()) {
                uint32_t c = stack.back();
                stack.pop_back();
                Point a = static_cast<Point>(c / n), b = static_cast<Point>(c % n);
                for (const Perm& g : gens) {
                    uint32_t d = static_cast<uint32_t>(g(a)) * n + g(b);
                    if (id[d] < 0) {
                        id[d] = next;
                        stack.push_back(d);
                        ++count;
                    }
                }
            }
            orbit_sizes.push_back(count);
            ++next;
        }
    }
    return id;
}

struct Colouring {
    std::vector<uint64_t> point;     // refined point colour
    std::vector<uint64_t> pair;      // canonical pair hash, n*n
    uint64_t signature = 0;          // multiset hash of point colours
};

Colouring colour(const Group& h) {
    const size_t n = h.degree();
    Colouring c;
    auto orb = h.orbit_ids();
    std::vector<uint32_t> point_orbit_size;
    {
        std::vector<uint32_t> cnt;
        for (int32_t o : orb) {
            if (o >= static_cast<int32_t>(cnt.size())) cnt.resize(o + 1, 0);
            ++cnt[o];
        }
        point_orbit_size.resize(n);
        for (size_t i = 0; i < n; ++i) point_orbit_size[i] = cnt[orb[i]];
    }
    std::vector<uint32_t> posizes;
    auto pid = ordered_pair_orbits(h.generators(), n, posizes);

    // canonical pair hash: orbit size + endpoint orbit sizes + same-orbit flag
    c.pair.assign(n * n, 0);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) {
            if (i == j) {
                c.pair[i * n + j] = mix64(0xabcdefull ^ point_orbit_size[i]);
                continue;
            }
            uint64_t v = posizes[pid[i * n + j]];
            v = mix64(v ^ (uint64_t(point_orbit_size[i]) << 20) ^
                      (uint64_t(point_orbit_size[j]) << 40) ^
                      (orb[i] == orb[j] ? 0x55aaull : 0));
            c.pair[i * n + j] = v;
        }

    // one WL-style refinement round on points
    c.point.assign(n, 0);
    for (size_t i = 0; i < n; ++i) {
        uint64_t acc = mix64(point_orbit_size[i]);
        for (size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            acc += mix64(c.pair[i * n + j] * 3 + c.pair[j * n + i]);
        }
        c.point[i] = mix64(acc);
    }
    std::vector<uint64_t> refined(n);
    for (size_t i = 0; i < n; ++i) {
        uint64_t acc = c.point[i];
        for (size_t j = 0; j < n; ++j) {
            if (i == j) continue;
            acc += mix64(c.pair[i * n + j] ^ (c.point[j] * 5));
        }
        refined[i] = mix64(acc);
    }
    c.point = std::move(refined);
    uint64_t sig = 0;
    for (uint64_t v : c.point) sig += mix64(v);
    c.signature = mix64(sig ^ static_cast<uint64_t>(h.order_u64()));
    return c;
}

struct Search {
    const Group* G;
    const Group* H1;
    const Group* H2;
    Colouring c1, c2;
    size_t n;
    std::optional<Perm> found;

    bool leaf_check(const Perm& g) {
        Perm gi = g.inverse();
        for (const Perm& h : H1->generators()) {
            if (!H2->contains(gi * h * g)) return false;
        }
        return true;
    }

    // dfs over the levels of G's stabilizer chain; partial is an element of G
    // realizing the images chosen so far
    bool dfs(size_t lvl, const Perm& partial) {
        const auto& chain = G->chain();
        if (lvl == chain.size()) {
            if (leaf_check(partial)) {
                found = partial;
                return true;
            }
            return false;
        }
        const auto& L = chain[lvl];
        Point b = L.base;
        for (size_t oi = 0; oi < L.orbit.size(); ++oi) {
            Point x = L.orbit[oi];
            Point img = partial(x); // candidate image of b under trans*partial
            if (c2.point[img] != c1.point[b]) continue;
            bool ok = true;
            // pair constraints against previously fixed base points
            Perm next = L.trans[oi] * partial;
            for (size_t j = 0; j < lvl && ok; ++j) {
                Point pb = chain[j].base;
                Point pi = next(pb);
                if (c1.pair[pb * n + b] != c2.pair[pi * n + img] ||
                    c1.pair[b * n + pb] != c2.pair[img * n + pi])
                    ok = false;
            }
            if (!ok) continue;
            if (dfs(lvl + 1, next)) return true;
        }
        return false;
    }
};

} // namespace

uint64_t action_signature(const Group& h) { return colour(h).signature; }

std::optional<Perm> subgroup_conjugator(const Group& ambient, const Group& h1, const Group& h2) {
    if (h1.degree() != ambient.degree() || h2.degree() != ambient.degree())
        throw std::invalid_argument("degree mismatch");
    if (h1.order() != h2.order()) return std::nullopt;
    if (h1.order() == 1) return Perm::identity(ambient.degree());

    // identity shortcut: equal subgroups
    {
        bool eq = true;
        for (const Perm& g : h1.generators())
            if (!h2.contains(g)) {
                eq = false;
                break;
            }
        if (eq) return Perm::identity(ambient.degree());
    }

    Search s;
    s.G = &ambient;
    s.H1 = &h1;
    s.H2 = &h2;
    s.n = ambient.degree();
    s.c1 = colour(h1);
    s.c2 = colour(h2);
    if (s.c1.signature != s.c2.signature) return std::nullopt;

    Perm id = Perm::identity(ambient.degree());
    s.dfs(0, id);
    return s.found;
}

bool is_conjugate_subgroup(const Group& ambient, const Group& h1, const Group& h2) {
    for (const Perm& g : h1.generators())
        if (!ambient.contains(g)) throw std::invalid_argument("h1 is not a subgroup of ambient");
    for (const Perm& g : h2.generators())
        if (!ambient.contains(g)) throw std::invalid_argument("h2 is not a subgroup of ambient");
    return subgroup_conjugator(ambient, h1, h2).has_value();
}

} // namespace dpl
