#include "dpl/lattice.hpp"
#include "dpl/conjugacy.hpp"
#include "dpl/parallel.hpp"

#include <algorithm>
#include <cstdio>
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

std::vector<uint64_t> prime_divisors(uint64_t n) {
    std::vector<uint64_t> ps;
    for (uint64_t d = 2; d * d <= n; ++d) {
        if (n % d == 0) {
            ps.push_back(d);
            while (n % d == 0) n /= d;
        }
    }
    if (n > 1) ps.push_back(n);
    return ps;
}

// --- zuppos: canonical generators of prime-power cyclic subgroups ----------

struct Zuppo {
    Perm z;       // canonical generator (lexicographically least of the subgroup)
    Perm zp;      // z^p
    uint32_t p;   // the prime
    uint32_t q;   // full order p^m
};

std::vector<Zuppo> enumerate_zuppos(const Group& g, uint64_t bound) {
    if (g.order() > bound)
        throw TierExceededError("zuppo enumeration: ambient order " + g.order().str() +
                                " exceeds configured tier bound " + std::to_string(bound));
    std::unordered_map<uint64_t, std::vector<uint32_t>> seen; // hash -> zuppo idx
    std::vector<Zuppo> out;
    g.for_each_element([&](const Perm& e) {
        uint64_t q = e.order();
        if (q < 2) return true;
        auto ps = prime_divisors(q);
        if (ps.size() != 1) return true;
        uint64_t p = ps[0];
        // canonical generator of <e>: least image vector among coprime powers
        Perm best = e;
        Perm w = e;
        for (uint64_t k = 2; k < q; ++k) {
            w = w * e;
            if (k % p != 0 && w.images() < best.images()) best = w;
        }
        uint64_t h = best.hash();
        auto& bucket = seen[h];
        for (uint32_t i : bucket)
            if (out[i].z == best) return true;
        bucket.push_back(static_cast<uint32_t>(out.size()));
        Zuppo zp;
        zp.p = static_cast<uint32_t>(p);
        zp.q = static_cast<uint32_t>(q);
        zp.zp = best.power(static_cast<int64_t>(p));
        zp.z = std::move(best);
        out.push_back(std::move(zp));
        return true;
    });
    std::sort(out.begin(), out.end(), [](const Zuppo& a, const Zuppo& b) {
        if (a.q != b.q) return a.q < b.q;
        return a.z.images() < b.z.images();
    });
    return out;
}

// does z map H-orbits onto H-orbits (necessary for normalizing H)
bool permutes_orbits(const Perm& z, const std::vector<int32_t>& oid,
                     const std::vector<Point>& orbit_rep) {
    const size_t n = oid.size();
    thread_local std::vector<int32_t> target;
    target.assign(orbit_rep.size(), -1);
    for (size_t o = 0; o < orbit_rep.size(); ++o) target[o] = oid[z(orbit_rep[o])];
    for (size_t x = 0; x < n; ++x)
        if (oid[z(static_cast<Point>(x))] != target[oid[x]]) return false;
    return true;
}

bool normalizes(const Perm& z, const Group& h) {
    Perm zi = z.inverse();
    for (const Perm& gen : h.generators())
        if (!h.contains(zi * gen * z)) return false;
    return true;
}

// --- invariant keys ---------------------------------------------------------

struct Key {
    uint64_t order = 0;
    uint64_t action_sig = 0;
    uint64_t elem_hash = 0;
    bool operator==(const Key& o) const {
        return order == o.order && action_sig == o.action_sig && elem_hash == o.elem_hash;
    }
    bool operator<(const Key& o) const {
        if (order != o.order) return order < o.order;
        if (action_sig != o.action_sig) return action_sig < o.action_sig;
        return elem_hash < o.elem_hash;
    }
};

struct KeyHash {
    size_t operator()(const Key& k) const {
        return static_cast<size_t>(mix64(k.order ^ mix64(k.action_sig) ^ (k.elem_hash * 7)));
    }
};

Key make_key(const Group& h, uint64_t elem_key_bound) {
    Key k;
    k.order = h.order_u64();
    k.action_sig = action_signature(h);
    auto eh = h.element_cycle_hash(elem_key_bound);
    k.elem_hash = eh ? *eh : 0;
    return k;
}

// --- element table for the perfect-subgroup pair search --------------------

struct ElementTable {
    size_t n = 0;
    uint64_t m = 0;
    std::vector<Point> flat;
    std::unordered_map<uint64_t, std::vector<uint32_t>> index;

    const Point* at(uint32_t i) const { return flat.data() + size_t(i) * n; }

    Perm perm(uint32_t i) const {
        return Perm(std::vector<Point>(flat.begin() + size_t(i) * n,
                                       flat.begin() + size_t(i + 1) * n));
    }

    uint32_t lookup_images(const Point* img) const {
        uint64_t h = 1469598103934665603ull;
        for (size_t j = 0; j < n; ++j) {
            h ^= img[j];
            h *= 1099511628211ull;
        }
        auto it = index.find(h);
        if (it != index.end())
            for (uint32_t i : it->second)
                if (std::equal(img, img + n, at(i))) return i;
        throw std::logic_error("element table lookup failed");
    }

    static ElementTable build(const Group& g, uint64_t bound) {
        ElementTable t;
        t.n = g.degree();
        t.m = g.order_u64();
        if (g.order() > bound) throw TierExceededError("element table exceeds tier bound");
        t.flat.reserve(size_t(t.m) * t.n);
        t.index.reserve(size_t(t.m) * 2);
        g.for_each_element([&](const Perm& p) {
            t.flat.insert(t.flat.end(), p.images().begin(), p.images().end());
            t.index[p.hash()].push_back(static_cast<uint32_t>(t.flat.size() / t.n - 1));
            return true;
        });
        return t;
    }
};

struct UnionFind {
    std::vector<uint32_t> parent;
    explicit UnionFind(size_t n) : parent(n) {
        for (size_t i = 0; i < n; ++i) parent[i] = static_cast<uint32_t>(i);
    }
    uint32_t find(uint32_t x) {
        while (parent[x] != x) {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        return x;
    }
    void unite(uint32_t a, uint32_t b) {
        a = find(a);
        b = find(b);
        if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
};

// conjugate the i-th table element by s, into scratch
inline void conj_into(const ElementTable& t, uint32_t i, const Perm& s, std::vector<Point>& out) {
    const Point* e = t.at(i);
    out.resize(t.n);
    for (size_t x = 0; x < t.n; ++x) out[s(static_cast<Point>(x))] = s(e[x]);
}

// --- perfect subgroup search -------------------------------------------------

struct PerfectSeed {
    Group grp;
    uint64_t order;
};

std::vector<PerfectSeed> perfect_subgroup_classes(const Group& g, const LatticeOptions& opt) {
    std::vector<PerfectSeed> seeds;
    seeds.push_back({Group::trivial(g.degree()), 1});

    // solvable residual: perfect subgroups all live inside it
    Group ginf = g;
    while (true) {
        Group d = ginf.derived_subgroup();
        if (d.order() == ginf.order()) break;
        ginf = std::move(d);
    }
    if (ginf.order() == 1) return seeds;

    const uint64_t ginf_order = ginf.order_u64();
    ElementTable table = ElementTable::build(g, opt.ambient_bound());

    // conjugacy classes of elements, as index sets of the table
    UnionFind uf(table.m);
    {
        std::vector<Point> tmp;
        for (uint32_t i = 0; i < table.m; ++i)
            for (const Perm& s : g.generators()) {
                conj_into(table, i, s, tmp);
                uf.unite(i, table.lookup_images(tmp.data()));
            }
    }
    std::map<uint32_t, std::vector<uint32_t>> classes; // root -> members
    for (uint32_t i = 0; i < table.m; ++i) classes[uf.find(i)].push_back(i);

    struct Cls {
        uint32_t rep;
        std::vector<uint32_t> members;
    };
    std::vector<Cls> cls;
    for (auto& [root, members] : classes) {
        Perm rep = table.perm(root);
        if (rep.is_identity()) continue;
        if (!ginf.contains(rep)) continue; // perfect subgroups lie in the residual
        cls.push_back({root, std::move(members)});
    }

    // centralizer generators of each class representative, via Schreier
    // vectors on the conjugation orbit
    auto centralizer_of = [&](const Cls& c) {
        Group cent = Group::trivial(g.degree());
        uint64_t target = table.m / c.members.size();
        std::unordered_map<uint32_t, uint32_t> pos; // table idx -> bfs idx
        std::vector<uint32_t> order;                // bfs order of table indices
        std::vector<Perm> uword;
        order.push_back(c.rep);
        pos[c.rep] = 0;
        uword.push_back(Perm::identity(g.degree()));
        std::vector<Point> tmp;
        for (size_t i = 0; i < order.size() && cent.order() < target; ++i) {
            for (const Perm& s : g.generators()) {
                conj_into(table, order[i], s, tmp);
                uint32_t j = table.lookup_images(tmp.data());
                auto it = pos.find(j);
                if (it == pos.end()) {
                    pos[j] = static_cast<uint32_t>(order.size());
                    order.push_back(j);
                    uword.push_back(uword[i] * s);
                } else {
                    Perm cgen = uword[i] * s * uword[it->second].inverse();
                    if (!cent.contains(cgen)) {
                        cent.extend(cgen);
                        if (cent.order() >= target) break;
                    }
                }
            }
        }
        return cent;
    };

    std::vector<Group> cents;
    cents.reserve(cls.size());
    for (auto& c : cls) cents.push_back(centralizer_of(c));

    // accepted perfect classes, deduped by conjugacy
    std::vector<Group> accepted;
    std::vector<Key> accepted_keys;
    auto try_accept = [&](Group cand) {
        Key k = make_key(cand, opt.elem_key_bound);
        for (size_t i = 0; i < accepted.size(); ++i) {
            if (!(accepted_keys[i] == k)) continue;
            if (subgroup_conjugator(g, cand, accepted[i])) return;
        }
        accepted.push_back(std::move(cand));
        accepted_keys.push_back(k);
    };

    // the residual itself is perfect
    try_accept(ginf);

    std::vector<Point> tmp;
    for (size_t ai = 0; ai < cls.size(); ++ai) {
        // a = rep of the class with the larger centralizer to keep orbit
        // counts low; pair loop runs over unordered class pairs
        for (size_t bi = ai; bi < cls.size(); ++bi) {
            size_t small = cents[ai].order() >= cents[bi].order() ? ai : bi;
            size_t big = small == ai ? bi : ai;
            const Group& ca = cents[small];
            Perm a = table.perm(cls[small].rep);
            const auto& bmembers = cls[big].members;

            // orbits of C(a) on the b-class
            std::unordered_map<uint32_t, uint32_t> bpos;
            bpos.reserve(bmembers.size() * 2);
            for (uint32_t i = 0; i < bmembers.size(); ++i) bpos[bmembers[i]] = i;
            UnionFind buf(bmembers.size());
            for (uint32_t i = 0; i < bmembers.size(); ++i)
                for (const Perm& s : ca.generators()) {
                    conj_into(table, bmembers[i], s, tmp);
                    buf.unite(i, bpos.at(table.lookup_images(tmp.data())));
                }

            for (uint32_t i = 0; i < bmembers.size(); ++i) {
                if (buf.find(i) != i) continue;
                Perm b = table.perm(bmembers[i]);
                Group cand(g.degree(), {a, b});
                uint64_t o = cand.order_u64();
                if (o < 60 || o % 4 != 0 || ginf_order % o != 0) continue;
                if (prime_divisors(o).size() < 3) continue;
                // <a,b> is perfect iff both generators lie in the normal
                // closure of [a,b]
                Perm comm = a.inverse() * b.inverse() * a * b;
                Group d(g.degree(), {comm});
                std::vector<Perm> work = d.generators();
                while (!work.empty()) {
                    Perm h = std::move(work.back());
                    work.pop_back();
                    for (const Perm* s : {&a, &b}) {
                        Perm cj = h.conj(*s);
                        if (!d.contains(cj)) {
                            d.extend(cj);
                            work.push_back(std::move(cj));
                        }
                    }
                }
                if (d.order() != cand.order()) continue;
                try_accept(std::move(cand));
            }
        }
    }

    for (auto& acc : accepted)
        seeds.push_back({std::move(acc), 0});
    for (auto& s : seeds)
        s.order = s.grp.order_u64();
    std::sort(seeds.begin(), seeds.end(), [](const PerfectSeed& x, const PerfectSeed& y) {
        if (x.order != y.order) return x.order < y.order;
        return action_signature(x.grp) < action_signature(y.grp);
    });
    return seeds;
}

// --- cyclic extension lattice over one perfect seed --------------------------

struct PendingClass {
    std::vector<Perm> gens;
    uint64_t order;
    Key key;
};

// lexicographically least generator of <w>, w of prime-power order q = p^m
Perm canonical_cyclic_generator(const Perm& w, uint32_t p, uint32_t q) {
    Perm best = w;
    Perm acc = w;
    for (uint32_t k = 2; k < q; ++k) {
        acc = acc * w;
        if (k % p != 0 && acc.images() < best.images()) best = acc;
    }
    return best;
}

struct ZuppoIndex {
    std::unordered_map<uint64_t, std::vector<uint32_t>> by_hash;

    static ZuppoIndex build(const std::vector<Zuppo>& zs) {
        ZuppoIndex zi;
        zi.by_hash.reserve(zs.size() * 2);
        for (uint32_t i = 0; i < zs.size(); ++i) zi.by_hash[zs[i].z.hash()].push_back(i);
        return zi;
    }

    uint32_t lookup(const std::vector<Zuppo>& zs, const Perm& canon) const {
        auto it = by_hash.find(canon.hash());
        if (it != by_hash.end())
            for (uint32_t i : it->second)
                if (zs[i].z == canon) return i;
        throw std::logic_error("zuppo index lookup failed");
    }
};

void extend_lattice_over_seed(const Group& g, const Group& seed,
                              const std::vector<Zuppo>& all_zuppos,
                              const ZuppoIndex& zindex,
                              const LatticeOptions& opt,
                              std::vector<SubgroupClass>& out) {
    const size_t n = g.degree();

    // ambient for this seed: N_G(seed), generated by the normalizing zuppos
    Group ambient = g;
    std::vector<uint32_t> zidx; // zuppos lying in the ambient
    if (seed.order() > 1) {
        auto oid = seed.orbit_ids();
        std::vector<Point> reps;
        {
            int32_t cnt = *std::max_element(oid.begin(), oid.end()) + 1;
            reps.assign(cnt, 0);
            std::vector<char> got(cnt, 0);
            for (size_t x = 0; x < n; ++x)
                if (!got[oid[x]]) {
                    got[oid[x]] = 1;
                    reps[oid[x]] = static_cast<Point>(x);
                }
        }
        std::vector<char> norm(all_zuppos.size(), 0);
        parallel_for(all_zuppos.size(), [&](size_t i) {
            if (permutes_orbits(all_zuppos[i].z, oid, reps) && normalizes(all_zuppos[i].z, seed))
                norm[i] = 1;
        });
        Group na = Group::trivial(n);
        for (size_t i = 0; i < all_zuppos.size(); ++i)
            if (norm[i] && !na.contains(all_zuppos[i].z)) na.extend(all_zuppos[i].z);
        ambient = std::move(na);
        for (uint32_t i = 0; i < all_zuppos.size(); ++i)
            if (norm[i]) zidx.push_back(i);
    } else {
        zidx.resize(all_zuppos.size());
        for (uint32_t i = 0; i < zidx.size(); ++i) zidx[i] = i;
    }

    const uint64_t seed_order = seed.order_u64();

    struct Accepted {
        std::vector<Perm> gens;
        uint64_t order;
        Key key;
        uint64_t normalizer_order = 0;
    };
    std::vector<Accepted> accepted;
    std::unordered_map<Key, std::vector<uint32_t>, KeyHash> buckets;

    auto seed_gens = seed.generators();
    {
        Accepted a;
        a.gens = seed_gens;
        a.order = seed_order;
        a.key = make_key(seed.order() > 1 ? seed : Group::trivial(n), opt.elem_key_bound);
        accepted.push_back(a);
        buckets[a.key].push_back(0);
    }

    std::vector<uint32_t> frontier{0};

    while (!frontier.empty()) {
        std::vector<uint32_t> next;
        for (uint32_t ci : frontier) {
            Group H(n, accepted[ci].gens);
            auto oid = H.orbit_ids();
            std::vector<Point> reps;
            {
                int32_t cnt = *std::max_element(oid.begin(), oid.end()) + 1;
                reps.assign(cnt, 0);
                std::vector<char> got(cnt, 0);
                for (size_t x = 0; x < n; ++x)
                    if (!got[oid[x]]) {
                        got[oid[x]] = 1;
                        reps[oid[x]] = static_cast<Point>(x);
                    }
            }

            // sweep: which ambient zuppos normalize H
            std::vector<char> norm(zidx.size(), 0);
            parallel_for(zidx.size(), [&](size_t k) {
                const Zuppo& zu = all_zuppos[zidx[k]];
                if (permutes_orbits(zu.z, oid, reps) && normalizes(zu.z, H)) norm[k] = 1;
            });

            // N_G(H) = <normalizing zuppos>
            Group N = Group::trivial(n);
            for (size_t k = 0; k < zidx.size(); ++k)
                if (norm[k] && !N.contains(all_zuppos[zidx[k]].z)) N.extend(all_zuppos[zidx[k]].z);
            accepted[ci].normalizer_order = N.order_u64();

            // valid extension zuppos: z outside H, z^p inside
            std::vector<uint32_t> valid; // global zuppo indices
            for (size_t k = 0; k < zidx.size(); ++k) {
                if (!norm[k]) continue;
                const Zuppo& zu = all_zuppos[zidx[k]];
                if (H.contains(zu.z)) continue;
                if (!H.contains(zu.zp)) continue;
                valid.push_back(zidx[k]);
            }

            // reduce the valid set by N-conjugation on zuppos: <H,z>^s = <H,z^s>
            std::unordered_map<uint32_t, uint32_t> vpos;
            vpos.reserve(valid.size() * 2);
            for (uint32_t i = 0; i < valid.size(); ++i) vpos[valid[i]] = i;
            UnionFind vuf(valid.size());
            for (uint32_t i = 0; i < valid.size(); ++i) {
                const Zuppo& zu = all_zuppos[valid[i]];
                for (const Perm& s : N.generators()) {
                    Perm canon = canonical_cyclic_generator(zu.z.conj(s), zu.p, zu.q);
                    uint32_t gj = zindex.lookup(all_zuppos, canon);
                    auto it = vpos.find(gj);
                    if (it != vpos.end()) vuf.unite(i, it->second);
                }
            }

            // close orbit representatives, drop exact duplicates
            struct Cand {
                Group grp;
                uint64_t order;
            };
            std::vector<Cand> cands;
            for (uint32_t i = 0; i < valid.size(); ++i) {
                if (vuf.find(i) != i) continue;
                const Zuppo& zu = all_zuppos[valid[i]];
                std::vector<Perm> gens = accepted[ci].gens;
                gens.push_back(zu.z);
                Group cand(n, std::move(gens));
                uint64_t o = cand.order_u64();
                bool dup = false;
                for (const Cand& c : cands) {
                    if (c.order == o && c.grp.contains(zu.z)) {
                        dup = true;
                        break;
                    }
                }
                if (!dup) cands.push_back({std::move(cand), o});
            }

            // global dedup and acceptance
            for (uint32_t i = 0; i < cands.size(); ++i) {
                Key key = make_key(cands[i].grp, opt.elem_key_bound);
                bool known = false;
                auto it = buckets.find(key);
                if (it != buckets.end()) {
                    for (uint32_t j : it->second) {
                        Group other(n, accepted[j].gens);
                        if (subgroup_conjugator(ambient, cands[i].grp, other)) {
                            known = true;
                            break;
                        }
                    }
                }
                if (known) continue;
                Accepted a;
                a.gens = cands[i].grp.small_generating_set();
                if (a.gens.empty()) a.gens = cands[i].grp.generators();
                a.order = cands[i].order;
                a.key = key;
                uint32_t idx = static_cast<uint32_t>(accepted.size());
                accepted.push_back(std::move(a));
                buckets[key].push_back(idx);
                next.push_back(idx);
            }
        }
        if (opt.verbose)
            std::fprintf(stderr, "[lattice] seed order %llu: layer done, %zu classes so far\n",
                         static_cast<unsigned long long>(seed_order), accepted.size());
        frontier = std::move(next);
    }

    for (auto& a : accepted) {
        SubgroupClass sc;
        sc.gens = std::move(a.gens);
        sc.order = a.order;
        sc.normalizer_order = a.normalizer_order;
        sc.class_size = g.order() / a.normalizer_order;
        sc.seed_order = seed_order;
        out.push_back(std::move(sc));
    }
}

} // namespace

SubgroupClassList subgroup_classes(const Group& g, const LatticeOptions& opt) {
    SubgroupClassList result;
    result.degree = g.degree();
    result.ambient_order = g.order();

    if (g.order() > opt.ambient_bound())
        throw TierExceededError("subgroup classification: ambient order " + g.order().str() +
                                " exceeds tier bound " + std::to_string(opt.ambient_bound()) +
                                (opt.tier == Tier::A ? " (retry with tier B)" : ""));

    auto zuppos = enumerate_zuppos(g, opt.ambient_bound());
    auto zindex = ZuppoIndex::build(zuppos);
    if (opt.verbose)
        std::fprintf(stderr, "[lattice] %zu zuppos in ambient of order %s\n", zuppos.size(),
                     g.order().str().c_str());

    auto seeds = perfect_subgroup_classes(g, opt);
    if (opt.verbose) std::fprintf(stderr, "[lattice] %zu perfect seeds\n", seeds.size());

    for (auto& seed : seeds)
        extend_lattice_over_seed(g, seed.grp, zuppos, zindex, opt, result.classes);

    std::sort(result.classes.begin(), result.classes.end(),
              [](const SubgroupClass& a, const SubgroupClass& b) {
                  if (a.order != b.order) return a.order < b.order;
                  if (a.seed_order != b.seed_order) return a.seed_order < b.seed_order;
                  if (a.class_size != b.class_size) return a.class_size < b.class_size;
                  std::vector<std::vector<Point>> ia, ib;
                  for (const Perm& p : a.gens) ia.push_back(p.images());
                  for (const Perm& p : b.gens) ib.push_back(p.images());
                  return ia < ib;
              });
    return result;
}

} // namespace dpl
