#ifndef DPL_TESTS_ORACLE_HPP
#define DPL_TESTS_ORACLE_HPP

/*
 * Brute-force subgroup classification oracle, independent of the production
 * path: enumerate every subgroup of a small group by iterated one-element
 * closures over an explicit Cayley table, then reduce by conjugacy.  Only
 * usable for groups of order up to a couple of thousand.
 */

#include "dpl/permgroup.hpp"

#include <cstdint>
#include <map>
#include <unordered_map>
#include <vector>

namespace dpl_tests {

struct BruteForceClasses {
    size_t class_count = 0;
    size_t total_subgroups = 0;
    std::map<uint64_t, size_t> classes_per_order;   // order -> number of classes
    std::map<uint64_t, size_t> subgroups_per_order; // order -> number of subgroups
};

inline BruteForceClasses brute_force_subgroup_classes(const dpl::Group& g,
                                                      uint64_t order_bound = 2048) {
    using dpl::Perm;
    if (g.order() > order_bound) throw std::runtime_error("oracle: group too large");
    const auto elems = g.elements();
    const size_t n = elems.size();

    std::unordered_map<uint64_t, std::vector<uint32_t>> index;
    for (uint32_t i = 0; i < n; ++i) index[elems[i].hash()].push_back(i);
    auto idx_of = [&](const Perm& p) -> uint32_t {
        for (uint32_t i : index.at(p.hash()))
            if (elems[i] == p) return i;
        throw std::logic_error("oracle: element not found");
    };

    // Cayley table and conjugation tables for the ambient generators
    std::vector<uint32_t> table(n * n);
    for (size_t i = 0; i < n; ++i)
        for (size_t j = 0; j < n; ++j) table[i * n + j] = idx_of(elems[i] * elems[j]);
    uint32_t id_idx = idx_of(Perm::identity(g.degree()));

    std::vector<std::vector<uint32_t>> conj_tables;
    for (const Perm& s : g.generators()) {
        std::vector<uint32_t> ct(n);
        for (size_t i = 0; i < n; ++i) ct[i] = idx_of(elems[i].conj(s));
        conj_tables.push_back(std::move(ct));
    }

    using Bits = std::vector<uint64_t>;
    const size_t words = (n + 63) / 64;
    auto bit = [&](const Bits& b, uint32_t i) { return (b[i >> 6] >> (i & 63)) & 1; };
    auto setbit = [](Bits& b, uint32_t i) { b[i >> 6] |= 1ull << (i & 63); };
    auto hash_bits = [&](const Bits& b) {
        uint64_t h = 14695981039346656037ull;
        for (uint64_t w : b) {
            h ^= w;
            h *= 1099511628211ull;
        }
        return h;
    };

    struct Sub {
        Bits bits;
        std::vector<uint32_t> gens;
        uint64_t order;
    };

    // closure of a generator list by Cayley-graph search from the identity
    auto close = [&](const std::vector<uint32_t>& gens) {
        Sub s;
        s.bits.assign(words, 0);
        std::vector<uint32_t> queue{id_idx};
        setbit(s.bits, id_idx);
        size_t count = 1;
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            for (uint32_t gen : gens) {
                uint32_t next = table[queue[qi] * n + gen];
                if (!bit(s.bits, next)) {
                    setbit(s.bits, next);
                    queue.push_back(next);
                    ++count;
                }
            }
        }
        s.gens = gens;
        s.order = count;
        return s;
    };

    std::unordered_map<uint64_t, std::vector<uint32_t>> seen; // bits hash -> sub idx
    std::vector<Sub> subs;
    auto add = [&](Sub s) -> bool {
        uint64_t h = hash_bits(s.bits);
        auto& bucket = seen[h];
        for (uint32_t i : bucket)
            if (subs[i].bits == s.bits) return false;
        bucket.push_back(static_cast<uint32_t>(subs.size()));
        subs.push_back(std::move(s));
        return true;
    };

    add(close({}));
    for (uint32_t e = 0; e < n; ++e) add(close({e}));

    // iterated one-element extensions reach every subgroup
    for (size_t at = 0; at < subs.size(); ++at) {
        Bits done = subs[at].bits; // skip whole cosets of elements already tried
        for (uint32_t e = 0; e < n; ++e) {
            if (bit(done, e)) continue;
            std::vector<uint32_t> gens = subs[at].gens;
            gens.push_back(e);
            Sub k = close(gens);
            // mark the coset H*e as covered: <H, he> = <H, e>
            for (uint32_t i = 0; i < n; ++i)
                if (bit(subs[at].bits, i)) setbit(done, table[i * n + e]);
            add(std::move(k));
        }
    }

    // conjugacy classes of subgroups under the ambient generators
    std::vector<int32_t> cls(subs.size(), -1);
    size_t nclasses = 0;
    BruteForceClasses out;
    for (size_t i = 0; i < subs.size(); ++i) {
        if (cls[i] >= 0) continue;
        cls[i] = static_cast<int32_t>(nclasses);
        std::vector<size_t> queue{i};
        for (size_t qi = 0; qi < queue.size(); ++qi) {
            for (const auto& ct : conj_tables) {
                Bits img(words, 0);
                for (uint32_t e = 0; e < n; ++e)
                    if (bit(subs[queue[qi]].bits, e)) setbit(img, ct[e]);
                uint64_t h = hash_bits(img);
                for (uint32_t j : seen.at(h)) {
                    if (subs[j].bits == img && cls[j] < 0) {
                        cls[j] = static_cast<int32_t>(nclasses);
                        queue.push_back(j);
                    }
                }
            }
        }
        ++out.classes_per_order[subs[i].order];
        ++nclasses;
    }
    out.class_count = nclasses;
    out.total_subgroups = subs.size();
    for (const auto& s : subs) ++out.subgroups_per_order[s.order];
    return out;
}

} // namespace dpl_tests

#endif
