// Shared helpers for the unit tests.
#pragma once

#include <random>
#include <string>
#include <utility>
#include <vector>

#include "fintop/poset.hpp"
#include "oracles.hpp"

namespace testing_support {

/// Random acyclic relation data: elements "q0".."q<n-1>" ranked by a shuffled
/// permutation, each pair related with probability `density` (low rank below).
struct RawOrder
{
    std::vector<std::string> ids;
    std::vector<std::pair<int, int>> pairs; // indices into ids
};

inline RawOrder raw_order(std::mt19937_64& gen, int n, double density)
{
    RawOrder r;
    for (int i = 0; i < n; ++i)
        r.ids.push_back("q" + std::to_string(i));
    std::vector<int> rank(n);
    for (int i = 0; i < n; ++i)
        rank[i] = i;
    std::shuffle(rank.begin(), rank.end(), gen);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (rank[a] < rank[b] && coin(gen) < density)
                r.pairs.emplace_back(a, b);
    return r;
}

inline fintop::Poset to_poset(const RawOrder& r)
{
    std::vector<std::pair<std::string, std::string>> rel;
    for (auto [a, b] : r.pairs)
        rel.emplace_back(r.ids[a], r.ids[b]);
    return fintop::Poset::from_relations(r.ids, rel);
}

/// Oracle order matrix re-indexed to the poset's element order.
inline oracle::Order oracle_order(const RawOrder& r, const fintop::Poset& p)
{
    const auto raw = oracle::closure(r.ids.size(), r.pairs);
    const std::size_t n = r.ids.size();
    oracle::Order out(n, std::vector<bool>(n));
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = 0; b < n; ++b)
            out[p.index_of(r.ids[a])][p.index_of(r.ids[b])] = raw[a][b];
    return out;
}

} // namespace testing_support
