/**
 * Seeded generators for posets, maps, relations, complexes and covers.
 *
 * All randomness flows through Rng, which derives values from the raw
 * 64-bit output of std::mt19937_64 without going through the standard
 * distributions, so every sequence is identical across standard libraries.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <string>
#include <string_view>
#include <vector>

#include "fintop/complex.hpp"
#include "fintop/cylinder.hpp"
#include "fintop/nerve.hpp"
#include "fintop/poset.hpp"

namespace fintop {

class Rng
{
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next() { return engine_(); }
    /// Uniform in [0, n); n > 0.
    std::uint64_t below(std::uint64_t n);
    /// Uniform in [lo, hi].
    std::uint64_t between(std::uint64_t lo, std::uint64_t hi) { return lo + below(hi - lo + 1); }
    /// Uniform in [0, 1) with 53 random bits.
    double uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }
    bool chance(double p) { return uniform() < p; }

    template <typename T>
    void shuffle(std::vector<T>& v)
    {
        for (std::size_t i = v.size(); i > 1; --i)
            std::swap(v[i - 1], v[below(i)]);
    }

private:
    std::mt19937_64 engine_;
};

/// Identifiers prefix + zero-padded number, so that numeric and identifier order agree.
std::vector<std::string> numbered_ids(std::string_view prefix, std::size_t n);

/// Random order on n elements: elements are ranked by a random permutation
/// and each pair is related (lower rank below) with probability `density`.
Poset random_poset(Rng& rng, std::size_t n, double density, std::string_view prefix = "e");

/// Random order-preserving map, built along a linear extension of the
/// source. Falls back to a constant map when the target has no room.
MonotoneMap random_monotone_map(Rng& rng, const Poset& source, const Poset& target);

/// Complex generated by `facets` random facets of dimension at most `max_dim`.
SimplicialComplex random_complex(Rng& rng, std::size_t vertices, std::size_t facets, std::size_t max_dim,
                                 std::string_view prefix = "v");

/// Adds `extra` elements to p, each a beat point of the result (a new element
/// gets a single upper or lower cover). Ids continue with `prefix`.
Poset beat_extension(Rng& rng, const Poset& p, std::size_t extra, std::string_view prefix = "n");

struct CertifiedRelation
{
    Relation relation;
    /// "monotone-map", "comparability" or "retraction".
    std::string family;
};

/**
 * A relation whose hypotheses on both sides are certified trivial by the
 * oracle. Candidates from three families are drawn until one is certified;
 * uncertified candidates are discarded. Returns nullopt after `attempts`
 * failed draws.
 */
std::optional<CertifiedRelation> random_certified_relation(Rng& rng, std::size_t max_size = 6,
                                                           std::size_t attempts = 1000);

/// Random poset (at most max_size elements) with a cover certified Good.
std::optional<PosetCover> random_good_cover(Rng& rng, std::size_t max_size = 12, std::size_t attempts = 1000);

/// Random face-poset cover certified QuasiGood and not Good.
std::optional<PosetCover> random_quasi_good_cover(Rng& rng, std::size_t max_size = 14, std::size_t attempts = 1000);

/// Random partition of the facets of `base` into at most `max_parts` groups,
/// each group spanning a part; kept once certified QuasiGood (or Good).
std::optional<ComplexCover> random_quasi_good_complex_cover(Rng& rng, const SimplicialComplex& base,
                                                            std::size_t max_parts = 3, std::size_t attempts = 1000);

} // namespace fintop
