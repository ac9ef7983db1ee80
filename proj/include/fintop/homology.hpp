/**
 * Integer homology of simplicial complexes, posets (through their order
 * complex) and regular CW complexes (through the order complex of their face
 * poset, i.e. the barycentric subdivision).
 *
 * The main path is a Smith normal form over exact integers. Two independent
 * rank computations are exposed for cross-checking: fraction-free Bareiss
 * elimination over the rationals and Gaussian elimination modulo a prime.
 */
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "fintop/complex.hpp"
#include "fintop/integer_matrix.hpp"

namespace fintop {

struct SmithForm
{
    /// Non-zero invariant factors d1 | d2 | ..., all positive.
    std::vector<Integer> invariant_factors;
    std::size_t rank = 0;
};

/**
 * Invariant factors of an integer matrix. Unit pivots are eliminated in a
 * sparse pass; whatever remains (or the whole matrix when it has at most
 * `dense_threshold` columns) goes through a dense reduction that always
 * pivots on the smallest non-zero absolute value.
 */
SmithForm smith_normal_form(const IntegerMatrix& m, std::size_t dense_threshold = 200);

/// Rank over Q by fraction-free (Bareiss) elimination.
std::size_t rational_rank(const IntegerMatrix& m);

/// Rank over Z/p, p prime and below 2^31.
std::size_t rank_mod_p(const IntegerMatrix& m, std::uint32_t p);

struct HomologyGroup
{
    std::size_t betti = 0;
    /// Torsion coefficients, each >= 2, ascending.
    std::vector<Integer> torsion;

    bool is_zero() const { return betti == 0 && torsion.empty(); }
    friend bool operator==(const HomologyGroup& a, const HomologyGroup& b) = default;
};

struct HomologyProfile
{
    /// groups[k] = H_k; trailing zero groups are trimmed.
    std::vector<HomologyGroup> groups;
    bool reduced = false;
    /// Reduced homology of the empty space has H_{-1} = Z.
    bool empty_space = false;

    const HomologyGroup& degree(std::size_t k) const;
    std::size_t betti(std::size_t k) const { return degree(k).betti; }
    /// Every (reduced, if `reduced`) group vanishes.
    bool is_zero() const;
    /// Smallest degree with a non-zero group; -1 for the empty space's H_{-1}.
    std::optional<int> first_nonzero_degree() const;
    /// e.g. "Z^2 + Z/2", "0"
    std::string describe(std::size_t k) const;
    std::string summary() const;

    friend bool operator==(const HomologyProfile& a, const HomologyProfile& b) = default;
};

/// Re-verifies that the boundary squares to zero (std::logic_error otherwise).
HomologyProfile homology(const ChainComplex& c, bool reduced = false);
HomologyProfile homology(const SimplicialComplex& k, bool reduced = false);
HomologyProfile homology(const Poset& p, bool reduced = false);
HomologyProfile homology(const RegularCWComplex& c, bool reduced = false);

/// Unreduced Betti numbers from rational ranks only.
std::vector<std::size_t> rational_betti_numbers(const ChainComplex& c);
/// Unreduced Betti numbers over Z/p.
std::vector<std::size_t> betti_numbers_mod_p(const ChainComplex& c, std::uint32_t p);

long long euler_characteristic(const SimplicialComplex& k);
long long euler_characteristic(const Poset& p);
/// Alternating sum of unreduced Betti numbers.
long long euler_characteristic(const HomologyProfile& h);

struct HomologyComparison
{
    bool equal = true;
    std::vector<std::string> differences;
};

/// Degree-wise comparison of Betti numbers and torsion. Both profiles
/// should use the same reduced flag.
HomologyComparison same_homology(const HomologyProfile& a, const HomologyProfile& b);

/// Connected components by graph traversal of the 1-skeleton.
std::size_t count_components(const SimplicialComplex& k);

} // namespace fintop
