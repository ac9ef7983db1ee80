/**
 * Finite posets and subsets of them.
 *
 * A Poset is immutable once built. Elements carry opaque string identifiers
 * and are stored in identifier order, so an element's index is its rank
 * among the identifiers. The order is kept twice: as the Hasse diagram and
 * as a reflexive transitive closure (one bitset per element for the
 * down-set U_x and one for the up-set F_x).
 */
#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/dynamic_bitset.hpp>

namespace fintop {

using Index = std::uint32_t;
using Bits = boost::dynamic_bitset<std::uint64_t>;

/// Indices of the set bits, ascending.
std::vector<Index> bit_indices(const Bits& bits);

class Poset
{
public:
    /// The empty poset.
    Poset();

    /**
     * Build a poset from element identifiers and an arbitrary set of strict
     * relations (a, b) meaning a < b. The relations are closed transitively
     * and reduced to the Hasse diagram; endpoints not listed in `elements`
     * are added. Throws InputError on a cycle (including a < a) or an empty
     * identifier.
     */
    static Poset from_relations(std::vector<std::string> elements,
                                const std::vector<std::pair<std::string, std::string>>& relations);

    /**
     * Build from identifiers already in strictly increasing order and the
     * reflexive down-sets, which must be transitively closed and
     * antisymmetric (checked).
     */
    static Poset from_closure(std::vector<std::string> sorted_ids, std::vector<Bits> down_sets);

    std::size_t size() const;
    bool empty() const { return size() == 0; }

    const std::string& id(Index x) const;
    const std::vector<std::string>& ids() const;
    std::optional<Index> find(std::string_view id) const;
    /// Throws InputError for an unknown identifier.
    Index index_of(std::string_view id) const;

    bool leq(Index a, Index b) const;
    bool less(Index a, Index b) const { return a != b && leq(a, b); }
    bool comparable(Index a, Index b) const { return leq(a, b) || leq(b, a); }

    /// U_x as a bitset over the element indices.
    const Bits& down(Index x) const;
    /// F_x as a bitset over the element indices.
    const Bits& up(Index x) const;

    const std::vector<Index>& upper_covers(Index x) const;
    const std::vector<Index>& lower_covers(Index x) const;

    /// Cover pairs (a, b), b covers a, sorted.
    std::vector<std::pair<Index, Index>> hasse_edges() const;

    /// Number of Hasse edges.
    std::size_t hasse_size() const;

    Bits empty_bits() const { return Bits(size()); }
    Bits full_bits() const;

    /// Same identifiers and same order relation.
    friend bool operator==(const Poset& a, const Poset& b);

    /// True when both handles share the same underlying storage.
    bool shares_storage(const Poset& other) const { return data_ == other.data_; }

private:
    struct Data;
    explicit Poset(std::shared_ptr<const Data> data);

    std::shared_ptr<const Data> data_;
};

/// A subset of a poset's elements. Holds its parent by (shared) value.
class ElementSet
{
public:
    explicit ElementSet(Poset parent);
    ElementSet(Poset parent, Bits members);

    /// Throws InputError for unknown identifiers.
    static ElementSet from_ids(Poset parent, const std::vector<std::string>& ids);

    const Poset& parent() const { return parent_; }
    const Bits& bits() const { return members_; }

    bool contains(Index x) const;
    bool contains(std::string_view id) const;
    std::size_t size() const { return members_.count(); }
    bool empty() const { return members_.none(); }

    std::vector<Index> indices() const { return bit_indices(members_); }
    std::vector<std::string> ids() const;

    void insert(Index x);
    void erase(Index x);

    friend bool operator==(const ElementSet& a, const ElementSet& b);

private:
    Poset parent_;
    Bits members_;
};

/// U_x = {z : z <= x}.
ElementSet down_set(const Poset& p, Index x);
ElementSet down_set(const Poset& p, std::string_view x);
/// F_x = {z : z >= x}.
ElementSet up_set(const Poset& p, Index x);
ElementSet up_set(const Poset& p, std::string_view x);
/// U_x without x.
ElementSet punctured_down(const Poset& p, Index x);
ElementSet punctured_down(const Poset& p, std::string_view x);
/// F_x without x.
ElementSet punctured_up(const Poset& p, Index x);
ElementSet punctured_up(const Poset& p, std::string_view x);

/// Union of the F_a, a in A: the smallest up-set containing A.
ElementSet closure(const ElementSet& a);
/// Union of the U_a, a in A: the smallest down-set containing A.
ElementSet open_hull(const ElementSet& a);

bool is_down_set(const ElementSet& a);
bool is_up_set(const ElementSet& a);

/// Same elements, reversed order.
Poset opposite(const Poset& p);

/// Kahn's algorithm, smallest available identifier first.
std::vector<Index> linear_extension(const Poset& p);

/// Components of the comparability graph of the induced subposet, ordered by
/// their smallest element.
std::vector<ElementSet> connected_components(const ElementSet& a);

/// Standalone poset on A with the restricted order (Hasse diagram recomputed).
Poset induced_subposet(const ElementSet& a);
Poset induced_subposet(const Poset& p, const Bits& members);

/// Minimal / maximal elements.
std::vector<Index> minimal_elements(const Poset& p);
std::vector<Index> maximal_elements(const Poset& p);

/// Order isomorphism test (backtracking over degree-compatible candidates).
bool isomorphic(const Poset& a, const Poset& b);

} // namespace fintop
