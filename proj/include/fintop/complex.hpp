/**
 * Simplicial complexes, regular CW complexes with simplex-shaped cells, and
 * the two functors between posets and complexes: the order complex (chains
 * of a poset) and the face poset (simplices or cells ordered by inclusion).
 */
#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "fintop/integer_matrix.hpp"
#include "fintop/poset.hpp"

namespace fintop {

/// Sorted vertex indices of a simplex.
using Simplex = std::vector<Index>;

class SimplicialComplex
{
public:
    /// The empty complex.
    SimplicialComplex();

    /// Throws InputError on an empty facet or a repeated vertex in a facet.
    static SimplicialComplex from_facets(const std::vector<std::vector<std::string>>& facets);

    /// Downward closure of `simplices` over the given vertex identifiers,
    /// which must be strictly increasing. Vertices that appear in no simplex
    /// become isolated vertices.
    static SimplicialComplex from_simplices(std::vector<std::string> sorted_vertices,
                                            const std::vector<Simplex>& simplices);

    const std::vector<std::string>& vertices() const;
    std::size_t num_vertices() const { return vertices().size(); }

    /// -1 for the empty complex.
    int dimension() const;

    /// k-simplices in lexicographic order of their vertex indices.
    const std::vector<Simplex>& simplices(int k) const;
    std::size_t size() const;
    std::vector<std::size_t> f_vector() const;
    std::vector<Simplex> facets() const;

    bool contains(const Simplex& s) const;
    /// Position of `s` within simplices(s.size() - 1).
    std::optional<std::size_t> position(const Simplex& s) const;

    std::vector<std::string> labels(const Simplex& s) const;
    /// "{a,b,c}"
    std::string label(const Simplex& s) const;
    /// Throws InputError for unknown vertices.
    Simplex simplex_of(const std::vector<std::string>& vertex_ids) const;

    friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b);

private:
    struct Data;
    explicit SimplicialComplex(std::shared_ptr<const Data> data);
    static SimplicialComplex assemble(std::vector<std::string> vertices, std::vector<Simplex> all);

    friend SimplicialComplex order_complex(const Poset& p);

    std::shared_ptr<const Data> data_;
};

/// "{a,b,c}" for vertex identifiers in the given order.
std::string simplex_label(const std::vector<std::string>& vertex_ids);

/// Non-empty chains of p. Vertex i of the result is element i of p.
SimplicialComplex order_complex(const Poset& p);

/// Face poset together with the simplex behind each poset element.
struct FacePoset
{
    Poset poset;
    std::vector<Simplex> cells; ///< indexed by poset element
};

FacePoset face_poset_with_cells(const SimplicialComplex& k);
/// Simplices ordered by inclusion; element identifiers are simplex labels.
Poset face_poset(const SimplicialComplex& k);

/// X' = face poset of the order complex.
Poset barycentric_poset(const Poset& p);
/// K' = order complex of the face poset.
SimplicialComplex barycentric_complex(const SimplicialComplex& k);

/**
 * Regular CW complex given by its face poset, restricted to complexes whose
 * closed cells are simplices: the poset is graded by `dim` (every Hasse edge
 * raises dimension by one) and every down-set U_c is isomorphic to the face
 * poset of a dim(c)-simplex.
 */
class RegularCWComplex
{
public:
    /// Throws ValidationError naming the offending cell.
    RegularCWComplex(Poset face_poset, std::vector<int> dims);

    const Poset& face_poset() const { return face_poset_; }
    int dim(Index cell) const { return dims_.at(cell); }
    const std::vector<int>& dims() const { return dims_; }
    int dimension() const;
    std::vector<std::size_t> f_vector() const;

private:
    Poset face_poset_;
    std::vector<int> dims_;
};

/// Validates and wraps; `dims` maps element identifiers to cell dimensions.
RegularCWComplex cw_from_face_poset(const Poset& p, const std::map<std::string, int>& dims);
/// Dimensions inferred as (length of the longest chain in U_c) - 1.
RegularCWComplex cw_from_face_poset(const Poset& p);
Poset face_poset_cw(const RegularCWComplex& c);

/// Checks the simplex-cell conditions without throwing; empty string when valid.
std::string validate_simplex_cells(const Poset& p, const std::vector<int>& dims);

/// Boundary matrices with the lexicographic vertex orientation.
struct ChainComplex
{
    /// Number of k-cells.
    std::vector<std::size_t> ranks;
    /// boundaries[k] maps C_k to C_{k-1}; boundaries[0] is an empty 0 x n_0 matrix.
    std::vector<IntegerMatrix> boundaries;

    /// True when every composite of consecutive boundaries is zero.
    bool boundary_squares_to_zero() const;
};

/// Throws std::logic_error if the boundary does not square to zero.
ChainComplex chain_complex(const SimplicialComplex& k);

} // namespace fintop
