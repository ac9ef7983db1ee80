/**
 * Covers of posets and complexes, their nerves, and the completion of the
 * nerve: the poset of pairs (J, C) with C a connected component of the
 * non-empty intersection W_J, ordered by (J,C) <= (J',C') iff J is contained
 * in J' and C' is contained in C.
 *
 * Nerve-type equivalences are verified by building the relation between the
 * covered poset and the (opposite of the) nerve object and handing it to
 * verify_relation_equivalence, so every Certified report carries gamma-collapse
 * certificates.
 */
#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fintop/complex.hpp"
#include "fintop/cylinder.hpp"
#include "fintop/homology.hpp"
#include "fintop/poset.hpp"
#include "fintop/reduction.hpp"

namespace fintop {

/// A non-empty intersection W_J of cover parts. `parts` is sorted.
struct Intersection
{
    std::vector<std::size_t> parts;
    Bits members;
};

/**
 * Every J with non-empty W_J, grown level by level from the singletons (a set
 * J + {j} is only tried when W_J is non-empty), ordered by size and then
 * lexicographically. Each face's facets are checked to be present.
 */
std::vector<Intersection> enumerate_intersections(const std::vector<Bits>& parts);

/// "{a,b}" from part names.
std::string index_label(const std::vector<std::string>& names, const std::vector<std::size_t>& parts);

/// Cover of a poset by down-sets. Parts are kept sorted by name.
class PosetCover
{
public:
    /// Throws InputError naming the part when a part is not a down-set, when
    /// the parts miss an element, or when names are empty or repeated.
    PosetCover(Poset base, std::vector<std::string> names, std::vector<Bits> parts);

    /// From element identifiers. With `take_open_hull`, every part is replaced
    /// by its open hull instead of being rejected.
    static PosetCover from_ids(Poset base, const std::vector<std::pair<std::string, std::vector<std::string>>>& parts,
                               bool take_open_hull = false);

    const Poset& base() const { return base_; }
    std::size_t size() const { return names_.size(); }
    const std::vector<std::string>& names() const { return names_; }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<Bits>& parts() const { return parts_; }
    ElementSet part(std::size_t i) const { return ElementSet(base_, parts_.at(i)); }

    /// All non-empty intersections (computed once at construction).
    const std::vector<Intersection>& intersections() const { return intersections_; }
    /// W_J for any J (empty when J is not a nerve simplex).
    ElementSet intersection(const std::vector<std::size_t>& parts) const;
    std::string label(const std::vector<std::size_t>& parts) const { return index_label(names_, parts); }

private:
    Poset base_;
    std::vector<std::string> names_;
    std::vector<Bits> parts_;
    std::vector<Intersection> intersections_;
};

/// Cover of a simplicial complex by subcomplexes, each given by facets.
class ComplexCover
{
public:
    /// Throws InputError naming the part when a facet is not a simplex of the
    /// base, or when some simplex of the base is not covered.
    ComplexCover(SimplicialComplex base,
                 const std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>>& parts);

    const SimplicialComplex& base() const { return base_; }
    std::size_t size() const { return face_cover_.size(); }
    const std::vector<std::string>& names() const { return face_cover_.names(); }
    /// The part as a standalone subcomplex.
    SimplicialComplex part(std::size_t i) const;
    /// The cover of the face poset by the face posets of the parts.
    const PosetCover& face_cover() const { return face_cover_; }
    const FacePoset& faces() const { return faces_; }

private:
    static PosetCover make_face_cover(const SimplicialComplex& base, const FacePoset& faces,
                                      const std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>>& parts);

    SimplicialComplex base_;
    FacePoset faces_;
    PosetCover face_cover_;
};

/// Vertices are the names of non-empty parts; simplices are the J with W_J non-empty.
SimplicialComplex nerve(const PosetCover& c);
SimplicialComplex nerve(const ComplexCover& c);
/// Nerve of an arbitrary family of sets.
SimplicialComplex nerve_of_sets(const std::vector<std::string>& names, const std::vector<Bits>& parts);
/// Face poset of the nerve; element identifiers are labels such as "{a,b}".
Poset nerve_poset(const PosetCover& c);
Poset nerve_poset(const ComplexCover& c);

// --- classification ---------------------------------------------------------

enum class CoverKind { Good, QuasiGood, Neither, Unknown };
const char* to_string(CoverKind k);

struct IntersectionVerdict
{
    std::vector<std::size_t> parts;
    std::string label;
    Bits members;
    TrivialityVerdict verdict;
    /// One entry per connected component, ordered by smallest element.
    std::vector<std::pair<Bits, TrivialityVerdict>> components;
};

struct CoverClassification
{
    CoverKind kind = CoverKind::Unknown;
    std::vector<IntersectionVerdict> intersections;
};

/**
 * Good: every W_J certified trivial. Otherwise Neither if some component
 * of some W_J is certified non-trivial, Unknown if some component is
 * undecided, QuasiGood if every component is certified trivial.
 */
CoverClassification classify_cover(const PosetCover& c, const SearchOptions& options = {});
CoverClassification classify_cover(const ComplexCover& c, const SearchOptions& options = {});

// --- the subposet of trivial intersections ----------------------------------

struct TrivialFaces
{
    /// Induced subposet of the nerve poset on the J with W_J certified trivial.
    Poset poset;
    /// Certified when every W_J was decided; Unknown otherwise (the undecided
    /// J are left out).
    Status status = Status::Certified;
    /// poset element -> index into the cover's intersections().
    std::vector<std::size_t> intersection_of;
};

TrivialFaces trivial_faces(const PosetCover& c, const SearchOptions& options = {});
TrivialFaces trivial_faces(const PosetCover& c, const CoverClassification& classification);

/// The trivial faces J with x in W_J; checked to be a down-set (std::logic_error
/// otherwise). Throws InputError for an unknown x.
ElementSet faces_containing(const PosetCover& c, const TrivialFaces& faces, std::string_view x);
ElementSet faces_containing(const PosetCover& c, std::string_view x, const SearchOptions& options = {});

// --- completion ---------------------------------------------------------------

struct CompletionCell
{
    std::vector<std::size_t> parts;
    Bits component;
    std::string component_name;
};

struct CompletionPoset
{
    /// Element identifiers "<index label>|<component name>".
    Poset poset;
    /// Indexed by poset element.
    std::vector<CompletionCell> cells;
    /// |J| - 1 per element.
    std::vector<int> dims;
};

using ComponentSplitter = std::function<std::vector<Bits>(const Bits&)>;
using ComponentNamer = std::function<std::string(const Bits&)>;

/**
 * Completion of an arbitrary family of sets with a caller-supplied notion
 * of connected component. The result is checked to be the face poset of a
 * regular CW complex with simplex cells (std::logic_error otherwise).
 */
CompletionPoset completion_of_sets(const std::vector<std::string>& names, const std::vector<Bits>& parts,
                                   const ComponentSplitter& split, const ComponentNamer& name);

/// Components in the base poset, named by their smallest identifier.
CompletionPoset completion_poset(const PosetCover& c);
RegularCWComplex completion_cw(const CompletionPoset& p);
/// Completion of the face-poset cover, as a CW complex: n-cells are the
/// components of the W_J with |J| = n + 1.
RegularCWComplex completion_cw(const ComplexCover& c);

// --- verification -----------------------------------------------------------

enum class NerveVariant { GoodPoset, TrivialFaces, QuasiGood };
const char* to_string(NerveVariant v);

struct NerveReport
{
    NerveVariant variant = NerveVariant::GoodPoset;
    Status status = Status::Unknown;
    std::string message;
    CoverClassification classification;
    /// The nerve poset, the trivial faces or the completion, depending on the variant.
    Poset nerve_object;
    /// Present when the hypotheses on the cover were met and the relation was built.
    std::optional<EquivalenceReport> equivalence;
    HomologyProfile base_homology;
    HomologyProfile nerve_homology;
    HomologyComparison comparison;
};

/**
 * GoodPoset and TrivialFaces relate x to J when x is in W_J, into the opposite of
 * the nerve poset (resp. of the trivial-face subposet); QuasiGood relates x to (J,C) when x is in C,
 * into the opposite of the completion. The relation is checked with
 * verify_relation_equivalence, and the homology of the base is compared with that of
 * the nerve object.
 */
NerveReport verify_nerve_equivalence(const PosetCover& c, NerveVariant variant, const SearchOptions& options = {});

/// The relation used by the GoodPoset / TrivialFaces variants.
Relation trivial_faces_relation(const PosetCover& c, const TrivialFaces& faces);
/// The relation used by the QuasiGood variant.
Relation completion_relation(const PosetCover& c, const CompletionPoset& completion);

struct CompletionReport
{
    Status status = Status::Unknown;
    std::string message;
    NerveReport poset_level;
    std::optional<RegularCWComplex> completion;
    HomologyProfile base_homology;
    HomologyProfile completion_homology;
    HomologyComparison comparison;
};

/// Quasi-good covers of complexes: the base and the completion of the nerve
/// have the same homology, backed by the poset-level certificates.
CompletionReport verify_completion_homology(const ComplexCover& c, const SearchOptions& options = {});

} // namespace fintop
