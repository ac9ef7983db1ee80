/**
 * Relations between finite posets and their cylinders.
 *
 * For a relation R between the underlying sets of X and Y, the cylinder is
 * the poset on the disjoint union X + Y that keeps both orders and adds
 * x <= y whenever x R y, closed transitively. Element identifiers are
 * namespaced as "X:<id>" and "Y:<id>", so the source part always sorts
 * before the target part.
 *
 * Checkers in this header never claim an equivalence without certificates:
 * hypotheses are decided by triviality_oracle, Unknown verdicts surface as an
 * Unknown status, and every Certified outcome comes with gamma-collapse
 * certificates of the cylinder onto both ends.
 */
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fintop/homology.hpp"
#include "fintop/poset.hpp"
#include "fintop/reduction.hpp"

namespace fintop {

enum class Status { Certified, Refuted, Unknown, Error };

const char* to_string(Status s);

inline constexpr std::string_view kSourcePrefix = "X:";
inline constexpr std::string_view kTargetPrefix = "Y:";

class Relation
{
public:
    /// Throws InputError for identifiers that are not elements of the
    /// corresponding poset.
    Relation(Poset source, Poset target, const std::vector<std::pair<std::string, std::string>>& pairs);
    /// Index form: related[x] is a bitset over the target's elements.
    Relation(Poset source, Poset target, std::vector<Bits> related);

    /// Every element of the source related to every element of the target.
    static Relation full(Poset source, Poset target);

    const Poset& source() const { return source_; }
    const Poset& target() const { return target_; }

    bool related(Index x, Index y) const { return related_.at(x).test(y); }
    /// {y : x R y}
    const Bits& related_to(Index x) const { return related_.at(x); }
    std::vector<std::pair<Index, Index>> pairs() const;
    std::size_t size() const;

    /// Same ordering of both ends is assumed; used by operator==.
    friend bool operator==(const Relation& a, const Relation& b);

private:
    Poset source_;
    Poset target_;
    std::vector<Bits> related_;
};

/// R(A). Throws InputError if A does not live in r.source().
ElementSet image(const Relation& r, const ElementSet& a);
/// R^{-1}(B). Throws InputError if B does not live in r.target().
ElementSet preimage(const Relation& r, const ElementSet& b);

struct CylinderPoset
{
    Poset poset;
    Relation relation;

    Index source_index(Index x) const { return x; }
    Index target_index(Index y) const { return static_cast<Index>(relation.source().size() + y); }
    bool is_source(Index c) const { return c < relation.source().size(); }

    /// The elements coming from the source (resp. target).
    ElementSet source_part() const;
    ElementSet target_part() const;
    /// Prefixed copy of a subset of the source (resp. target) inside the cylinder.
    ElementSet from_source(const ElementSet& a) const;
    ElementSet from_target(const ElementSet& b) const;
};

/// x <= y across the two parts iff U_y meets R(F_x).
CylinderPoset build_cylinder(const Relation& r);

/// The source poset with every identifier prefixed "X:" (or "Y:").
Poset prefixed(const Poset& p, std::string_view prefix);

/// Order-preserving map between posets.
class MonotoneMap
{
public:
    /// Throws InputError for a missing or unknown element or when some
    /// a < b is sent to a pair f(a) !<= f(b) (the pair is named).
    MonotoneMap(Poset source, Poset target, std::vector<Index> values);
    static MonotoneMap from_ids(Poset source, Poset target, const std::map<std::string, std::string>& values);

    const Poset& source() const { return source_; }
    const Poset& target() const { return target_; }
    Index operator()(Index x) const { return values_.at(x); }
    const std::vector<Index>& values() const { return values_; }

    /// The graph {(x, f(x))}.
    Relation relation() const;

private:
    Poset source_;
    Poset target_;
    std::vector<Index> values_;
};

struct MappingCylinder
{
    CylinderPoset cylinder;
    /// Up-beat deletions of the source elements in decreasing linear-extension
    /// order; each x has witness "Y:f(x)". Ends at the target part.
    ReductionCertificate retraction;
};

/// Built directly from "x <= y iff f(x) <= y", not through build_cylinder.
MappingCylinder mapping_cylinder(const MonotoneMap& f);

// --- hypothesis checks ------------------------------------------------------

struct HypothesisEntry
{
    /// The indexing element (a target element for the source side and vice versa).
    std::string element;
    /// The set whose triviality is required.
    ElementSet set;
    TrivialityVerdict verdict;
};

struct HypothesisReport
{
    Status status = Status::Certified;
    std::vector<HypothesisEntry> entries;

    /// First entry whose verdict is not Trivial.
    const HypothesisEntry* first_failure() const;
};

/// One entry per y: the open hull of R^{-1}(U_y) in the source.
HypothesisReport check_source_side(const Relation& r, const SearchOptions& options = {});
/// One entry per x: the closure of R(F_x) in the target.
HypothesisReport check_target_side(const Relation& r, const SearchOptions& options = {});

/// Aggregate: Refuted if any verdict is NonTrivial, else Unknown if any is
/// Unknown, else Certified.
Status aggregate(const std::vector<HypothesisEntry>& entries);

struct GammaCollapse
{
    std::optional<ReductionCertificate> certificate;
    /// Set when refused: the element whose punctured set was not certified.
    std::string failing_element;
    std::string reason;
};

/**
 * Removes the target elements in linear-extension order, each as a
 * gamma point whose punctured down-set is certified trivial. At each step
 * the punctured down-set is checked to be exactly the prefixed open hull of
 * R^{-1}(U_y); a mismatch throws std::logic_error.
 */
GammaCollapse gamma_collapse_to_source(const CylinderPoset& c, const SearchOptions& options = {});
/// Dual: removes the source elements in reverse linear-extension order.
GammaCollapse gamma_collapse_to_target(const CylinderPoset& c, const SearchOptions& options = {});

struct EquivalenceReport
{
    Status status = Status::Unknown;
    std::string message;
    HypothesisReport source_side;
    HypothesisReport target_side;
    std::optional<ReductionCertificate> to_source;
    std::optional<ReductionCertificate> to_target;
    HomologyProfile source_homology;
    HomologyProfile target_homology;
    HomologyComparison comparison;
};

/**
 * If every open hull of R^{-1}(U_y) and every closure of R(F_x) is certified
 * trivial, the cylinder gamma-collapses onto both ends. Certified requires
 * both certificates to replay onto the prefixed ends and the homology of the
 * ends to agree; a disagreement after certification is reported as Error.
 */
EquivalenceReport verify_relation_equivalence(const Relation& r, const SearchOptions& options = {});

struct RelationHomologyReport
{
    Status status = Status::Unknown;
    std::string message;
    int degree = 0;
    /// Per-set reduced homology for both sides, same order as the hypothesis reports.
    std::vector<std::pair<std::string, HomologyProfile>> source_side;
    std::vector<std::pair<std::string, HomologyProfile>> target_side;
    HomologyProfile source_homology;
    HomologyProfile target_homology;
    /// Degrees 0..n compared.
    HomologyComparison comparison;
};

/// Homology form: reduced homology of every hull and closure vanishes up to
/// degree n (an empty set fails), then H_i agree for i <= n.
RelationHomologyReport verify_relation_homology(const Relation& r, int n);

/// Degree-wise comparison restricted to degrees 0..n.
HomologyComparison same_homology_up_to(const HomologyProfile& a, const HomologyProfile& b, int n);

} // namespace fintop
