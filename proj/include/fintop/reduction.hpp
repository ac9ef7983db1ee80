/**
 * Reduction methods for finite posets and simplicial complexes.
 *
 *  - beat points and cores (removal of beat points is a strong deformation
 *    retraction; a poset is contractible iff it dismantles to a point),
 *  - weak points and collapses (deleting a point whose punctured down- or
 *    up-set is contractible),
 *  - gamma-points (punctured down- or up-set homotopically trivial),
 *  - free-face collapses of simplicial complexes.
 *
 * Every search emits a ReductionCertificate. Certificates are checked by
 * `replay`, which re-verifies each step's side condition from scratch and
 * never calls back into a search.
 *
 * "Homotopically trivial" is not decidable in general. triviality_oracle is
 * a sound three-valued approximation: it answers Trivial only with a
 * replayable certificate and NonTrivial only with a recomputable witness.
 */
#pragma once

#include <cstddef>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "fintop/complex.hpp"
#include "fintop/homology.hpp"
#include "fintop/poset.hpp"

namespace fintop {

enum class Verdict { Trivial, NonTrivial, Unknown };

enum class StepKind { UpBeat, DownBeat, UpWeak, DownWeak, GammaUp, GammaDown, SimplicialCollapse };

/// Why a verdict was reached.
enum class Basis {
    Empty,           ///< NonTrivial: the empty poset
    Disconnected,    ///< NonTrivial: more than one component
    NonzeroHomology, ///< NonTrivial: some reduced homology group is non-zero
    Dismantling,     ///< Trivial: beat points down to a point
    Collapse,        ///< Trivial: weak points down to a point
    CoreNotPoint,    ///< Unknown (is_dismantlable only): the core has more than one point
    NotCollapsible,  ///< Unknown: the collapse search was exhaustive and failed
    BudgetExhausted  ///< Unknown: the collapse search ran out of nodes
};

const char* to_string(Verdict v);
const char* to_string(StepKind k);
const char* to_string(Basis b);
std::optional<StepKind> step_kind_from_string(std::string_view s);

struct TrivialityVerdict;

struct ReductionStep
{
    StepKind kind = StepKind::UpBeat;
    /// Removed poset element (all kinds except SimplicialCollapse).
    std::string element;
    /// Beat steps: the unique upper (resp. lower) cover of `element`.
    std::string witness;
    /// Weak and gamma steps: the verdict on the punctured up- or down-set,
    /// with its own certificate.
    std::shared_ptr<const TrivialityVerdict> evidence;
    /// SimplicialCollapse: the free face and its unique proper coface.
    std::vector<std::string> face;
    std::vector<std::string> coface;
};

struct ReductionCertificate
{
    std::vector<ReductionStep> steps;

    std::size_t size() const { return steps.size(); }
    bool empty() const { return steps.empty(); }
};

struct TrivialityVerdict
{
    Verdict value = Verdict::Unknown;
    Basis basis = Basis::BudgetExhausted;
    /// Dismantling / Collapse.
    ReductionCertificate certificate;
    /// Disconnected: number of components. CoreNotPoint: size of the core.
    std::size_t count = 0;
    /// NonzeroHomology: the reduced homology that was found.
    std::optional<HomologyProfile> homology;
    /// Collapse search nodes spent.
    std::size_t nodes = 0;
};

struct SearchOptions
{
    /// Node budget for backtracking searches.
    std::size_t budget = 100000;
};

// --- beat points ------------------------------------------------------------

struct BeatPoint
{
    Index element;
    StepKind kind; ///< UpBeat or DownBeat
    Index witness;
};

/// All beat points; an element that is both up- and down-beat appears twice.
std::vector<BeatPoint> find_beat_points(const Poset& p);

struct CoreResult
{
    Poset core;
    ReductionCertificate certificate;
};

/// Repeatedly removes the first beat point in identifier order (up-beat
/// checked before down-beat) until none is left.
CoreResult core(const Poset& p);

/// Trivial (with the dismantling) iff the core is a single point; otherwise
/// Unknown with basis CoreNotPoint.
TrivialityVerdict is_dismantlable(const Poset& p);

// --- weak points and collapses ------------------------------------------------

struct WeakPoint
{
    Index element;
    StepKind kind; ///< UpWeak or DownWeak
    std::shared_ptr<const TrivialityVerdict> evidence;
};

/// x is down-weak iff its punctured down-set is contractible (dismantlable);
/// up-weak dually. Both kinds are listed when both hold.
std::vector<WeakPoint> find_weak_points(const Poset& p);

/**
 * Depth-first search over weak-point deletions from p to `target` (a subset
 * of p's identifiers), beat points tried first, failed states memoized.
 * Returns nullopt when the search fails or the budget runs out.
 * Throws std::invalid_argument for a zero budget and InputError for target
 * identifiers outside p.
 */
std::optional<ReductionCertificate> collapse_search(const Poset& p, const std::vector<std::string>& target,
                                                    const SearchOptions& options = {});

/// Trivial with a collapse certificate, or Unknown (NotCollapsible when the
/// search space was exhausted, BudgetExhausted otherwise).
TrivialityVerdict is_collapsible(const Poset& p, const SearchOptions& options = {});

// --- gamma points and the triviality oracle ---------------------------------

/**
 * Decision ladder:
 *  1. empty or disconnected -> NonTrivial
 *  2. dismantlable -> Trivial
 *  3. non-zero reduced homology -> NonTrivial
 *  4. collapsible within budget -> Trivial
 *  5. otherwise Unknown
 * Steps 2 and 3 are mutually exclusive, so their order only affects cost.
 */
TrivialityVerdict triviality_oracle(const Poset& p, const SearchOptions& options = {});
TrivialityVerdict triviality_oracle(const ElementSet& s, const SearchOptions& options = {});

struct GammaPoint
{
    Index element;
    StepKind kind; ///< GammaUp or GammaDown
    std::shared_ptr<const TrivialityVerdict> evidence;
};

struct GammaClassification
{
    std::vector<GammaPoint> gamma;
    /// Elements where no side was Trivial and at least one side was Unknown.
    std::vector<Index> undecided;
};

GammaClassification find_gamma_points(const Poset& p, const SearchOptions& options = {});

/// Greedy removal of the first gamma point (identifier order) until none is left.
CoreResult gamma_reduce(const Poset& p, const SearchOptions& options = {});

// --- simplicial collapses ---------------------------------------------------

struct FreeFace
{
    Simplex face;
    Simplex coface;
};

/// Faces with exactly one proper coface.
std::vector<FreeFace> free_faces(const SimplicialComplex& k);

/// Depth-first search for an elementary-collapse sequence from k to the
/// subcomplex `target` (matched by vertex identifiers). Throws InputError if
/// target is not a subcomplex of k.
std::optional<ReductionCertificate> simplicial_collapse(const SimplicialComplex& k, const SimplicialComplex& target,
                                                        const SearchOptions& options = {});
/// Collapse to any single vertex.
std::optional<ReductionCertificate> simplicial_collapse_to_point(const SimplicialComplex& k,
                                                                 const SearchOptions& options = {});

// --- replay -----------------------------------------------------------------

template <typename T>
struct Replay
{
    bool ok = false;
    std::string error;
    std::size_t failed_step = 0;
    T result;
};

using PosetStepHook = std::function<void(const Poset& before, const ReductionStep& step, const Poset& after)>;
using ComplexStepHook =
    std::function<void(const SimplicialComplex& before, const ReductionStep& step, const SimplicialComplex& after)>;

/// Re-verifies every poset step (beat, weak, gamma), including nested
/// evidence, and returns the final poset.
Replay<Poset> replay(const Poset& start, const ReductionCertificate& certificate, const PosetStepHook& hook = {});

/// Re-verifies every free-face collapse and returns the final complex.
Replay<SimplicialComplex> replay(const SimplicialComplex& start, const ReductionCertificate& certificate,
                                 const ComplexStepHook& hook = {});

/// Empty when the verdict's evidence checks out against p: Trivial evidence
/// replays to one point, NonTrivial evidence is recomputed.
std::string verify_verdict(const Poset& p, const TrivialityVerdict& verdict);

/**
 * Translate a poset certificate made of beat and weak steps (X collapses to
 * Y) into free-face collapses of order complexes (K(X) collapses to K(Y)).
 * Returns nullopt if the certificate contains gamma steps or if a step's
 * evidence is not a beat/weak-point certificate.
 */
std::optional<ReductionCertificate> to_simplicial_collapse(const Poset& start,
                                                           const ReductionCertificate& certificate);

/// Every (poset or simplicial) step of `certificate`, nested evidence included,
/// in depth-first order. The poset each nested certificate starts from is
/// reported alongside.
struct NestedCertificate
{
    Poset start;
    const ReductionCertificate* certificate;
};
std::vector<NestedCertificate> nested_certificates(const Poset& start, const ReductionCertificate& certificate);

} // namespace fintop
