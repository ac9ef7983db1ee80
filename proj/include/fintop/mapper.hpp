/**
 * Mapper-style pipeline on point clouds.
 *
 * A real-valued filter is evaluated on every sample point, an interval cover
 * of its range is pulled back to a cover of the sample, and "path components"
 * of a subset are the connected components of its epsilon-neighbourhood
 * graph (Euclidean distance <= epsilon). The pipeline reports three objects:
 *
 *  - the nerve of the pulled-back cover, ignoring components;
 *  - the component nerve, the nerve of the cover by components of the parts;
 *  - the completion, whose cells are the components of every non-empty
 *    intersection of parts.
 */
#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "fintop/complex.hpp"
#include "fintop/homology.hpp"
#include "fintop/nerve.hpp"
#include "fintop/poset.hpp"

namespace fintop {

class PointCloud
{
public:
    /// Throws InputError on an empty or repeated identifier, a non-finite
    /// coordinate, or points of different dimensions.
    PointCloud(std::vector<std::string> ids, std::vector<std::vector<double>> points);

    std::size_t size() const { return ids_.size(); }
    std::size_t dimension() const { return points_.empty() ? 0 : points_.front().size(); }
    const std::vector<std::string>& ids() const { return ids_; }
    const std::vector<double>& point(std::size_t i) const { return points_.at(i); }
    double distance(std::size_t a, std::size_t b) const;

private:
    std::vector<std::string> ids_;
    std::vector<std::vector<double>> points_;
};

enum class FilterKind { Projection, Eccentricity };

struct FilterSpec
{
    FilterKind kind = FilterKind::Projection;
    /// Coordinate for Projection.
    std::size_t axis = 0;
};

/// Projection: the chosen coordinate. Eccentricity: largest distance to another point.
std::vector<double> evaluate_filter(const PointCloud& pc, const FilterSpec& f);

struct IntervalCover
{
    std::size_t intervals = 1;
    /// Fraction of each interval shared with the next one, in [0, 1).
    double overlap = 0.0;
};

struct Interval
{
    double lo = 0.0;
    double hi = 0.0;
    bool contains(double v) const { return lo <= v && v <= hi; }
};

/**
 * n closed intervals of equal length l = L / (n - (n-1) g) starting at the
 * minimum and spaced by l (1 - g); the last one ends exactly at the maximum.
 * Throws std::invalid_argument for n = 0 or g outside [0, 1).
 */
std::vector<Interval> cover_intervals(double min, double max, const IntervalCover& ic);

struct PullbackCover
{
    std::vector<double> values;
    std::vector<Interval> intervals;
    /// Interval names "I0", "I1", ... (zero-padded).
    std::vector<std::string> names;
    /// parts[i] = points whose value lies in interval i.
    std::vector<Bits> parts;
    /// All filter values were equal; a single interval was used.
    bool degenerate = false;
    std::string warning;
};

/// Throws InputError for an empty cloud or an axis out of range.
PullbackCover pullback_cover(const PointCloud& pc, const FilterSpec& f, const IntervalCover& ic);

/// Components of the epsilon-graph restricted to `subset`, ordered by their
/// smallest point identifier. Throws std::invalid_argument unless epsilon > 0.
std::vector<Bits> epsilon_components(const PointCloud& pc, const Bits& subset, double epsilon);

/// Smallest point identifier in a non-empty set of points.
std::string component_name(const PointCloud& pc, const Bits& component);

struct SplitEntry
{
    /// e.g. "{I0,I1}"
    std::string label;
    std::vector<std::size_t> parts;
    Bits members;
    /// Component names.
    std::vector<std::string> components;
};

/// Components of each part and of each pairwise and threefold intersection.
std::vector<SplitEntry> component_split(const PointCloud& pc, const PullbackCover& cover, double epsilon);

struct MapperResult
{
    PullbackCover cover;
    double epsilon = 0.0;
    CompletionPoset completion_poset;
    std::optional<RegularCWComplex> completion;
    HomologyProfile completion_homology;
    /// Nerve of the pulled-back cover, ignoring components.
    SimplicialComplex nerve;
    HomologyProfile nerve_homology;
    /// Nerve of the cover by the components of the parts; vertices "I0|<point>".
    SimplicialComplex component_nerve;
    HomologyProfile component_nerve_homology;
};

MapperResult mapper_completion(const PointCloud& pc, const FilterSpec& f, const IntervalCover& ic, double epsilon);

/// Graphviz rendering of the 0- and 1-cells of the completion (higher cells listed as comments).
std::string completion_dot(const CompletionPoset& c);
/// Graphviz rendering of the 1-skeleton of a simplicial complex.
std::string complex_dot(const SimplicialComplex& k, const std::string& name);

/// n points on a circle of the given radius, with the angle of each point
/// jittered uniformly by up to `jitter` times the angular spacing.
PointCloud circle_sample(std::uint64_t seed, std::size_t n = 60, double radius = 1.0, double jitter = 0.2);
/// n points on two tangent unit circles centred at (-1, 0) and (1, 0).
PointCloud figure_eight_sample(std::uint64_t seed, std::size_t n = 80, double jitter = 0.2);

} // namespace fintop
