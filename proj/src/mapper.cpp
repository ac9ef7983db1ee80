#include "fintop/mapper.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

#include "fintop/errors.hpp"
#include "fintop/generators.hpp"

namespace fintop {

PointCloud::PointCloud(std::vector<std::string> ids, std::vector<std::vector<double>> points)
    : ids_(std::move(ids)), points_(std::move(points))
{
    if (ids_.size() != points_.size())
        throw InputError("point cloud: " + std::to_string(ids_.size()) + " identifiers for " +
                         std::to_string(points_.size()) + " points");
    std::set<std::string> seen;
    for (std::size_t i = 0; i < ids_.size(); ++i) {
        if (ids_[i].empty())
            throw InputError("point cloud: empty identifier for point " + std::to_string(i));
        if (!seen.insert(ids_[i]).second)
            throw InputError("point cloud: repeated identifier '" + ids_[i] + "'");
        if (points_[i].size() != points_.front().size())
            throw InputError("point cloud: point '" + ids_[i] + "' has dimension " + std::to_string(points_[i].size()) +
                             ", expected " + std::to_string(points_.front().size()));
        for (double c : points_[i])
            if (!std::isfinite(c))
                throw InputError("point cloud: non-finite coordinate in point '" + ids_[i] + "'");
    }
}

double PointCloud::distance(std::size_t a, std::size_t b) const
{
    const auto& p = points_.at(a);
    const auto& q = points_.at(b);
    double s = 0.0;
    for (std::size_t k = 0; k < p.size(); ++k)
        s += (p[k] - q[k]) * (p[k] - q[k]);
    return std::sqrt(s);
}

std::vector<double> evaluate_filter(const PointCloud& pc, const FilterSpec& f)
{
    std::vector<double> out(pc.size());
    if (f.kind == FilterKind::Projection) {
        if (pc.size() > 0 && f.axis >= pc.dimension())
            throw InputError("filter: axis " + std::to_string(f.axis) + " out of range for dimension " +
                             std::to_string(pc.dimension()));
        for (std::size_t i = 0; i < pc.size(); ++i)
            out[i] = pc.point(i)[f.axis];
    } else {
        for (std::size_t i = 0; i < pc.size(); ++i)
            for (std::size_t j = 0; j < pc.size(); ++j)
                out[i] = std::max(out[i], pc.distance(i, j));
    }
    return out;
}

std::vector<Interval> cover_intervals(double min, double max, const IntervalCover& ic)
{
    if (ic.intervals == 0)
        throw std::invalid_argument("interval cover needs at least one interval");
    if (!(ic.overlap >= 0.0 && ic.overlap < 1.0))
        throw std::invalid_argument("interval overlap must lie in [0, 1)");
    const double n = static_cast<double>(ic.intervals);
    const double length = (max - min) / (n - (n - 1) * ic.overlap);
    const double step = length * (1.0 - ic.overlap);
    std::vector<Interval> out;
    for (std::size_t i = 0; i < ic.intervals; ++i) {
        double lo = min + static_cast<double>(i) * step;
        out.push_back({lo, lo + length});
    }
    // Pin the ends so rounding never leaves the extreme values uncovered.
    out.front().lo = min;
    out.back().hi = max;
    return out;
}

PullbackCover pullback_cover(const PointCloud& pc, const FilterSpec& f, const IntervalCover& ic)
{
    if (pc.size() == 0)
        throw InputError("pullback cover of an empty point cloud");
    PullbackCover out;
    out.values = evaluate_filter(pc, f);
    auto [lo, hi] = std::minmax_element(out.values.begin(), out.values.end());
    if (*lo == *hi) {
        out.degenerate = true;
        out.warning = "all filter values are equal; using a single interval";
        out.intervals = {Interval{*lo, *hi}};
    } else {
        out.intervals = cover_intervals(*lo, *hi, ic);
    }
    out.names = numbered_ids("I", out.intervals.size());
    for (const auto& iv : out.intervals) {
        Bits part(pc.size());
        for (std::size_t p = 0; p < pc.size(); ++p)
            if (iv.contains(out.values[p]))
                part.set(p);
        out.parts.push_back(std::move(part));
    }
    return out;
}

std::vector<Bits> epsilon_components(const PointCloud& pc, const Bits& subset, double epsilon)
{
    if (!(epsilon > 0.0))
        throw std::invalid_argument("epsilon must be positive");
    const std::size_t n = pc.size();
    std::vector<std::size_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t a) {
        while (parent[a] != a)
            a = parent[a] = parent[parent[a]];
        return a;
    };
    auto members = bit_indices(subset);
    for (std::size_t i = 0; i < members.size(); ++i)
        for (std::size_t j = i + 1; j < members.size(); ++j)
            if (pc.distance(members[i], members[j]) <= epsilon)
                parent[find(members[i])] = find(members[j]);

    std::vector<Bits> comps;
    std::vector<std::size_t> root_slot(n, n);
    for (Index m : members) {
        std::size_t r = find(m);
        if (root_slot[r] == n) {
            root_slot[r] = comps.size();
            comps.emplace_back(n);
        }
        comps[root_slot[r]].set(m);
    }
    std::sort(comps.begin(), comps.end(),
              [&](const Bits& a, const Bits& b) { return component_name(pc, a) < component_name(pc, b); });
    return comps;
}

std::string component_name(const PointCloud& pc, const Bits& component)
{
    const std::string* best = nullptr;
    for (Index i : bit_indices(component))
        if (!best || pc.ids()[i] < *best)
            best = &pc.ids()[i];
    if (!best)
        throw std::invalid_argument("component_name of an empty set");
    return *best;
}

std::vector<SplitEntry> component_split(const PointCloud& pc, const PullbackCover& cover, double epsilon)
{
    std::vector<SplitEntry> out;
    for (const auto& f : enumerate_intersections(cover.parts)) {
        if (f.parts.size() > 3)
            continue;
        SplitEntry e{index_label(cover.names, f.parts), f.parts, f.members, {}};
        for (const auto& c : epsilon_components(pc, f.members, epsilon))
            e.components.push_back(component_name(pc, c));
        out.push_back(std::move(e));
    }
    return out;
}

MapperResult mapper_completion(const PointCloud& pc, const FilterSpec& f, const IntervalCover& ic, double epsilon)
{
    if (!(epsilon > 0.0))
        throw std::invalid_argument("epsilon must be positive");
    MapperResult r;
    r.cover = pullback_cover(pc, f, ic);
    r.epsilon = epsilon;

    auto split = [&](const Bits& s) { return epsilon_components(pc, s, epsilon); };
    auto name = [&](const Bits& s) { return component_name(pc, s); };
    r.completion_poset = completion_of_sets(r.cover.names, r.cover.parts, split, name);
    r.completion.emplace(completion_cw(r.completion_poset));
    r.completion_homology = homology(*r.completion);

    r.nerve = nerve_of_sets(r.cover.names, r.cover.parts);
    r.nerve_homology = homology(r.nerve);

    std::vector<std::string> comp_names;
    std::vector<Bits> comps;
    for (std::size_t i = 0; i < r.cover.parts.size(); ++i)
        for (auto& c : split(r.cover.parts[i])) {
            comp_names.push_back(r.cover.names[i] + "|" + name(c));
            comps.push_back(std::move(c));
        }
    r.component_nerve = nerve_of_sets(comp_names, comps);
    r.component_nerve_homology = homology(r.component_nerve);
    return r;
}

namespace {

std::string quoted(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\')
            out += '\\';
        out += c;
    }
    return out + "\"";
}

} // namespace

std::string completion_dot(const CompletionPoset& cp)
{
    std::ostringstream os;
    os << "graph completion {\n";
    for (Index c = 0; c < cp.poset.size(); ++c)
        if (cp.dims[c] == 0)
            os << "  " << quoted(cp.poset.id(c)) << " [label=" << quoted(cp.poset.id(c)) << "];\n";
    for (Index c = 0; c < cp.poset.size(); ++c) {
        if (cp.dims[c] == 1) {
            std::vector<Index> ends;
            for (Index v : cp.poset.lower_covers(c))
                ends.push_back(v);
            os << "  " << quoted(cp.poset.id(ends.at(0))) << " -- " << quoted(cp.poset.id(ends.at(1)))
               << " [label=" << quoted(cp.poset.id(c)) << "];\n";
        } else if (cp.dims[c] > 1) {
            os << "  // " << cp.dims[c] << "-cell " << cp.poset.id(c) << "\n";
        }
    }
    os << "}\n";
    return os.str();
}

std::string complex_dot(const SimplicialComplex& k, const std::string& name)
{
    std::ostringstream os;
    os << "graph " << quoted(name) << " {\n";
    for (const auto& v : k.vertices())
        os << "  " << quoted(v) << ";\n";
    if (k.dimension() >= 1)
        for (const auto& e : k.simplices(1))
            os << "  " << quoted(k.vertices()[e[0]]) << " -- " << quoted(k.vertices()[e[1]]) << ";\n";
    os << "}\n";
    return os.str();
}

PointCloud circle_sample(std::uint64_t seed, std::size_t n, double radius, double jitter)
{
    Rng rng(seed);
    const double spacing = 2.0 * std::numbers::pi / static_cast<double>(n);
    std::vector<std::vector<double>> pts;
    for (std::size_t i = 0; i < n; ++i) {
        double angle = spacing * (static_cast<double>(i) + jitter * (2.0 * rng.uniform() - 1.0));
        pts.push_back({radius * std::cos(angle), radius * std::sin(angle)});
    }
    return PointCloud(numbered_ids("p", n), std::move(pts));
}

PointCloud figure_eight_sample(std::uint64_t seed, std::size_t n, double jitter)
{
    Rng rng(seed);
    const std::size_t left = n / 2, right = n - left;
    std::vector<std::vector<double>> pts;
    auto lobe = [&](std::size_t count, double centre, double start) {
        const double spacing = 2.0 * std::numbers::pi / static_cast<double>(count);
        for (std::size_t i = 0; i < count; ++i) {
            double angle = start + spacing * (static_cast<double>(i) + jitter * (2.0 * rng.uniform() - 1.0));
            pts.push_back({centre + std::cos(angle), std::sin(angle)});
        }
    };
    lobe(left, -1.0, 0.0);
    lobe(right, 1.0, std::numbers::pi);
    return PointCloud(numbered_ids("p", n), std::move(pts));
}

} // namespace fintop
