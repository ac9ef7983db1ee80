#include "fintop/cylinder.hpp"

#include <algorithm>
#include <stdexcept>

#include "fintop/errors.hpp"

namespace fintop {

const char* to_string(Status s)
{
    switch (s) {
    case Status::Certified: return "Certified";
    case Status::Refuted: return "Refuted";
    case Status::Unknown: return "Unknown";
    case Status::Error: return "Error";
    }
    return "?";
}

namespace {

bool same_poset(const Poset& a, const Poset& b) { return a.shares_storage(b) || a == b; }

Bits shifted(const Bits& b, std::size_t offset, std::size_t size)
{
    Bits out(size);
    for (auto i = b.find_first(); i != Bits::npos; i = b.find_next(i))
        out.set(offset + i);
    return out;
}

std::vector<std::string> with_prefix(const Poset& p, std::string_view prefix)
{
    std::vector<std::string> ids;
    ids.reserve(p.size());
    for (const auto& id : p.ids())
        ids.push_back(std::string(prefix) + id);
    return ids;
}

} // namespace

// --- Relation -----------------------------------------------------------------

Relation::Relation(Poset source, Poset target, const std::vector<std::pair<std::string, std::string>>& pairs)
    : source_(std::move(source)), target_(std::move(target)), related_(source_.size(), target_.empty_bits())
{
    for (const auto& [x, y] : pairs)
        related_[source_.index_of(x)].set(target_.index_of(y));
}

Relation::Relation(Poset source, Poset target, std::vector<Bits> related)
    : source_(std::move(source)), target_(std::move(target)), related_(std::move(related))
{
    if (related_.size() != source_.size())
        throw InputError("relation has " + std::to_string(related_.size()) + " rows for a source of size " +
                         std::to_string(source_.size()));
    for (const auto& row : related_)
        if (row.size() != target_.size())
            throw InputError("relation row does not match the target size");
}

Relation Relation::full(Poset source, Poset target)
{
    std::vector<Bits> rows(source.size(), target.full_bits());
    return Relation(std::move(source), std::move(target), std::move(rows));
}

std::vector<std::pair<Index, Index>> Relation::pairs() const
{
    std::vector<std::pair<Index, Index>> out;
    for (Index x = 0; x < related_.size(); ++x)
        for (Index y : bit_indices(related_[x]))
            out.emplace_back(x, y);
    return out;
}

std::size_t Relation::size() const
{
    std::size_t n = 0;
    for (const auto& row : related_)
        n += row.count();
    return n;
}

bool operator==(const Relation& a, const Relation& b)
{
    return same_poset(a.source_, b.source_) && same_poset(a.target_, b.target_) && a.related_ == b.related_;
}

ElementSet image(const Relation& r, const ElementSet& a)
{
    if (!same_poset(a.parent(), r.source()))
        throw InputError("image: the set does not live in the relation's source");
    Bits out = r.target().empty_bits();
    for (Index x : a.indices())
        out |= r.related_to(x);
    return ElementSet(r.target(), std::move(out));
}

ElementSet preimage(const Relation& r, const ElementSet& b)
{
    if (!same_poset(b.parent(), r.target()))
        throw InputError("preimage: the set does not live in the relation's target");
    Bits out = r.source().empty_bits();
    for (Index x = 0; x < r.source().size(); ++x)
        if (r.related_to(x).intersects(b.bits()))
            out.set(x);
    return ElementSet(r.source(), std::move(out));
}

// --- cylinders ----------------------------------------------------------------

ElementSet CylinderPoset::source_part() const
{
    return ElementSet(poset, shifted(relation.source().full_bits(), 0, poset.size()));
}

ElementSet CylinderPoset::target_part() const
{
    return ElementSet(poset, shifted(relation.target().full_bits(), relation.source().size(), poset.size()));
}

ElementSet CylinderPoset::from_source(const ElementSet& a) const
{
    if (!same_poset(a.parent(), relation.source()))
        throw InputError("set does not live in the cylinder's source");
    return ElementSet(poset, shifted(a.bits(), 0, poset.size()));
}

ElementSet CylinderPoset::from_target(const ElementSet& b) const
{
    if (!same_poset(b.parent(), relation.target()))
        throw InputError("set does not live in the cylinder's target");
    return ElementSet(poset, shifted(b.bits(), relation.source().size(), poset.size()));
}

Poset prefixed(const Poset& p, std::string_view prefix)
{
    std::vector<Bits> down;
    for (Index x = 0; x < p.size(); ++x)
        down.push_back(p.down(x));
    return Poset::from_closure(with_prefix(p, prefix), std::move(down));
}

CylinderPoset build_cylinder(const Relation& r)
{
    const Poset& xs = r.source();
    const Poset& ys = r.target();
    const std::size_t nx = xs.size(), n = xs.size() + ys.size();

    std::vector<std::string> ids = with_prefix(xs, kSourcePrefix);
    auto tail = with_prefix(ys, kTargetPrefix);
    ids.insert(ids.end(), tail.begin(), tail.end());

    std::vector<Bits> down;
    down.reserve(n);
    for (Index x = 0; x < nx; ++x)
        down.push_back(shifted(xs.down(x), 0, n));
    for (Index y = 0; y < ys.size(); ++y)
        down.push_back(shifted(ys.down(y), nx, n));
    for (Index x = 0; x < nx; ++x) {
        // Elements above x on the target side: closure of R(F_x).
        ElementSet above = closure(image(r, up_set(xs, x)));
        for (Index y : above.indices())
            down[nx + y].set(x);
    }
    return CylinderPoset{Poset::from_closure(std::move(ids), std::move(down)), r};
}

MonotoneMap::MonotoneMap(Poset source, Poset target, std::vector<Index> values)
    : source_(std::move(source)), target_(std::move(target)), values_(std::move(values))
{
    if (values_.size() != source_.size())
        throw InputError("map assigns " + std::to_string(values_.size()) + " values to " +
                         std::to_string(source_.size()) + " elements");
    for (Index v : values_)
        if (v >= target_.size())
            throw InputError("map value out of range");
    for (const auto& [a, b] : source_.hasse_edges())
        if (!target_.leq(values_[a], values_[b]))
            throw InputError("map is not order-preserving: " + source_.id(a) + " < " + source_.id(b) + " but " +
                             target_.id(values_[a]) + " is not below " + target_.id(values_[b]));
}

MonotoneMap MonotoneMap::from_ids(Poset source, Poset target, const std::map<std::string, std::string>& values)
{
    std::vector<Index> v(source.size());
    std::vector<bool> seen(source.size(), false);
    for (const auto& [x, y] : values) {
        Index i = source.index_of(x);
        v[i] = target.index_of(y);
        seen[i] = true;
    }
    for (Index x = 0; x < source.size(); ++x)
        if (!seen[x])
            throw InputError("map has no value for '" + source.id(x) + "'");
    return MonotoneMap(std::move(source), std::move(target), std::move(v));
}

Relation MonotoneMap::relation() const
{
    std::vector<Bits> rows(source_.size(), target_.empty_bits());
    for (Index x = 0; x < source_.size(); ++x)
        rows[x].set(values_[x]);
    return Relation(source_, target_, std::move(rows));
}

MappingCylinder mapping_cylinder(const MonotoneMap& f)
{
    const Poset& xs = f.source();
    const Poset& ys = f.target();
    const std::size_t nx = xs.size(), n = xs.size() + ys.size();

    std::vector<std::string> ids = with_prefix(xs, kSourcePrefix);
    auto tail = with_prefix(ys, kTargetPrefix);
    ids.insert(ids.end(), tail.begin(), tail.end());

    std::vector<Bits> down;
    for (Index x = 0; x < nx; ++x)
        down.push_back(shifted(xs.down(x), 0, n));
    for (Index y = 0; y < ys.size(); ++y) {
        Bits d = shifted(ys.down(y), nx, n);
        for (Index x = 0; x < nx; ++x)
            if (ys.leq(f(x), y))
                d.set(x);
        down.push_back(std::move(d));
    }

    MappingCylinder out{CylinderPoset{Poset::from_closure(std::move(ids), std::move(down)), f.relation()}, {}};
    auto order = linear_extension(xs);
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        ReductionStep s;
        s.kind = StepKind::UpBeat;
        s.element = std::string(kSourcePrefix) + xs.id(*it);
        s.witness = std::string(kTargetPrefix) + ys.id(f(*it));
        out.retraction.steps.push_back(std::move(s));
    }
    return out;
}

// --- hypotheses -----------------------------------------------------------------

const HypothesisEntry* HypothesisReport::first_failure() const
{
    for (const auto& e : entries)
        if (e.verdict.value != Verdict::Trivial)
            return &e;
    return nullptr;
}

Status aggregate(const std::vector<HypothesisEntry>& entries)
{
    bool unknown = false;
    for (const auto& e : entries) {
        if (e.verdict.value == Verdict::NonTrivial)
            return Status::Refuted;
        unknown |= e.verdict.value == Verdict::Unknown;
    }
    return unknown ? Status::Unknown : Status::Certified;
}

namespace {

ElementSet source_side_set(const Relation& r, Index y) { return open_hull(preimage(r, down_set(r.target(), y))); }
ElementSet target_side_set(const Relation& r, Index x) { return closure(image(r, up_set(r.source(), x))); }

} // namespace

HypothesisReport check_source_side(const Relation& r, const SearchOptions& options)
{
    HypothesisReport out;
    for (Index y = 0; y < r.target().size(); ++y) {
        ElementSet s = source_side_set(r, y);
        TrivialityVerdict v = triviality_oracle(s, options);
        out.entries.push_back({r.target().id(y), std::move(s), std::move(v)});
    }
    out.status = aggregate(out.entries);
    return out;
}

HypothesisReport check_target_side(const Relation& r, const SearchOptions& options)
{
    HypothesisReport out;
    for (Index x = 0; x < r.source().size(); ++x) {
        ElementSet s = target_side_set(r, x);
        TrivialityVerdict v = triviality_oracle(s, options);
        out.entries.push_back({r.source().id(x), std::move(s), std::move(v)});
    }
    out.status = aggregate(out.entries);
    return out;
}

GammaCollapse gamma_collapse_to_source(const CylinderPoset& c, const SearchOptions& options)
{
    const Relation& r = c.relation;
    GammaCollapse out;
    ReductionCertificate cert;
    Bits alive = c.poset.full_bits();
    for (Index y : linear_extension(r.target())) {
        const Index ci = c.target_index(y);
        Bits below = c.poset.down(ci) & alive;
        below.reset(ci);
        if (below != c.from_source(source_side_set(r, y)).bits())
            throw std::logic_error("cylinder: punctured down-set of " + c.poset.id(ci) +
                                   " differs from the open hull of the preimage");
        auto v = std::make_shared<const TrivialityVerdict>(triviality_oracle(induced_subposet(c.poset, below), options));
        if (v->value != Verdict::Trivial) {
            out.failing_element = r.target().id(y);
            out.reason = std::string("punctured down-set of ") + c.poset.id(ci) + " is " + to_string(v->value) + " (" +
                         to_string(v->basis) + ")";
            return out;
        }
        ReductionStep s;
        s.kind = StepKind::GammaDown;
        s.element = c.poset.id(ci);
        s.evidence = std::move(v);
        cert.steps.push_back(std::move(s));
        alive.reset(ci);
    }
    out.certificate = std::move(cert);
    return out;
}

GammaCollapse gamma_collapse_to_target(const CylinderPoset& c, const SearchOptions& options)
{
    const Relation& r = c.relation;
    GammaCollapse out;
    ReductionCertificate cert;
    Bits alive = c.poset.full_bits();
    auto order = linear_extension(r.source());
    for (auto it = order.rbegin(); it != order.rend(); ++it) {
        const Index ci = c.source_index(*it);
        Bits above = c.poset.up(ci) & alive;
        above.reset(ci);
        if (above != c.from_target(target_side_set(r, *it)).bits())
            throw std::logic_error("cylinder: punctured up-set of " + c.poset.id(ci) +
                                   " differs from the closure of the image");
        auto v = std::make_shared<const TrivialityVerdict>(triviality_oracle(induced_subposet(c.poset, above), options));
        if (v->value != Verdict::Trivial) {
            out.failing_element = r.source().id(*it);
            out.reason = std::string("punctured up-set of ") + c.poset.id(ci) + " is " + to_string(v->value) + " (" +
                         to_string(v->basis) + ")";
            return out;
        }
        ReductionStep s;
        s.kind = StepKind::GammaUp;
        s.element = c.poset.id(ci);
        s.evidence = std::move(v);
        cert.steps.push_back(std::move(s));
        alive.reset(ci);
    }
    out.certificate = std::move(cert);
    return out;
}

EquivalenceReport verify_relation_equivalence(const Relation& r, const SearchOptions& options)
{
    EquivalenceReport out;
    out.source_side = check_source_side(r, options);
    out.target_side = check_target_side(r, options);
    out.source_homology = homology(r.source());
    out.target_homology = homology(r.target());
    out.comparison = same_homology(out.source_homology, out.target_homology);

    auto describe = [](const char* side, const HypothesisReport& h) {
        const HypothesisEntry* f = h.first_failure();
        return std::string(side) + " hypothesis fails at '" + f->element + "': " + to_string(f->verdict.value) +
               " (" + to_string(f->verdict.basis) + ")";
    };
    if (out.source_side.status == Status::Refuted || out.target_side.status == Status::Refuted) {
        out.status = Status::Refuted;
        out.message = describe(out.source_side.status == Status::Refuted ? "source-side" : "target-side",
                               out.source_side.status == Status::Refuted ? out.source_side : out.target_side);
        return out;
    }
    if (out.source_side.status == Status::Unknown || out.target_side.status == Status::Unknown) {
        out.status = Status::Unknown;
        out.message = describe(out.source_side.status == Status::Unknown ? "source-side" : "target-side",
                               out.source_side.status == Status::Unknown ? out.source_side : out.target_side);
        return out;
    }

    CylinderPoset c = build_cylinder(r);
    GammaCollapse to_x = gamma_collapse_to_source(c, options);
    GammaCollapse to_y = gamma_collapse_to_target(c, options);
    if (!to_x.certificate || !to_y.certificate) {
        out.status = Status::Error;
        out.message = "hypotheses certified but a gamma collapse was refused: " +
                      (to_x.certificate ? to_y.reason : to_x.reason);
        return out;
    }
    out.to_source = std::move(to_x.certificate);
    out.to_target = std::move(to_y.certificate);

    auto rx = replay(c.poset, *out.to_source);
    auto ry = replay(c.poset, *out.to_target);
    if (!rx.ok || !ry.ok) {
        out.status = Status::Error;
        out.message = "gamma-collapse certificate does not replay: " + (rx.ok ? ry.error : rx.error);
        return out;
    }
    if (!(rx.result == prefixed(r.source(), kSourcePrefix)) || !(ry.result == prefixed(r.target(), kTargetPrefix))) {
        out.status = Status::Error;
        out.message = "gamma-collapse certificate does not end at the expected end of the cylinder";
        return out;
    }
    if (!out.comparison.equal) {
        out.status = Status::Error;
        out.message = "certified equivalence but homology differs";
        return out;
    }
    out.status = Status::Certified;
    out.message = "cylinder gamma-collapses onto both ends";
    return out;
}

HomologyComparison same_homology_up_to(const HomologyProfile& a, const HomologyProfile& b, int n)
{
    HomologyComparison out;
    for (int k = 0; k <= n; ++k) {
        if (!(a.degree(k) == b.degree(k))) {
            out.equal = false;
            out.differences.push_back("H_" + std::to_string(k) + ": " + a.describe(k) + " vs " + b.describe(k));
        }
    }
    return out;
}

RelationHomologyReport verify_relation_homology(const Relation& r, int n)
{
    if (n < 0)
        throw std::invalid_argument("degree bound must be non-negative");
    RelationHomologyReport out;
    out.degree = n;
    std::string failure;
    auto check = [&](const std::string& element, const ElementSet& s, const char* side,
                     std::vector<std::pair<std::string, HomologyProfile>>& into) {
        HomologyProfile h = homology(induced_subposet(s), true);
        auto first = h.first_nonzero_degree();
        if (failure.empty() && first && *first <= n)
            failure = std::string(side) + " set for '" + element + "' has non-zero reduced homology in degree " +
                      std::to_string(*first);
        into.emplace_back(element, std::move(h));
    };
    for (Index y = 0; y < r.target().size(); ++y)
        check(r.target().id(y), source_side_set(r, y), "source-side", out.source_side);
    for (Index x = 0; x < r.source().size(); ++x)
        check(r.source().id(x), target_side_set(r, x), "target-side", out.target_side);

    out.source_homology = homology(r.source());
    out.target_homology = homology(r.target());
    out.comparison = same_homology_up_to(out.source_homology, out.target_homology, n);
    if (!failure.empty()) {
        out.status = Status::Refuted;
        out.message = failure;
    } else if (!out.comparison.equal) {
        out.status = Status::Error;
        out.message = "hypotheses hold but homology differs up to degree " + std::to_string(n);
    } else {
        out.status = Status::Certified;
        out.message = "homology agrees up to degree " + std::to_string(n);
    }
    return out;
}

} // namespace fintop
