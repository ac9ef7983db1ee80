#include "fintop/reduction.hpp"

#include <algorithm>
#include <stdexcept>
#include <unordered_set>

#include "fintop/errors.hpp"

namespace fintop {

const char* to_string(Verdict v)
{
    switch (v) {
    case Verdict::Trivial: return "Trivial";
    case Verdict::NonTrivial: return "NonTrivial";
    case Verdict::Unknown: return "Unknown";
    }
    return "?";
}

const char* to_string(StepKind k)
{
    switch (k) {
    case StepKind::UpBeat: return "up-beat";
    case StepKind::DownBeat: return "down-beat";
    case StepKind::UpWeak: return "up-weak";
    case StepKind::DownWeak: return "down-weak";
    case StepKind::GammaUp: return "gamma-up";
    case StepKind::GammaDown: return "gamma-down";
    case StepKind::SimplicialCollapse: return "simplicial-collapse";
    }
    return "?";
}

const char* to_string(Basis b)
{
    switch (b) {
    case Basis::Empty: return "empty";
    case Basis::Disconnected: return "disconnected";
    case Basis::NonzeroHomology: return "nonzero-homology";
    case Basis::Dismantling: return "dismantling";
    case Basis::Collapse: return "collapse";
    case Basis::CoreNotPoint: return "core-not-point";
    case Basis::NotCollapsible: return "not-collapsible";
    case Basis::BudgetExhausted: return "budget-exhausted";
    }
    return "?";
}

std::optional<StepKind> step_kind_from_string(std::string_view s)
{
    for (auto k : {StepKind::UpBeat, StepKind::DownBeat, StepKind::UpWeak, StepKind::DownWeak, StepKind::GammaUp,
                   StepKind::GammaDown, StepKind::SimplicialCollapse})
        if (s == to_string(k))
            return k;
    return std::nullopt;
}

namespace {

bool is_beat(StepKind k) { return k == StepKind::UpBeat || k == StepKind::DownBeat; }
bool is_up(StepKind k) { return k == StepKind::UpBeat || k == StepKind::UpWeak || k == StepKind::GammaUp; }

struct BitsHash
{
    std::size_t operator()(const Bits& b) const
    {
        std::vector<Bits::block_type> blocks;
        boost::to_block_range(b, std::back_inserter(blocks));
        std::size_t h = b.size();
        for (auto w : blocks)
            h ^= std::hash<Bits::block_type>{}(w) + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
        return h;
    }
};

Bits above_in(const Poset& p, Index x, const Bits& alive)
{
    Bits b = p.up(x) & alive;
    b.reset(x);
    return b;
}

Bits below_in(const Poset& p, Index x, const Bits& alive)
{
    Bits b = p.down(x) & alive;
    b.reset(x);
    return b;
}

std::optional<Index> minimum_of(const Poset& p, const Bits& t)
{
    for (auto m = t.find_first(); m != Bits::npos; m = t.find_next(m))
        if (t.is_subset_of(p.up(static_cast<Index>(m))))
            return static_cast<Index>(m);
    return std::nullopt;
}

std::optional<Index> maximum_of(const Poset& p, const Bits& t)
{
    for (auto m = t.find_first(); m != Bits::npos; m = t.find_next(m))
        if (t.is_subset_of(p.down(static_cast<Index>(m))))
            return static_cast<Index>(m);
    return std::nullopt;
}

// Up-beat is checked before down-beat.
std::optional<BeatPoint> beat_in(const Poset& p, Index x, const Bits& alive)
{
    if (auto w = minimum_of(p, above_in(p, x, alive)))
        return BeatPoint{x, StepKind::UpBeat, *w};
    if (auto w = maximum_of(p, below_in(p, x, alive)))
        return BeatPoint{x, StepKind::DownBeat, *w};
    return std::nullopt;
}

ReductionStep beat_step(const Poset& p, const BeatPoint& b)
{
    ReductionStep s;
    s.kind = b.kind;
    s.element = p.id(b.element);
    s.witness = p.id(b.witness);
    return s;
}

// Greedy dismantling of the subposet `alive` of p; returns what is left.
Bits core_of(const Poset& p, Bits alive, ReductionCertificate* certificate)
{
    for (bool removed = true; removed;) {
        removed = false;
        for (auto x = alive.find_first(); x != Bits::npos; x = alive.find_next(x)) {
            if (auto b = beat_in(p, static_cast<Index>(x), alive)) {
                if (certificate)
                    certificate->steps.push_back(beat_step(p, *b));
                alive.reset(x);
                removed = true;
                break;
            }
        }
    }
    return alive;
}

bool dismantles(const Poset& p, const Bits& subset) { return subset.any() && core_of(p, subset, nullptr).count() == 1; }

std::shared_ptr<const TrivialityVerdict> dismantling_evidence(const Poset& p, const Bits& subset)
{
    auto v = std::make_shared<TrivialityVerdict>();
    Bits rest = core_of(p, subset, &v->certificate);
    if (rest.count() == 1) {
        v->value = Verdict::Trivial;
        v->basis = Basis::Dismantling;
    } else {
        v->value = Verdict::Unknown;
        v->basis = Basis::CoreNotPoint;
        v->count = rest.count();
    }
    return v;
}

// Depth-first search over weak-point deletions of a subposet of `p`.
class CollapseSearch
{
public:
    CollapseSearch(const Poset& p, std::optional<Bits> target, std::size_t budget)
        : p_(p), target_(std::move(target)), budget_(budget)
    {
    }

    std::optional<ReductionCertificate> run()
    {
        Bits alive = p_.full_bits();
        if (!dfs(alive))
            return std::nullopt;
        // Rebuild the path with certificates attached.
        ReductionCertificate c;
        Bits cur = p_.full_bits();
        for (const auto& [x, kind] : path_) {
            ReductionStep s;
            s.kind = kind;
            s.element = p_.id(x);
            if (kind == StepKind::UpBeat)
                s.witness = p_.id(*minimum_of(p_, above_in(p_, x, cur)));
            else if (kind == StepKind::DownBeat)
                s.witness = p_.id(*maximum_of(p_, below_in(p_, x, cur)));
            else
                s.evidence = dismantling_evidence(
                    p_, kind == StepKind::UpWeak ? above_in(p_, x, cur) : below_in(p_, x, cur));
            c.steps.push_back(std::move(s));
            cur.reset(x);
        }
        return c;
    }

    std::size_t nodes() const { return nodes_; }
    bool exhausted() const { return exhausted_; }

private:
    bool goal(const Bits& alive) const { return target_ ? alive == *target_ : alive.count() == 1; }

    std::vector<std::pair<Index, StepKind>> moves(const Bits& alive) const
    {
        std::vector<std::pair<Index, StepKind>> beats, weak;
        for (auto i = alive.find_first(); i != Bits::npos; i = alive.find_next(i)) {
            Index x = static_cast<Index>(i);
            if (target_ && target_->test(x))
                continue;
            if (auto b = beat_in(p_, x, alive))
                beats.emplace_back(x, b->kind);
            else if (dismantles(p_, above_in(p_, x, alive)))
                weak.emplace_back(x, StepKind::UpWeak);
            else if (dismantles(p_, below_in(p_, x, alive)))
                weak.emplace_back(x, StepKind::DownWeak);
        }
        beats.insert(beats.end(), weak.begin(), weak.end());
        return beats;
    }

    bool dfs(Bits& alive)
    {
        if (goal(alive))
            return true;
        if (failed_.count(alive))
            return false;
        if (++nodes_ > budget_) {
            exhausted_ = true;
            return false;
        }
        for (const auto& m : moves(alive)) {
            alive.reset(m.first);
            path_.push_back(m);
            if (dfs(alive))
                return true;
            path_.pop_back();
            alive.set(m.first);
            if (exhausted_)
                return false;
        }
        failed_.insert(alive);
        return false;
    }

    const Poset& p_;
    std::optional<Bits> target_;
    std::size_t budget_;
    std::size_t nodes_ = 0;
    bool exhausted_ = false;
    std::unordered_set<Bits, BitsHash> failed_;
    std::vector<std::pair<Index, StepKind>> path_;
};

void check_budget(const SearchOptions& options)
{
    if (options.budget == 0)
        throw std::invalid_argument("search budget must be positive");
}

} // namespace

// --- beat points ------------------------------------------------------------

std::vector<BeatPoint> find_beat_points(const Poset& p)
{
    std::vector<BeatPoint> out;
    for (Index x = 0; x < p.size(); ++x) {
        if (p.upper_covers(x).size() == 1)
            out.push_back({x, StepKind::UpBeat, p.upper_covers(x).front()});
        if (p.lower_covers(x).size() == 1)
            out.push_back({x, StepKind::DownBeat, p.lower_covers(x).front()});
    }
    return out;
}

CoreResult core(const Poset& p)
{
    CoreResult r;
    Bits rest = core_of(p, p.full_bits(), &r.certificate);
    r.core = induced_subposet(p, rest);
    return r;
}

TrivialityVerdict is_dismantlable(const Poset& p)
{
    TrivialityVerdict v;
    Bits rest = core_of(p, p.full_bits(), &v.certificate);
    if (rest.count() == 1) {
        v.value = Verdict::Trivial;
        v.basis = Basis::Dismantling;
    } else {
        v.value = Verdict::Unknown;
        v.basis = Basis::CoreNotPoint;
        v.count = rest.count();
        v.certificate.steps.clear();
    }
    return v;
}

// --- weak points and collapses ------------------------------------------------

std::vector<WeakPoint> find_weak_points(const Poset& p)
{
    std::vector<WeakPoint> out;
    const Bits all = p.full_bits();
    for (Index x = 0; x < p.size(); ++x) {
        auto up = dismantling_evidence(p, above_in(p, x, all));
        if (up->value == Verdict::Trivial)
            out.push_back({x, StepKind::UpWeak, up});
        auto down = dismantling_evidence(p, below_in(p, x, all));
        if (down->value == Verdict::Trivial)
            out.push_back({x, StepKind::DownWeak, down});
    }
    return out;
}

std::optional<ReductionCertificate> collapse_search(const Poset& p, const std::vector<std::string>& target,
                                                    const SearchOptions& options)
{
    check_budget(options);
    Bits t = ElementSet::from_ids(p, target).bits();
    CollapseSearch search(p, t, options.budget);
    return search.run();
}

TrivialityVerdict is_collapsible(const Poset& p, const SearchOptions& options)
{
    check_budget(options);
    TrivialityVerdict v;
    if (p.empty()) {
        v.basis = Basis::NotCollapsible;
        return v;
    }
    CollapseSearch search(p, std::nullopt, options.budget);
    auto c = search.run();
    v.nodes = search.nodes();
    if (c) {
        v.value = Verdict::Trivial;
        v.basis = Basis::Collapse;
        v.certificate = std::move(*c);
    } else {
        v.basis = search.exhausted() ? Basis::BudgetExhausted : Basis::NotCollapsible;
    }
    return v;
}

// --- gamma points and the triviality oracle ---------------------------------

TrivialityVerdict triviality_oracle(const Poset& p, const SearchOptions& options)
{
    check_budget(options);
    TrivialityVerdict v;
    if (p.empty()) {
        v.value = Verdict::NonTrivial;
        v.basis = Basis::Empty;
        return v;
    }
    auto components = connected_components(ElementSet(p, p.full_bits()));
    if (components.size() > 1) {
        v.value = Verdict::NonTrivial;
        v.basis = Basis::Disconnected;
        v.count = components.size();
        return v;
    }
    TrivialityVerdict d = is_dismantlable(p);
    if (d.value == Verdict::Trivial)
        return d;
    HomologyProfile h = homology(p, true);
    if (!h.is_zero()) {
        v.value = Verdict::NonTrivial;
        v.basis = Basis::NonzeroHomology;
        v.homology = std::move(h);
        return v;
    }
    return is_collapsible(p, options);
}

TrivialityVerdict triviality_oracle(const ElementSet& s, const SearchOptions& options)
{
    return triviality_oracle(induced_subposet(s), options);
}

GammaClassification find_gamma_points(const Poset& p, const SearchOptions& options)
{
    GammaClassification out;
    for (Index x = 0; x < p.size(); ++x) {
        auto up = std::make_shared<const TrivialityVerdict>(triviality_oracle(punctured_up(p, x), options));
        auto down = std::make_shared<const TrivialityVerdict>(triviality_oracle(punctured_down(p, x), options));
        if (up->value == Verdict::Trivial)
            out.gamma.push_back({x, StepKind::GammaUp, up});
        if (down->value == Verdict::Trivial)
            out.gamma.push_back({x, StepKind::GammaDown, down});
        if (up->value != Verdict::Trivial && down->value != Verdict::Trivial &&
            (up->value == Verdict::Unknown || down->value == Verdict::Unknown))
            out.undecided.push_back(x);
    }
    return out;
}

CoreResult gamma_reduce(const Poset& p, const SearchOptions& options)
{
    CoreResult r{p, {}};
    for (bool removed = true; removed;) {
        removed = false;
        const Poset& cur = r.core;
        for (Index x = 0; x < cur.size() && !removed; ++x) {
            for (bool up : {true, false}) {
                auto v = triviality_oracle(up ? punctured_up(cur, x) : punctured_down(cur, x), options);
                if (v.value != Verdict::Trivial)
                    continue;
                ReductionStep s;
                s.kind = up ? StepKind::GammaUp : StepKind::GammaDown;
                s.element = cur.id(x);
                s.evidence = std::make_shared<const TrivialityVerdict>(std::move(v));
                r.certificate.steps.push_back(std::move(s));
                Bits keep = cur.full_bits();
                keep.reset(x);
                r.core = induced_subposet(cur, keep);
                removed = true;
                break;
            }
        }
    }
    return r;
}

// --- simplicial collapses ---------------------------------------------------

namespace {

// Cells of a complex with codimension-one incidences, numbered by dimension
// and then lexicographically.
struct Incidence
{
    std::vector<Simplex> cells;
    std::vector<std::vector<std::size_t>> facets;
    std::vector<std::vector<std::size_t>> cofaces;

    explicit Incidence(const SimplicialComplex& k)
    {
        std::vector<std::size_t> offset;
        for (int d = 0; d <= k.dimension(); ++d) {
            offset.push_back(cells.size());
            for (const auto& s : k.simplices(d))
                cells.push_back(s);
        }
        facets.resize(cells.size());
        cofaces.resize(cells.size());
        for (std::size_t c = 0; c < cells.size(); ++c) {
            const Simplex& s = cells[c];
            if (s.size() < 2)
                continue;
            for (std::size_t drop = 0; drop < s.size(); ++drop) {
                Simplex f;
                for (std::size_t i = 0; i < s.size(); ++i)
                    if (i != drop)
                        f.push_back(s[i]);
                std::size_t g = offset[f.size() - 1] + *k.position(f);
                facets[c].push_back(g);
                cofaces[g].push_back(c);
            }
        }
    }
};

class SimplicialSearch
{
public:
    SimplicialSearch(const SimplicialComplex& k, std::optional<Bits> target, std::size_t budget)
        : k_(k), inc_(k), target_(std::move(target)), budget_(budget)
    {
    }

    std::optional<ReductionCertificate> run()
    {
        Bits alive(inc_.cells.size());
        alive.set();
        live_cofaces_.assign(inc_.cells.size(), 0);
        for (std::size_t c = 0; c < inc_.cells.size(); ++c)
            live_cofaces_[c] = static_cast<std::uint32_t>(inc_.cofaces[c].size());
        if (!dfs(alive))
            return std::nullopt;
        ReductionCertificate c;
        for (const auto& [f, t] : path_) {
            ReductionStep s;
            s.kind = StepKind::SimplicialCollapse;
            s.face = k_.labels(inc_.cells[f]);
            s.coface = k_.labels(inc_.cells[t]);
            c.steps.push_back(std::move(s));
        }
        return c;
    }

    std::size_t nodes() const { return nodes_; }

private:
    bool goal(const Bits& alive) const { return target_ ? alive == *target_ : alive.count() == 1; }

    std::vector<std::pair<std::size_t, std::size_t>> moves(const Bits& alive) const
    {
        std::vector<std::pair<std::size_t, std::size_t>> out;
        for (auto i = alive.find_first(); i != Bits::npos; i = alive.find_next(i)) {
            if (live_cofaces_[i] != 1 || (target_ && target_->test(i)))
                continue;
            for (std::size_t t : inc_.cofaces[i])
                if (alive.test(t) && live_cofaces_[t] == 0)
                    out.emplace_back(i, t);
        }
        // Higher-dimensional pairs first.
        std::stable_sort(out.begin(), out.end(), [&](const auto& a, const auto& b) {
            return inc_.cells[a.first].size() > inc_.cells[b.first].size();
        });
        return out;
    }

    void remove(Bits& alive, std::size_t c)
    {
        alive.reset(c);
        for (std::size_t f : inc_.facets[c])
            --live_cofaces_[f];
    }

    void restore(Bits& alive, std::size_t c)
    {
        alive.set(c);
        for (std::size_t f : inc_.facets[c])
            ++live_cofaces_[f];
    }

    bool dfs(Bits& alive)
    {
        if (goal(alive))
            return true;
        if (failed_.count(alive))
            return false;
        if (++nodes_ > budget_) {
            exhausted_ = true;
            return false;
        }
        for (const auto& [f, t] : moves(alive)) {
            remove(alive, t);
            remove(alive, f);
            path_.emplace_back(f, t);
            if (dfs(alive))
                return true;
            path_.pop_back();
            restore(alive, f);
            restore(alive, t);
            if (exhausted_)
                return false;
        }
        failed_.insert(alive);
        return false;
    }

    const SimplicialComplex& k_;
    Incidence inc_;
    std::optional<Bits> target_;
    std::size_t budget_;
    std::size_t nodes_ = 0;
    bool exhausted_ = false;
    std::vector<std::uint32_t> live_cofaces_;
    std::unordered_set<Bits, BitsHash> failed_;
    std::vector<std::pair<std::size_t, std::size_t>> path_;
};

// k without the two given simplices; vertices left without simplices disappear.
SimplicialComplex remove_pair(const SimplicialComplex& k, const Simplex& a, const Simplex& b)
{
    std::vector<Simplex> rest;
    std::vector<bool> used(k.num_vertices(), false);
    for (int d = 0; d <= k.dimension(); ++d)
        for (const auto& s : k.simplices(d))
            if (s != a && s != b) {
                rest.push_back(s);
                for (Index v : s)
                    used[v] = true;
            }
    std::vector<Index> renumber(k.num_vertices(), 0);
    std::vector<std::string> vertices;
    for (Index v = 0; v < k.num_vertices(); ++v)
        if (used[v]) {
            renumber[v] = static_cast<Index>(vertices.size());
            vertices.push_back(k.vertices()[v]);
        }
    for (auto& s : rest)
        for (auto& v : s)
            v = renumber[v];
    return SimplicialComplex::from_simplices(std::move(vertices), rest);
}

} // namespace

std::vector<FreeFace> free_faces(const SimplicialComplex& k)
{
    Incidence inc(k);
    std::vector<FreeFace> out;
    for (std::size_t c = 0; c < inc.cells.size(); ++c) {
        if (inc.cofaces[c].size() != 1)
            continue;
        std::size_t t = inc.cofaces[c].front();
        if (inc.cofaces[t].empty())
            out.push_back({inc.cells[c], inc.cells[t]});
    }
    return out;
}

std::optional<ReductionCertificate> simplicial_collapse(const SimplicialComplex& k, const SimplicialComplex& target,
                                                        const SearchOptions& options)
{
    check_budget(options);
    Incidence inc(k);
    Bits t(inc.cells.size());
    for (int d = 0; d <= target.dimension(); ++d)
        for (const auto& s : target.simplices(d)) {
            Simplex mine = k.simplex_of(target.labels(s));
            if (!k.contains(mine))
                throw InputError("target simplex " + target.label(s) + " is not a simplex of the complex");
            t.set(std::find(inc.cells.begin(), inc.cells.end(), mine) - inc.cells.begin());
        }
    SimplicialSearch search(k, t, options.budget);
    return search.run();
}

std::optional<ReductionCertificate> simplicial_collapse_to_point(const SimplicialComplex& k,
                                                                 const SearchOptions& options)
{
    check_budget(options);
    if (k.size() == 0)
        return std::nullopt;
    SimplicialSearch search(k, std::nullopt, options.budget);
    return search.run();
}

// --- replay -----------------------------------------------------------------

namespace {

std::string check_trivial_evidence(const Poset& sub, const TrivialityVerdict* v, bool contractible);

std::string check_poset_step(const Poset& cur, const ReductionStep& step)
{
    if (step.kind == StepKind::SimplicialCollapse)
        return "simplicial collapse step in a poset certificate";
    auto x = cur.find(step.element);
    if (!x)
        return "element '" + step.element + "' is not present";
    const Bits all = cur.full_bits();
    const Bits above = above_in(cur, *x, all);
    const Bits below = below_in(cur, *x, all);
    if (is_beat(step.kind)) {
        auto w = cur.find(step.witness);
        if (!w)
            return "witness '" + step.witness + "' is not present";
        bool ok = step.kind == StepKind::UpBeat ? above.test(*w) && above.is_subset_of(cur.up(*w))
                                                : below.test(*w) && below.is_subset_of(cur.down(*w));
        if (!ok)
            return "'" + step.witness + "' is not the " +
                   (step.kind == StepKind::UpBeat ? "minimum of the punctured up-set" : "maximum of the punctured down-set") +
                   " of '" + step.element + "'";
        return {};
    }
    bool weak = step.kind == StepKind::UpWeak || step.kind == StepKind::DownWeak;
    Poset sub = induced_subposet(cur, is_up(step.kind) ? above : below);
    std::string err = check_trivial_evidence(sub, step.evidence.get(), weak);
    if (!err.empty())
        return "evidence for '" + step.element + "': " + err;
    return {};
}

std::string check_trivial_evidence(const Poset& sub, const TrivialityVerdict* v, bool contractible)
{
    if (!v)
        return "missing";
    if (v->value != Verdict::Trivial)
        return std::string("verdict is ") + to_string(v->value);
    if (contractible)
        for (const auto& s : v->certificate.steps)
            if (!is_beat(s.kind))
                return "a contractibility certificate may only remove beat points";
    auto r = replay(sub, v->certificate);
    if (!r.ok)
        return "nested step " + std::to_string(r.failed_step) + ": " + r.error;
    if (r.result.size() != 1)
        return "certificate ends with " + std::to_string(r.result.size()) + " elements, not one";
    return {};
}

} // namespace

Replay<Poset> replay(const Poset& start, const ReductionCertificate& certificate, const PosetStepHook& hook)
{
    Replay<Poset> r;
    Poset cur = start;
    for (std::size_t i = 0; i < certificate.steps.size(); ++i) {
        const ReductionStep& step = certificate.steps[i];
        std::string err = check_poset_step(cur, step);
        if (!err.empty()) {
            r.error = "step " + std::to_string(i) + " (" + to_string(step.kind) + "): " + err;
            r.failed_step = i;
            r.result = cur;
            return r;
        }
        Bits keep = cur.full_bits();
        keep.reset(cur.index_of(step.element));
        Poset next = induced_subposet(cur, keep);
        if (hook)
            hook(cur, step, next);
        cur = std::move(next);
    }
    r.ok = true;
    r.result = std::move(cur);
    return r;
}

Replay<SimplicialComplex> replay(const SimplicialComplex& start, const ReductionCertificate& certificate,
                                 const ComplexStepHook& hook)
{
    Replay<SimplicialComplex> r;
    SimplicialComplex cur = start;
    auto fail = [&](std::size_t i, const std::string& msg) {
        r.error = "step " + std::to_string(i) + ": " + msg;
        r.failed_step = i;
        r.result = cur;
        return r;
    };
    for (std::size_t i = 0; i < certificate.steps.size(); ++i) {
        const ReductionStep& step = certificate.steps[i];
        if (step.kind != StepKind::SimplicialCollapse)
            return fail(i, "poset step in a simplicial certificate");
        Simplex face, coface;
        try {
            face = cur.simplex_of(step.face);
            coface = cur.simplex_of(step.coface);
        } catch (const InputError& e) {
            return fail(i, e.what());
        }
        if (face.size() != step.face.size() || coface.size() != step.coface.size() || face.empty())
            return fail(i, "malformed simplex");
        if (!cur.contains(face) || !cur.contains(coface))
            return fail(i, "face or coface is not in the complex");
        if (coface.size() <= face.size() || !std::includes(coface.begin(), coface.end(), face.begin(), face.end()))
            return fail(i, simplex_label(step.coface) + " is not a proper coface of " + simplex_label(step.face));
        std::size_t proper = 0;
        for (int d = static_cast<int>(face.size()); d <= cur.dimension(); ++d)
            for (const auto& s : cur.simplices(d))
                if (std::includes(s.begin(), s.end(), face.begin(), face.end()))
                    ++proper;
        if (proper != 1)
            return fail(i, simplex_label(step.face) + " has " + std::to_string(proper) + " proper cofaces");
        SimplicialComplex next = remove_pair(cur, face, coface);
        if (hook)
            hook(cur, step, next);
        cur = std::move(next);
    }
    r.ok = true;
    r.result = std::move(cur);
    return r;
}

std::string verify_verdict(const Poset& p, const TrivialityVerdict& verdict)
{
    switch (verdict.value) {
    case Verdict::Trivial:
        return check_trivial_evidence(p, &verdict, verdict.basis == Basis::Dismantling);
    case Verdict::NonTrivial:
        switch (verdict.basis) {
        case Basis::Empty:
            return p.empty() ? "" : "poset is not empty";
        case Basis::Disconnected: {
            auto n = connected_components(ElementSet(p, p.full_bits())).size();
            if (n < 2 || n != verdict.count)
                return "recomputed " + std::to_string(n) + " components, certificate claims " +
                       std::to_string(verdict.count);
            return {};
        }
        case Basis::NonzeroHomology: {
            HomologyProfile h = homology(p, true);
            if (h.is_zero())
                return "recomputed reduced homology vanishes";
            if (verdict.homology && !(*verdict.homology == h))
                return "recomputed reduced homology differs: " + h.summary();
            return {};
        }
        default:
            return std::string("basis ") + to_string(verdict.basis) + " cannot support NonTrivial";
        }
    case Verdict::Unknown:
        return {};
    }
    return {};
}

// --- poset to simplicial translation ----------------------------------------

namespace {

using Pair = std::pair<Simplex, Simplex>;

Simplex with(Simplex s, Index v)
{
    s.insert(std::upper_bound(s.begin(), s.end(), v), v);
    return s;
}

Simplex join(const Simplex& a, const Simplex& b)
{
    Simplex out;
    std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
    return out;
}

// Non-empty chains inside `mask`, largest first.
std::vector<Simplex> chains_in(const Poset& p, const Bits& mask)
{
    std::vector<Simplex> out;
    Simplex chain;
    std::function<void(Index)> extend = [&](Index top) {
        Simplex sorted = chain;
        std::sort(sorted.begin(), sorted.end());
        out.push_back(std::move(sorted));
        Bits above = above_in(p, top, mask);
        for (auto y = above.find_first(); y != Bits::npos; y = above.find_next(y)) {
            chain.push_back(static_cast<Index>(y));
            extend(static_cast<Index>(y));
            chain.pop_back();
        }
    };
    for (auto x = mask.find_first(); x != Bits::npos; x = mask.find_next(x)) {
        chain.assign(1, static_cast<Index>(x));
        extend(static_cast<Index>(x));
    }
    std::stable_sort(out.begin(), out.end(), [](const Simplex& a, const Simplex& b) { return a.size() > b.size(); });
    return out;
}

/*
 * Deleting x from the current subposet removes the open star of x from the
 * order complex. The link of x is the join A * B of the order complexes of
 * its punctured down- and up-sets, where A is the side certified
 * contractible. A collapse of A to a vertex a extends to A * B -> a * B
 * (pairs (s+n, t+n) with n running over B's chains, largest first), then the
 * cone a * B collapses to a, and the whole sequence lifts to the cone over x
 * before the final pair ({x}, {x,a}).
 */
bool translate(const Poset& p, Bits& mask, const ReductionCertificate& c, std::vector<Pair>& out)
{
    for (const auto& step : c.steps) {
        auto found = p.find(step.element);
        if (!found || !mask.test(*found))
            return false;
        const Index x = *found;
        const bool up = is_up(step.kind);
        Bits a = up ? above_in(p, x, mask) : below_in(p, x, mask);
        Bits b = up ? below_in(p, x, mask) : above_in(p, x, mask);

        std::vector<Pair> a_pairs;
        Index apex = 0;
        if (is_beat(step.kind)) {
            auto w = p.find(step.witness);
            if (!w || !a.test(*w))
                return false;
            apex = *w;
            Bits rest = a;
            rest.reset(apex);
            for (const auto& n : chains_in(p, rest))
                a_pairs.emplace_back(n, with(n, apex));
        } else if (step.kind == StepKind::UpWeak || step.kind == StepKind::DownWeak) {
            if (!step.evidence)
                return false;
            Bits sub = a;
            if (!translate(p, sub, step.evidence->certificate, a_pairs) || sub.count() != 1)
                return false;
            apex = static_cast<Index>(sub.find_first());
        } else {
            return false;
        }

        const auto b_chains = chains_in(p, b);
        std::vector<Pair> link;
        for (const auto& [s, t] : a_pairs) {
            for (const auto& n : b_chains)
                link.emplace_back(join(s, n), join(t, n));
            link.emplace_back(s, t);
        }
        for (const auto& n : b_chains)
            link.emplace_back(n, with(n, apex));
        for (const auto& [s, t] : link)
            out.emplace_back(with(s, x), with(t, x));
        out.emplace_back(Simplex{x}, with(Simplex{x}, apex));
        mask.reset(x);
    }
    return true;
}

void collect_nested(const Poset& start, const ReductionCertificate& c, std::vector<NestedCertificate>& out)
{
    out.push_back({start, &c});
    Poset cur = start;
    for (const auto& step : c.steps) {
        auto x = cur.find(step.element);
        if (!x)
            return;
        const Bits all = cur.full_bits();
        if (step.evidence)
            collect_nested(induced_subposet(cur, is_up(step.kind) ? above_in(cur, *x, all) : below_in(cur, *x, all)),
                           step.evidence->certificate, out);
        Bits keep = all;
        keep.reset(*x);
        cur = induced_subposet(cur, keep);
    }
}

} // namespace

std::optional<ReductionCertificate> to_simplicial_collapse(const Poset& start, const ReductionCertificate& certificate)
{
    Bits mask = start.full_bits();
    std::vector<Pair> pairs;
    if (!translate(start, mask, certificate, pairs))
        return std::nullopt;
    ReductionCertificate out;
    out.steps.reserve(pairs.size());
    auto ids = [&](const Simplex& s) {
        std::vector<std::string> v;
        for (Index i : s)
            v.push_back(start.id(i));
        return v;
    };
    for (const auto& [s, t] : pairs) {
        ReductionStep step;
        step.kind = StepKind::SimplicialCollapse;
        step.face = ids(s);
        step.coface = ids(t);
        out.steps.push_back(std::move(step));
    }
    return out;
}

std::vector<NestedCertificate> nested_certificates(const Poset& start, const ReductionCertificate& certificate)
{
    std::vector<NestedCertificate> out;
    collect_nested(start, certificate, out);
    return out;
}

} // namespace fintop
