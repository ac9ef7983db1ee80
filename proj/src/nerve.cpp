#include "fintop/nerve.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>

#include "fintop/errors.hpp"

namespace fintop {

std::vector<Intersection> enumerate_intersections(const std::vector<Bits>& parts)
{
    std::vector<Intersection> out, level;
    for (std::size_t i = 0; i < parts.size(); ++i)
        if (parts[i].any())
            level.push_back({{i}, parts[i]});
    std::set<std::vector<std::size_t>> present;
    while (!level.empty()) {
        for (const auto& f : level)
            present.insert(f.parts);
        std::vector<Intersection> next;
        for (const auto& f : level) {
            for (std::size_t j = f.parts.back() + 1; j < parts.size(); ++j) {
                Bits w = f.members & parts[j];
                if (w.none())
                    continue;
                std::vector<std::size_t> grown = f.parts;
                grown.push_back(j);
                // Downward closure of the nerve: every facet must already be present.
                for (std::size_t drop = 0; drop < grown.size(); ++drop) {
                    std::vector<std::size_t> facet;
                    for (std::size_t k = 0; k < grown.size(); ++k)
                        if (k != drop)
                            facet.push_back(grown[k]);
                    if (!present.count(facet))
                        throw std::logic_error("nerve is not downward closed");
                }
                next.push_back({std::move(grown), std::move(w)});
            }
        }
        out.insert(out.end(), std::make_move_iterator(level.begin()), std::make_move_iterator(level.end()));
        level = std::move(next);
    }
    return out;
}

std::string index_label(const std::vector<std::string>& names, const std::vector<std::size_t>& parts)
{
    std::vector<std::string> v;
    for (std::size_t i : parts)
        v.push_back(names.at(i));
    return simplex_label(v);
}

// --- covers -------------------------------------------------------------------

PosetCover::PosetCover(Poset base, std::vector<std::string> names, std::vector<Bits> parts) : base_(std::move(base))
{
    if (names.size() != parts.size())
        throw InputError("cover has " + std::to_string(names.size()) + " names for " + std::to_string(parts.size()) +
                         " parts");
    std::vector<std::size_t> order(names.size());
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return names[a] < names[b]; });
    for (std::size_t k = 0; k < order.size(); ++k) {
        const std::string& name = names[order[k]];
        if (name.empty())
            throw InputError("cover part with an empty name");
        if (k > 0 && name == names_.back())
            throw InputError("cover part '" + name + "' appears twice");
        Bits part = std::move(parts[order[k]]);
        if (part.size() != base_.size())
            throw InputError("cover part '" + name + "' does not live in the covered poset");
        for (auto y = part.find_first(); y != Bits::npos; y = part.find_next(y)) {
            Bits missing = base_.down(static_cast<Index>(y)) - part;
            if (missing.any())
                throw InputError("cover part '" + name + "' is not a down-set: '" +
                                 base_.id(static_cast<Index>(missing.find_first())) + "' is below '" +
                                 base_.id(static_cast<Index>(y)) + "' but not in the part");
        }
        names_.push_back(name);
        parts_.push_back(std::move(part));
    }
    Bits covered = base_.empty_bits();
    for (const auto& p : parts_)
        covered |= p;
    if (covered != base_.full_bits()) {
        Bits missing = base_.full_bits() - covered;
        throw InputError("cover misses element '" + base_.id(static_cast<Index>(missing.find_first())) + "'");
    }
    intersections_ = enumerate_intersections(parts_);
}

PosetCover PosetCover::from_ids(Poset base, const std::vector<std::pair<std::string, std::vector<std::string>>>& parts,
                                bool take_open_hull)
{
    std::vector<std::string> names;
    std::vector<Bits> bits;
    for (const auto& [name, members] : parts) {
        ElementSet s = ElementSet::from_ids(base, members);
        if (take_open_hull)
            s = open_hull(s);
        names.push_back(name);
        bits.push_back(s.bits());
    }
    return PosetCover(std::move(base), std::move(names), std::move(bits));
}

ElementSet PosetCover::intersection(const std::vector<std::size_t>& parts) const
{
    Bits w = base_.full_bits();
    for (std::size_t i : parts)
        w &= parts_.at(i);
    return ElementSet(base_, std::move(w));
}

ComplexCover::ComplexCover(SimplicialComplex base,
                           const std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>>& parts)
    : base_(std::move(base)), faces_(face_poset_with_cells(base_)), face_cover_(make_face_cover(base_, faces_, parts))
{
}

PosetCover ComplexCover::make_face_cover(
    const SimplicialComplex& base, const FacePoset& faces,
    const std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>>& parts)
{
    std::map<Simplex, Index> element_of;
    for (Index e = 0; e < faces.cells.size(); ++e)
        element_of.emplace(faces.cells[e], e);
    std::vector<std::string> names;
    std::vector<Bits> bits;
    for (const auto& [name, facets] : parts) {
        Bits part = faces.poset.empty_bits();
        for (const auto& f : facets) {
            Simplex s;
            try {
                s = base.simplex_of(f);
            } catch (const InputError& e) {
                throw InputError("cover part '" + name + "': " + e.what());
            }
            auto it = element_of.find(s);
            if (s.size() != f.size() || it == element_of.end())
                throw InputError("cover part '" + name + "': " + simplex_label(f) + " is not a simplex of the complex");
            part |= faces.poset.down(it->second);
        }
        names.push_back(name);
        bits.push_back(std::move(part));
    }
    return PosetCover(faces.poset, std::move(names), std::move(bits));
}

SimplicialComplex ComplexCover::part(std::size_t i) const
{
    std::vector<std::vector<std::string>> facets;
    for (Index e : bit_indices(face_cover_.parts().at(i)))
        facets.push_back(base_.labels(faces_.cells[e]));
    return SimplicialComplex::from_facets(facets);
}

// --- nerves -------------------------------------------------------------------

SimplicialComplex nerve_of_sets(const std::vector<std::string>& names, const std::vector<Bits>& parts)
{
    std::vector<std::vector<std::string>> simplices;
    for (const auto& f : enumerate_intersections(parts)) {
        std::vector<std::string> v;
        for (std::size_t i : f.parts)
            v.push_back(names.at(i));
        simplices.push_back(std::move(v));
    }
    return SimplicialComplex::from_facets(simplices);
}

SimplicialComplex nerve(const PosetCover& c)
{
    std::vector<std::vector<std::string>> simplices;
    for (const auto& f : c.intersections()) {
        std::vector<std::string> v;
        for (std::size_t i : f.parts)
            v.push_back(c.name(i));
        simplices.push_back(std::move(v));
    }
    return SimplicialComplex::from_facets(simplices);
}

SimplicialComplex nerve(const ComplexCover& c) { return nerve(c.face_cover()); }

Poset nerve_poset(const PosetCover& c) { return face_poset(nerve(c)); }

Poset nerve_poset(const ComplexCover& c) { return nerve_poset(c.face_cover()); }

// --- classification -------------------------------------------------------------

const char* to_string(CoverKind k)
{
    switch (k) {
    case CoverKind::Good: return "Good";
    case CoverKind::QuasiGood: return "QuasiGood";
    case CoverKind::Neither: return "Neither";
    case CoverKind::Unknown: return "Unknown";
    }
    return "?";
}

CoverClassification classify_cover(const PosetCover& c, const SearchOptions& options)
{
    CoverClassification out;
    bool all_trivial = true, some_nontrivial = false, some_unknown = false;
    for (const auto& f : c.intersections()) {
        IntersectionVerdict iv;
        iv.parts = f.parts;
        iv.label = c.label(f.parts);
        iv.members = f.members;
        ElementSet w(c.base(), f.members);
        iv.verdict = triviality_oracle(w, options);
        auto comps = connected_components(w);
        if (comps.size() == 1) {
            iv.components.emplace_back(f.members, iv.verdict);
        } else {
            for (const auto& comp : comps)
                iv.components.emplace_back(comp.bits(), triviality_oracle(comp, options));
        }
        all_trivial &= iv.verdict.value == Verdict::Trivial;
        for (const auto& [bits, v] : iv.components) {
            some_nontrivial |= v.value == Verdict::NonTrivial;
            some_unknown |= v.value == Verdict::Unknown;
        }
        out.intersections.push_back(std::move(iv));
    }
    if (all_trivial)
        out.kind = CoverKind::Good;
    else if (some_nontrivial)
        out.kind = CoverKind::Neither;
    else if (some_unknown)
        out.kind = CoverKind::Unknown;
    else
        out.kind = CoverKind::QuasiGood;
    return out;
}

CoverClassification classify_cover(const ComplexCover& c, const SearchOptions& options)
{
    return classify_cover(c.face_cover(), options);
}

// --- trivial faces -------------------------------------------------------------------

TrivialFaces trivial_faces(const PosetCover& c, const CoverClassification& classification)
{
    TrivialFaces out;
    Poset np = nerve_poset(c);
    Bits keep = np.empty_bits();
    std::map<std::string, std::size_t> by_label;
    for (std::size_t i = 0; i < classification.intersections.size(); ++i) {
        const auto& iv = classification.intersections[i];
        if (iv.verdict.value == Verdict::Unknown)
            out.status = Status::Unknown;
        if (iv.verdict.value != Verdict::Trivial)
            continue;
        keep.set(np.index_of(iv.label));
        by_label.emplace(iv.label, i);
    }
    out.poset = induced_subposet(np, keep);
    for (const auto& id : out.poset.ids())
        out.intersection_of.push_back(by_label.at(id));
    return out;
}

TrivialFaces trivial_faces(const PosetCover& c, const SearchOptions& options)
{
    return trivial_faces(c, classify_cover(c, options));
}

ElementSet faces_containing(const PosetCover& c, const TrivialFaces& trivial, std::string_view x)
{
    Index xi = c.base().index_of(x);
    Bits members = trivial.poset.empty_bits();
    for (Index e = 0; e < trivial.poset.size(); ++e)
        if (c.intersections().at(trivial.intersection_of[e]).members.test(xi))
            members.set(e);
    ElementSet out(trivial.poset, std::move(members));
    if (!is_down_set(out))
        throw std::logic_error("faces containing " + std::string(x) + " do not form a down-set");
    return out;
}

ElementSet faces_containing(const PosetCover& c, std::string_view x, const SearchOptions& options)
{
    return faces_containing(c, trivial_faces(c, options), x);
}

// --- completion ---------------------------------------------------------------

CompletionPoset completion_of_sets(const std::vector<std::string>& names, const std::vector<Bits>& parts,
                                   const ComponentSplitter& split, const ComponentNamer& name)
{
    struct Item
    {
        std::string id;
        CompletionCell cell;
    };
    std::vector<Item> items;
    for (const auto& f : enumerate_intersections(parts))
        for (auto& comp : split(f.members)) {
            std::string label = name(comp);
            std::string id = index_label(names, f.parts) + "|" + label;
            items.push_back({std::move(id), CompletionCell{f.parts, std::move(comp), std::move(label)}});
        }
    std::sort(items.begin(), items.end(), [](const Item& a, const Item& b) { return a.id < b.id; });
    for (std::size_t i = 1; i < items.size(); ++i)
        if (items[i].id == items[i - 1].id)
            throw std::logic_error("completion: duplicate cell " + items[i].id);

    const std::size_t n = items.size();
    CompletionPoset out;
    std::vector<std::string> ids;
    std::vector<Bits> down(n, Bits(n));
    for (std::size_t a = 0; a < n; ++a) {
        const CompletionCell& ca = items[a].cell;
        for (std::size_t b = 0; b < n; ++b) {
            const CompletionCell& cb = items[b].cell;
            // (J_b, C_b) <= (J_a, C_a)
            if (std::includes(ca.parts.begin(), ca.parts.end(), cb.parts.begin(), cb.parts.end()) &&
                ca.component.is_subset_of(cb.component))
                down[a].set(b);
        }
    }
    for (auto& it : items) {
        ids.push_back(it.id);
        out.dims.push_back(static_cast<int>(it.cell.parts.size()) - 1);
        out.cells.push_back(std::move(it.cell));
    }
    out.poset = Poset::from_closure(std::move(ids), std::move(down));
    std::string err = validate_simplex_cells(out.poset, out.dims);
    if (!err.empty())
        throw std::logic_error("completion: " + err);
    return out;
}

CompletionPoset completion_poset(const PosetCover& c)
{
    const Poset& base = c.base();
    auto split = [&](const Bits& w) {
        std::vector<Bits> out;
        for (const auto& comp : connected_components(ElementSet(base, w)))
            out.push_back(comp.bits());
        return out;
    };
    auto name = [&](const Bits& comp) { return base.id(static_cast<Index>(comp.find_first())); };
    return completion_of_sets(c.names(), c.parts(), split, name);
}

RegularCWComplex completion_cw(const CompletionPoset& p) { return RegularCWComplex(p.poset, p.dims); }

RegularCWComplex completion_cw(const ComplexCover& c) { return completion_cw(completion_poset(c.face_cover())); }

// --- verification -----------------------------------------------------------

const char* to_string(NerveVariant v)
{
    switch (v) {
    case NerveVariant::GoodPoset: return "good-poset";
    case NerveVariant::TrivialFaces: return "trivial-faces";
    case NerveVariant::QuasiGood: return "quasi-good";
    }
    return "?";
}

Relation trivial_faces_relation(const PosetCover& c, const TrivialFaces& trivial)
{
    Poset target = opposite(trivial.poset);
    std::vector<Bits> rows(c.base().size(), target.empty_bits());
    for (Index e = 0; e < trivial.poset.size(); ++e)
        for (Index x : bit_indices(c.intersections().at(trivial.intersection_of[e]).members))
            rows[x].set(e);
    return Relation(c.base(), std::move(target), std::move(rows));
}

Relation completion_relation(const PosetCover& c, const CompletionPoset& completion)
{
    Poset target = opposite(completion.poset);
    std::vector<Bits> rows(c.base().size(), target.empty_bits());
    for (Index e = 0; e < completion.poset.size(); ++e)
        for (Index x : bit_indices(completion.cells[e].component))
            rows[x].set(e);
    return Relation(c.base(), std::move(target), std::move(rows));
}

NerveReport verify_nerve_equivalence(const PosetCover& c, NerveVariant variant, const SearchOptions& options)
{
    NerveReport r;
    r.variant = variant;
    r.classification = classify_cover(c, options);
    r.base_homology = homology(c.base());

    std::optional<Relation> relation;
    const CoverKind kind = r.classification.kind;
    switch (variant) {
    case NerveVariant::GoodPoset: {
        TrivialFaces trivial = trivial_faces(c, r.classification);
        r.nerve_object = nerve_poset(c);
        if (kind == CoverKind::Unknown) {
            r.status = Status::Unknown;
            r.message = "some intersection could not be decided";
        } else if (kind != CoverKind::Good) {
            r.status = Status::Refuted;
            r.message = std::string("cover is not good (") + to_string(kind) + ")";
        } else {
            relation = trivial_faces_relation(c, trivial);
        }
        break;
    }
    case NerveVariant::TrivialFaces: {
        TrivialFaces trivial = trivial_faces(c, r.classification);
        r.nerve_object = trivial.poset;
        if (trivial.status != Status::Certified) {
            r.status = Status::Unknown;
            r.message = "some intersection could not be decided";
        } else {
            relation = trivial_faces_relation(c, trivial);
        }
        break;
    }
    case NerveVariant::QuasiGood: {
        CompletionPoset completion = completion_poset(c);
        r.nerve_object = completion.poset;
        if (kind == CoverKind::Unknown) {
            r.status = Status::Unknown;
            r.message = "some component of an intersection could not be decided";
        } else if (kind == CoverKind::Neither) {
            r.status = Status::Refuted;
            r.message = "some component of an intersection is not homotopically trivial";
        } else {
            relation = completion_relation(c, completion);
        }
        break;
    }
    }

    r.nerve_homology = homology(r.nerve_object);
    r.comparison = same_homology(r.base_homology, r.nerve_homology);
    if (!relation)
        return r;

    r.equivalence = verify_relation_equivalence(*relation, options);
    r.status = r.equivalence->status;
    r.message = r.equivalence->message;
    if (r.status == Status::Certified && !r.comparison.equal) {
        r.status = Status::Error;
        r.message = "certified but the homology of the nerve object differs";
    }
    return r;
}

CompletionReport verify_completion_homology(const ComplexCover& c, const SearchOptions& options)
{
    CompletionReport out;
    out.base_homology = homology(c.base());
    out.poset_level = verify_nerve_equivalence(c.face_cover(), NerveVariant::QuasiGood, options);
    out.completion = completion_cw(c);
    out.completion_homology = homology(*out.completion);
    out.comparison = same_homology(out.base_homology, out.completion_homology);
    out.status = out.poset_level.status;
    out.message = out.poset_level.message;
    if (out.status == Status::Certified && !out.comparison.equal) {
        out.status = Status::Error;
        out.message = "certified but the completion's homology differs from the complex";
    }
    return out;
}

} // namespace fintop
