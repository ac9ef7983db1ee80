#include "fintop/generators.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace fintop {

std::uint64_t Rng::below(std::uint64_t n)
{
    if (n == 0)
        throw std::invalid_argument("Rng::below(0)");
    const std::uint64_t threshold = (0 - n) % n;
    for (;;) {
        std::uint64_t r = next();
        if (r >= threshold)
            return r % n;
    }
}

std::vector<std::string> numbered_ids(std::string_view prefix, std::size_t n)
{
    std::size_t width = 1;
    for (std::size_t m = n > 0 ? n - 1 : 0; m >= 10; m /= 10)
        ++width;
    std::vector<std::string> out;
    for (std::size_t i = 0; i < n; ++i) {
        std::string digits = std::to_string(i);
        out.push_back(std::string(prefix) + std::string(width - digits.size(), '0') + digits);
    }
    return out;
}

Poset random_poset(Rng& rng, std::size_t n, double density, std::string_view prefix)
{
    auto ids = numbered_ids(prefix, n);
    std::vector<std::size_t> rank(n);
    for (std::size_t i = 0; i < n; ++i)
        rank[i] = i;
    rng.shuffle(rank);
    std::vector<std::pair<std::string, std::string>> relations;
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (rank[i] < rank[j] && rng.chance(density))
                relations.emplace_back(ids[i], ids[j]);
    return Poset::from_relations(ids, relations);
}

MonotoneMap random_monotone_map(Rng& rng, const Poset& source, const Poset& target)
{
    if (target.empty() && !source.empty())
        throw std::invalid_argument("no map into an empty poset");
    const auto order = linear_extension(source);
    for (int attempt = 0; attempt < 50; ++attempt) {
        std::vector<Index> values(source.size());
        bool ok = true;
        for (Index x : order) {
            Bits candidates = target.full_bits();
            for (Index z : source.lower_covers(x))
                candidates &= target.up(values[z]);
            if (candidates.none()) {
                ok = false;
                break;
            }
            auto pick = rng.below(candidates.count());
            auto c = candidates.find_first();
            while (pick--)
                c = candidates.find_next(c);
            values[x] = static_cast<Index>(c);
        }
        if (ok)
            return MonotoneMap(source, target, std::move(values));
    }
    Index constant = target.empty() ? 0 : static_cast<Index>(rng.below(target.size()));
    return MonotoneMap(source, target, std::vector<Index>(source.size(), constant));
}

SimplicialComplex random_complex(Rng& rng, std::size_t vertices, std::size_t facets, std::size_t max_dim,
                                 std::string_view prefix)
{
    auto ids = numbered_ids(prefix, vertices);
    std::vector<std::vector<std::string>> out;
    for (std::size_t f = 0; f < facets; ++f) {
        std::size_t size = std::min<std::size_t>(rng.below(max_dim + 1) + 1, vertices);
        auto pool = ids;
        rng.shuffle(pool);
        pool.resize(size);
        out.push_back(std::move(pool));
    }
    return SimplicialComplex::from_facets(out);
}

namespace {

struct Extension
{
    Poset poset;
    std::string added;
    std::string witness;
};

// New element e that is a beat point of the result: either a single upper
// cover w (e sits above some U_d with d < w) or, dually, a single lower cover.
Extension extend_once(Rng& rng, const Poset& p, const std::string& id)
{
    std::vector<std::pair<std::string, std::string>> rel;
    for (const auto& [a, b] : p.hasse_edges())
        rel.emplace_back(p.id(a), p.id(b));
    Index w = static_cast<Index>(rng.below(p.size()));
    const bool up = rng.chance(0.5);
    Bits side = up ? p.down(w) : p.up(w);
    side.reset(w);
    if (up)
        rel.emplace_back(id, p.id(w));
    else
        rel.emplace_back(p.id(w), id);
    if (side.any() && rng.chance(0.7)) {
        auto pick = rng.below(side.count());
        auto d = side.find_first();
        while (pick--)
            d = side.find_next(d);
        if (up)
            rel.emplace_back(p.id(static_cast<Index>(d)), id);
        else
            rel.emplace_back(id, p.id(static_cast<Index>(d)));
    }
    auto ids = p.ids();
    ids.push_back(id);
    return {Poset::from_relations(ids, rel), id, p.id(w)};
}

bool certified(const Relation& r)
{
    return check_target_side(r).status == Status::Certified && check_source_side(r).status == Status::Certified;
}

double random_density(Rng& rng) { return 0.15 + 0.5 * rng.uniform(); }

} // namespace

Poset beat_extension(Rng& rng, const Poset& p, std::size_t extra, std::string_view prefix)
{
    if (p.empty())
        throw std::invalid_argument("beat_extension of an empty poset");
    Poset cur = p;
    auto ids = numbered_ids(prefix, extra);
    for (std::size_t i = 0; i < extra; ++i)
        cur = extend_once(rng, cur, ids[i]).poset;
    return cur;
}

std::optional<CertifiedRelation> random_certified_relation(Rng& rng, std::size_t max_size, std::size_t attempts)
{
    for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
        const auto family = rng.below(3);
        if (family == 0) {
            Poset xs = random_poset(rng, rng.between(1, max_size), random_density(rng), "x");
            Poset ys = random_poset(rng, rng.between(1, max_size), random_density(rng), "y");
            Relation r = random_monotone_map(rng, xs, ys).relation();
            if (certified(r))
                return CertifiedRelation{std::move(r), "monotone-map"};
        } else if (family == 1) {
            std::size_t extra = rng.between(0, 3);
            std::size_t base = rng.between(1, max_size > extra ? max_size - extra : 1);
            Poset z = random_poset(rng, base, random_density(rng), "z");
            Poset big = beat_extension(rng, z, extra, "n");
            // Comparability between z and its extension, in either direction.
            const bool forward = rng.chance(0.5);
            const Poset& xs = forward ? z : big;
            const Poset& ys = forward ? big : z;
            std::vector<Bits> rows(xs.size(), ys.empty_bits());
            for (Index x = 0; x < xs.size(); ++x)
                for (Index y = 0; y < ys.size(); ++y) {
                    Index bx = big.index_of(xs.id(x)), by = big.index_of(ys.id(y));
                    if (big.leq(bx, by))
                        rows[x].set(y);
                }
            Relation r(xs, ys, std::move(rows));
            if (certified(r))
                return CertifiedRelation{std::move(r), "comparability"};
        } else {
            // A retraction of an extension by beat points onto the original poset.
            Poset ys = random_poset(rng, rng.between(1, max_size), random_density(rng), "y");
            std::size_t extra = rng.between(1, 4);
            auto ids = numbered_ids("n", extra);
            Poset xs = ys;
            std::map<std::string, std::string> image;
            for (const auto& id : ys.ids())
                image[id] = id;
            for (std::size_t i = 0; i < extra; ++i) {
                Extension e = extend_once(rng, xs, ids[i]);
                image[e.added] = image.at(e.witness);
                xs = e.poset;
            }
            Relation r = MonotoneMap::from_ids(xs, ys, image).relation();
            if (certified(r))
                return CertifiedRelation{std::move(r), "retraction"};
        }
    }
    return std::nullopt;
}

std::optional<PosetCover> random_good_cover(Rng& rng, std::size_t max_size, std::size_t attempts)
{
    for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
        std::optional<PosetCover> cover;
        if (rng.chance(0.5)) {
            // Face poset of a small complex covered by the closed facets.
            SimplicialComplex k = random_complex(rng, rng.between(2, 5), rng.between(1, 4), 2);
            FacePoset fp = face_poset_with_cells(k);
            if (fp.poset.size() > max_size)
                continue;
            auto facets = k.facets();
            std::vector<Bits> parts;
            for (const auto& f : facets)
                parts.push_back(fp.poset.down(fp.poset.index_of(k.label(f))));
            cover.emplace(fp.poset, numbered_ids("F", parts.size()), std::move(parts));
        } else {
            Poset p = random_poset(rng, rng.between(1, max_size), random_density(rng));
            std::vector<Bits> parts;
            for (Index m : maximal_elements(p))
                parts.push_back(p.down(m));
            if (parts.size() > 2 && rng.chance(0.3)) {
                parts[0] |= parts.back();
                parts.pop_back();
            }
            cover.emplace(p, numbered_ids("U", parts.size()), std::move(parts));
        }
        if (classify_cover(*cover).kind == CoverKind::Good)
            return cover;
    }
    return std::nullopt;
}

std::optional<PosetCover> random_quasi_good_cover(Rng& rng, std::size_t max_size, std::size_t attempts)
{
    for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
        SimplicialComplex k = random_complex(rng, rng.between(3, 6), rng.between(3, 7), rng.chance(0.7) ? 1 : 2);
        FacePoset fp = face_poset_with_cells(k);
        if (fp.poset.size() > max_size)
            continue;
        auto facets = k.facets();
        std::size_t groups = rng.between(2, 3);
        std::vector<Bits> parts(groups, fp.poset.empty_bits());
        for (const auto& f : facets)
            parts[rng.below(groups)] |= fp.poset.down(fp.poset.index_of(k.label(f)));
        if (std::any_of(parts.begin(), parts.end(), [](const Bits& b) { return b.none(); }))
            continue;
        PosetCover cover(fp.poset, numbered_ids("P", groups), std::move(parts));
        if (classify_cover(cover).kind == CoverKind::QuasiGood)
            return cover;
    }
    return std::nullopt;
}

std::optional<ComplexCover> random_quasi_good_complex_cover(Rng& rng, const SimplicialComplex& base,
                                                            std::size_t max_parts, std::size_t attempts)
{
    auto facets = base.facets();
    if (facets.empty() || max_parts < 2)
        return std::nullopt;
    for (std::size_t attempt = 0; attempt < attempts; ++attempt) {
        std::size_t groups = rng.between(2, max_parts);
        std::vector<std::vector<std::vector<std::string>>> members(groups);
        for (const auto& f : facets)
            members[rng.below(groups)].push_back(base.labels(f));
        if (std::any_of(members.begin(), members.end(), [](const auto& m) { return m.empty(); }))
            continue;
        auto names = numbered_ids("P", groups);
        std::vector<std::pair<std::string, std::vector<std::vector<std::string>>>> parts;
        for (std::size_t g = 0; g < groups; ++g)
            parts.emplace_back(names[g], std::move(members[g]));
        ComplexCover cover(base, parts);
        auto kind = classify_cover(cover).kind;
        if (kind == CoverKind::QuasiGood || kind == CoverKind::Good)
            return cover;
    }
    return std::nullopt;
}

} // namespace fintop
