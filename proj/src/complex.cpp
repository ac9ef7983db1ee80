#include "fintop/complex.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <stdexcept>

#include "fintop/errors.hpp"

namespace fintop {

struct SimplicialComplex::Data
{
    std::vector<std::string> vertices;
    std::vector<std::vector<Simplex>> by_dim;
    std::map<Simplex, std::size_t> position;
};

SimplicialComplex::SimplicialComplex() : data_(std::make_shared<const Data>()) {}

SimplicialComplex::SimplicialComplex(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

SimplicialComplex SimplicialComplex::assemble(std::vector<std::string> vertices, std::vector<Simplex> all)
{
    auto d = std::make_shared<Data>();
    d->vertices = std::move(vertices);
    for (Index v = 0; v < d->vertices.size(); ++v)
        all.push_back({v});
    std::sort(all.begin(), all.end(), [](const Simplex& a, const Simplex& b) {
        return a.size() != b.size() ? a.size() < b.size() : a < b;
    });
    all.erase(std::unique(all.begin(), all.end()), all.end());
    for (auto& s : all) {
        std::size_t k = s.size() - 1;
        if (d->by_dim.size() <= k)
            d->by_dim.resize(k + 1);
        d->position.emplace(s, d->by_dim[k].size());
        d->by_dim[k].push_back(std::move(s));
    }
    return SimplicialComplex(std::move(d));
}

namespace {

// Non-empty subsets of s, each sorted.
void for_each_face(const Simplex& s, const std::function<void(const Simplex&)>& f)
{
    const std::size_t n = s.size();
    Simplex face;
    for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
        face.clear();
        for (std::size_t i = 0; i < n; ++i)
            if (mask & (std::size_t{1} << i))
                face.push_back(s[i]);
        f(face);
    }
}

} // namespace

SimplicialComplex SimplicialComplex::from_facets(const std::vector<std::vector<std::string>>& facets)
{
    std::vector<std::string> vertices;
    for (const auto& f : facets) {
        if (f.empty())
            throw InputError("empty facet");
        vertices.insert(vertices.end(), f.begin(), f.end());
    }
    std::sort(vertices.begin(), vertices.end());
    vertices.erase(std::unique(vertices.begin(), vertices.end()), vertices.end());

    std::vector<Simplex> simplices;
    for (const auto& f : facets) {
        Simplex s;
        for (const auto& v : f)
            s.push_back(static_cast<Index>(std::lower_bound(vertices.begin(), vertices.end(), v) - vertices.begin()));
        std::sort(s.begin(), s.end());
        if (std::adjacent_find(s.begin(), s.end()) != s.end())
            throw InputError("facet " + simplex_label(f) + " repeats a vertex");
        simplices.push_back(std::move(s));
    }
    return from_simplices(std::move(vertices), simplices);
}

SimplicialComplex SimplicialComplex::from_simplices(std::vector<std::string> sorted_vertices,
                                                    const std::vector<Simplex>& simplices)
{
    for (std::size_t i = 1; i < sorted_vertices.size(); ++i)
        if (!(sorted_vertices[i - 1] < sorted_vertices[i]))
            throw InputError("vertex identifiers must be unique ('" + sorted_vertices[i] + "')");
    std::set<Simplex> all;
    for (const auto& s : simplices) {
        if (s.empty())
            throw InputError("empty simplex");
        Simplex sorted = s;
        std::sort(sorted.begin(), sorted.end());
        if (sorted.back() >= sorted_vertices.size())
            throw InputError("simplex vertex out of range");
        if (all.count(sorted))
            continue;
        for_each_face(sorted, [&](const Simplex& f) { all.insert(f); });
    }
    return assemble(std::move(sorted_vertices), std::vector<Simplex>(all.begin(), all.end()));
}

const std::vector<std::string>& SimplicialComplex::vertices() const { return data_->vertices; }

int SimplicialComplex::dimension() const { return static_cast<int>(data_->by_dim.size()) - 1; }

const std::vector<Simplex>& SimplicialComplex::simplices(int k) const
{
    static const std::vector<Simplex> none;
    if (k < 0 || k > dimension())
        return none;
    return data_->by_dim[k];
}

std::size_t SimplicialComplex::size() const { return data_->position.size(); }

std::vector<std::size_t> SimplicialComplex::f_vector() const
{
    std::vector<std::size_t> f;
    for (const auto& level : data_->by_dim)
        f.push_back(level.size());
    return f;
}

std::vector<Simplex> SimplicialComplex::facets() const
{
    std::vector<Simplex> out;
    for (int k = dimension(); k >= 0; --k) {
        for (const auto& s : data_->by_dim[k]) {
            bool maximal = true;
            for (const auto& t : out) {
                if (std::includes(t.begin(), t.end(), s.begin(), s.end())) {
                    maximal = false;
                    break;
                }
            }
            if (maximal)
                out.push_back(s);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

bool SimplicialComplex::contains(const Simplex& s) const { return data_->position.count(s) != 0; }

std::optional<std::size_t> SimplicialComplex::position(const Simplex& s) const
{
    auto it = data_->position.find(s);
    if (it == data_->position.end())
        return std::nullopt;
    return it->second;
}

std::vector<std::string> SimplicialComplex::labels(const Simplex& s) const
{
    std::vector<std::string> out;
    for (Index v : s)
        out.push_back(data_->vertices.at(v));
    return out;
}

std::string SimplicialComplex::label(const Simplex& s) const { return simplex_label(labels(s)); }

Simplex SimplicialComplex::simplex_of(const std::vector<std::string>& vertex_ids) const
{
    const auto& vs = data_->vertices;
    Simplex s;
    for (const auto& v : vertex_ids) {
        auto it = std::lower_bound(vs.begin(), vs.end(), v);
        if (it == vs.end() || *it != v)
            throw InputError("unknown vertex '" + v + "'");
        s.push_back(static_cast<Index>(it - vs.begin()));
    }
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

bool operator==(const SimplicialComplex& a, const SimplicialComplex& b)
{
    return a.data_ == b.data_ || (a.data_->vertices == b.data_->vertices && a.data_->by_dim == b.data_->by_dim);
}

std::string simplex_label(const std::vector<std::string>& vertex_ids)
{
    std::string out = "{";
    for (std::size_t i = 0; i < vertex_ids.size(); ++i) {
        if (i)
            out += ',';
        out += vertex_ids[i];
    }
    return out + "}";
}

// ---------------------------------------------------------------------------

SimplicialComplex order_complex(const Poset& p)
{
    std::vector<Simplex> chains;
    Simplex chain;
    std::function<void(Index)> extend = [&](Index top) {
        Simplex sorted = chain;
        std::sort(sorted.begin(), sorted.end());
        chains.push_back(std::move(sorted));
        const Bits& above = p.up(top);
        for (auto y = above.find_first(); y != Bits::npos; y = above.find_next(y)) {
            if (y == top)
                continue;
            chain.push_back(static_cast<Index>(y));
            extend(static_cast<Index>(y));
            chain.pop_back();
        }
    };
    for (Index x = 0; x < p.size(); ++x) {
        chain.assign(1, x);
        extend(x);
    }
    return SimplicialComplex::assemble(p.ids(), std::move(chains));
}

FacePoset face_poset_with_cells(const SimplicialComplex& k)
{
    std::vector<Simplex> cells;
    for (int d = 0; d <= k.dimension(); ++d)
        for (const auto& s : k.simplices(d))
            cells.push_back(s);

    std::vector<std::pair<std::string, std::size_t>> labelled;
    labelled.reserve(cells.size());
    for (std::size_t i = 0; i < cells.size(); ++i)
        labelled.emplace_back(k.label(cells[i]), i);
    std::sort(labelled.begin(), labelled.end());

    std::map<Simplex, Index> element_of;
    std::vector<std::string> ids;
    std::vector<Simplex> ordered;
    for (std::size_t e = 0; e < labelled.size(); ++e) {
        ids.push_back(labelled[e].first);
        ordered.push_back(cells[labelled[e].second]);
        element_of.emplace(ordered.back(), static_cast<Index>(e));
    }

    std::vector<Bits> down(ordered.size(), Bits(ordered.size()));
    for (std::size_t e = 0; e < ordered.size(); ++e)
        for_each_face(ordered[e], [&](const Simplex& f) { down[e].set(element_of.at(f)); });

    return FacePoset{Poset::from_closure(std::move(ids), std::move(down)), std::move(ordered)};
}

Poset face_poset(const SimplicialComplex& k) { return face_poset_with_cells(k).poset; }

Poset barycentric_poset(const Poset& p) { return face_poset(order_complex(p)); }

SimplicialComplex barycentric_complex(const SimplicialComplex& k) { return order_complex(face_poset(k)); }

// ---------------------------------------------------------------------------

namespace {

std::size_t binomial(std::size_t n, std::size_t k)
{
    if (k > n)
        return 0;
    std::size_t r = 1;
    for (std::size_t i = 1; i <= k; ++i)
        r = r * (n - k + i) / i;
    return r;
}

} // namespace

std::string validate_simplex_cells(const Poset& p, const std::vector<int>& dims)
{
    const std::string prefix = "not a regular CW face poset with simplex cells: ";
    if (dims.size() != p.size())
        return prefix + "dimension map has " + std::to_string(dims.size()) + " entries for " +
               std::to_string(p.size()) + " cells";
    for (Index c = 0; c < p.size(); ++c)
        if (dims[c] < 0)
            return prefix + "cell '" + p.id(c) + "' has negative dimension";
    for (const auto& [a, b] : p.hasse_edges())
        if (dims[b] != dims[a] + 1)
            return prefix + "cell '" + p.id(b) + "' (dim " + std::to_string(dims[b]) + ") covers '" + p.id(a) +
                   "' (dim " + std::to_string(dims[a]) + ")";

    for (Index c = 0; c < p.size(); ++c) {
        const auto d = static_cast<std::size_t>(dims[c]);
        std::vector<Index> below = bit_indices(p.down(c));
        std::vector<std::size_t> count(d + 1, 0);
        for (Index z : below) {
            if (static_cast<std::size_t>(dims[z]) > d)
                return prefix + "cell '" + p.id(c) + "' has a face of higher dimension";
            ++count[dims[z]];
        }
        for (std::size_t k = 0; k <= d; ++k)
            if (count[k] != binomial(d + 1, k + 1))
                return prefix + "cell '" + p.id(c) + "' of dimension " + std::to_string(d) + " has " +
                       std::to_string(count[k]) + " faces of dimension " + std::to_string(k) + ", expected " +
                       std::to_string(binomial(d + 1, k + 1));

        // Boolean lattice: each face is determined by its vertices, and
        // inclusion of faces is inclusion of vertex sets.
        Bits atoms = p.empty_bits();
        for (Index z : below)
            if (dims[z] == 0)
                atoms.set(z);
        std::set<Bits> seen;
        for (Index z : below) {
            Bits va = p.down(z) & atoms;
            if (va.count() != static_cast<std::size_t>(dims[z]) + 1 || !seen.insert(va).second)
                return prefix + "cell '" + p.id(c) + "' is not a simplex (face '" + p.id(z) + "')";
        }
        for (Index z : below)
            for (Index w : below)
                if (p.leq(z, w) != (p.down(z) & atoms).is_subset_of(p.down(w) & atoms))
                    return prefix + "cell '" + p.id(c) + "' is not a simplex (faces '" + p.id(z) + "', '" + p.id(w) +
                           "')";
    }
    return {};
}

RegularCWComplex::RegularCWComplex(Poset face_poset, std::vector<int> dims)
    : face_poset_(std::move(face_poset)), dims_(std::move(dims))
{
    if (auto problem = validate_simplex_cells(face_poset_, dims_); !problem.empty())
        throw ValidationError(problem);
}

int RegularCWComplex::dimension() const
{
    int d = -1;
    for (int x : dims_)
        d = std::max(d, x);
    return d;
}

std::vector<std::size_t> RegularCWComplex::f_vector() const
{
    std::vector<std::size_t> f(static_cast<std::size_t>(dimension() + 1), 0);
    for (int x : dims_)
        ++f[x];
    return f;
}

RegularCWComplex cw_from_face_poset(const Poset& p, const std::map<std::string, int>& dims)
{
    std::vector<int> d(p.size(), -1);
    for (const auto& [id, k] : dims)
        d[p.index_of(id)] = k;
    for (Index c = 0; c < p.size(); ++c)
        if (d[c] < 0)
            throw ValidationError("not a regular CW face poset with simplex cells: no dimension for cell '" +
                                  p.id(c) + "'");
    return RegularCWComplex(p, std::move(d));
}

RegularCWComplex cw_from_face_poset(const Poset& p)
{
    std::vector<int> d(p.size(), 0);
    for (Index x : linear_extension(p))
        for (Index y : p.lower_covers(x))
            d[x] = std::max(d[x], d[y] + 1);
    return RegularCWComplex(p, std::move(d));
}

Poset face_poset_cw(const RegularCWComplex& c) { return c.face_poset(); }

// ---------------------------------------------------------------------------

bool ChainComplex::boundary_squares_to_zero() const
{
    for (std::size_t k = 2; k < boundaries.size(); ++k)
        if (!boundaries[k - 1].multiply(boundaries[k]).is_zero())
            return false;
    return true;
}

ChainComplex chain_complex(const SimplicialComplex& k)
{
    ChainComplex cc;
    const int top = k.dimension();
    for (int d = 0; d <= top; ++d)
        cc.ranks.push_back(k.simplices(d).size());
    if (top >= 0)
        cc.boundaries.emplace_back(0, cc.ranks[0]);
    for (int d = 1; d <= top; ++d) {
        IntegerMatrix m(cc.ranks[d - 1], cc.ranks[d]);
        const auto& cells = k.simplices(d);
        for (std::size_t j = 0; j < cells.size(); ++j) {
            const Simplex& s = cells[j];
            for (std::size_t i = 0; i < s.size(); ++i) {
                Simplex face = s;
                face.erase(face.begin() + static_cast<std::ptrdiff_t>(i));
                m.set(*k.position(face), j, (i % 2 == 0) ? 1 : -1);
            }
        }
        cc.boundaries.push_back(std::move(m));
    }
    if (!cc.boundary_squares_to_zero())
        throw std::logic_error("chain_complex: boundary does not square to zero");
    return cc;
}

} // namespace fintop
