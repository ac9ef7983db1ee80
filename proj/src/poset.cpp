#include "fintop/poset.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <queue>
#include <set>

#include "fintop/errors.hpp"

namespace fintop {

std::vector<Index> bit_indices(const Bits& bits)
{
    std::vector<Index> out;
    out.reserve(bits.count());
    for (auto i = bits.find_first(); i != Bits::npos; i = bits.find_next(i))
        out.push_back(static_cast<Index>(i));
    return out;
}

struct Poset::Data
{
    std::vector<std::string> ids;
    std::vector<Bits> down;
    std::vector<Bits> up;
    std::vector<std::vector<Index>> upper_covers;
    std::vector<std::vector<Index>> lower_covers;
    std::size_t hasse_size = 0;
};

Poset::Poset() : data_(std::make_shared<const Data>()) {}

Poset::Poset(std::shared_ptr<const Data> data) : data_(std::move(data)) {}

Poset Poset::from_relations(std::vector<std::string> elements,
                            const std::vector<std::pair<std::string, std::string>>& relations)
{
    for (const auto& [a, b] : relations) {
        elements.push_back(a);
        elements.push_back(b);
    }
    std::sort(elements.begin(), elements.end());
    elements.erase(std::unique(elements.begin(), elements.end()), elements.end());
    for (const auto& e : elements)
        if (e.empty())
            throw InputError("empty element identifier");

    const std::size_t n = elements.size();
    auto index = [&](const std::string& s) {
        return static_cast<Index>(std::lower_bound(elements.begin(), elements.end(), s) - elements.begin());
    };

    std::vector<std::vector<Index>> succ(n);
    std::vector<std::size_t> indegree(n, 0);
    for (const auto& [a, b] : relations) {
        Index ia = index(a), ib = index(b);
        if (ia == ib)
            throw InputError("relation " + a + " < " + b + " is not strict (cycle)");
        succ[ia].push_back(ib);
    }
    for (auto& s : succ) {
        std::sort(s.begin(), s.end());
        s.erase(std::unique(s.begin(), s.end()), s.end());
        for (Index b : s)
            ++indegree[b];
    }

    // Kahn; a leftover element lies on or above a cycle.
    std::vector<Index> topo;
    topo.reserve(n);
    std::priority_queue<Index, std::vector<Index>, std::greater<>> ready;
    for (Index i = 0; i < n; ++i)
        if (indegree[i] == 0)
            ready.push(i);
    while (!ready.empty()) {
        Index a = ready.top();
        ready.pop();
        topo.push_back(a);
        for (Index b : succ[a])
            if (--indegree[b] == 0)
                ready.push(b);
    }
    if (topo.size() != n) {
        for (Index i = 0; i < n; ++i)
            if (indegree[i] != 0)
                throw InputError("order relation has a cycle through element '" + elements[i] + "'");
    }

    std::vector<Bits> up(n, Bits(n));
    for (auto it = topo.rbegin(); it != topo.rend(); ++it) {
        Index a = *it;
        up[a].set(a);
        for (Index b : succ[a])
            up[a] |= up[b];
    }
    std::vector<Bits> down(n, Bits(n));
    for (Index a = 0; a < n; ++a)
        for (auto b = up[a].find_first(); b != Bits::npos; b = up[a].find_next(b))
            down[b].set(a);

    return from_closure(std::move(elements), std::move(down));
}

Poset Poset::from_closure(std::vector<std::string> sorted_ids, std::vector<Bits> down_sets)
{
    const std::size_t n = sorted_ids.size();
    if (down_sets.size() != n)
        throw std::invalid_argument("from_closure: size mismatch");
    for (std::size_t i = 1; i < n; ++i)
        if (!(sorted_ids[i - 1] < sorted_ids[i]))
            throw InputError("element identifiers must be unique ('" + sorted_ids[i] + "')");

    auto d = std::make_shared<Data>();
    d->ids = std::move(sorted_ids);
    d->down = std::move(down_sets);
    d->up.assign(n, Bits(n));
    for (Index b = 0; b < n; ++b) {
        if (d->down[b].size() != n || !d->down[b].test(b))
            throw std::invalid_argument("from_closure: down-sets must be reflexive");
        for (auto a = d->down[b].find_first(); a != Bits::npos; a = d->down[b].find_next(a))
            d->up[a].set(b);
    }
    for (Index a = 0; a < n; ++a) {
        for (auto b = d->up[a].find_first(); b != Bits::npos; b = d->up[a].find_next(b)) {
            if (b != a && d->up[b].test(a))
                throw InputError("order relation has a cycle through element '" + d->ids[a] + "'");
            // transitivity: U_b must contain U_a whenever a <= b
            if (!d->down[a].is_subset_of(d->down[b]))
                throw std::invalid_argument("from_closure: down-sets are not transitively closed");
        }
    }

    d->upper_covers.assign(n, {});
    d->lower_covers.assign(n, {});
    for (Index a = 0; a < n; ++a) {
        for (auto b = d->up[a].find_first(); b != Bits::npos; b = d->up[a].find_next(b)) {
            if (b == a)
                continue;
            if ((d->up[a] & d->down[b]).count() == 2) {
                d->upper_covers[a].push_back(static_cast<Index>(b));
                d->lower_covers[b].push_back(a);
                ++d->hasse_size;
            }
        }
    }
    for (auto& v : d->lower_covers)
        std::sort(v.begin(), v.end());
    return Poset(std::move(d));
}

std::size_t Poset::size() const { return data_->ids.size(); }

const std::string& Poset::id(Index x) const { return data_->ids.at(x); }

const std::vector<std::string>& Poset::ids() const { return data_->ids; }

std::optional<Index> Poset::find(std::string_view id) const
{
    const auto& ids = data_->ids;
    auto it = std::lower_bound(ids.begin(), ids.end(), id,
                               [](const std::string& a, std::string_view b) { return a < b; });
    if (it == ids.end() || *it != id)
        return std::nullopt;
    return static_cast<Index>(it - ids.begin());
}

Index Poset::index_of(std::string_view id) const
{
    if (auto i = find(id))
        return *i;
    throw InputError("unknown element '" + std::string(id) + "'");
}

bool Poset::leq(Index a, Index b) const { return data_->down.at(b).test(a); }

const Bits& Poset::down(Index x) const { return data_->down.at(x); }

const Bits& Poset::up(Index x) const { return data_->up.at(x); }

const std::vector<Index>& Poset::upper_covers(Index x) const { return data_->upper_covers.at(x); }

const std::vector<Index>& Poset::lower_covers(Index x) const { return data_->lower_covers.at(x); }

std::vector<std::pair<Index, Index>> Poset::hasse_edges() const
{
    std::vector<std::pair<Index, Index>> edges;
    edges.reserve(data_->hasse_size);
    for (Index a = 0; a < size(); ++a)
        for (Index b : data_->upper_covers[a])
            edges.emplace_back(a, b);
    return edges;
}

std::size_t Poset::hasse_size() const { return data_->hasse_size; }

Bits Poset::full_bits() const
{
    Bits b(size());
    b.set();
    return b;
}

bool operator==(const Poset& a, const Poset& b)
{
    if (a.data_ == b.data_)
        return true;
    return a.data_->ids == b.data_->ids && a.data_->down == b.data_->down;
}

// ---------------------------------------------------------------------------

ElementSet::ElementSet(Poset parent) : parent_(std::move(parent)), members_(parent_.size()) {}

ElementSet::ElementSet(Poset parent, Bits members) : parent_(std::move(parent)), members_(std::move(members))
{
    if (members_.size() != parent_.size())
        throw std::invalid_argument("ElementSet: bitset size does not match parent poset");
}

ElementSet ElementSet::from_ids(Poset parent, const std::vector<std::string>& ids)
{
    ElementSet s(std::move(parent));
    for (const auto& id : ids)
        s.insert(s.parent_.index_of(id));
    return s;
}

bool ElementSet::contains(Index x) const { return x < members_.size() && members_.test(x); }

bool ElementSet::contains(std::string_view id) const
{
    auto x = parent_.find(id);
    return x && members_.test(*x);
}

std::vector<std::string> ElementSet::ids() const
{
    std::vector<std::string> out;
    for (Index i : indices())
        out.push_back(parent_.id(i));
    return out;
}

void ElementSet::insert(Index x)
{
    if (x >= members_.size())
        throw InputError("element index out of range");
    members_.set(x);
}

void ElementSet::erase(Index x)
{
    if (x < members_.size())
        members_.reset(x);
}

bool operator==(const ElementSet& a, const ElementSet& b)
{
    return a.parent_ == b.parent_ && a.members_ == b.members_;
}

// ---------------------------------------------------------------------------

namespace {

Index checked(const Poset& p, Index x)
{
    if (x >= p.size())
        throw InputError("element index " + std::to_string(x) + " out of range");
    return x;
}

} // namespace

ElementSet down_set(const Poset& p, Index x) { return ElementSet(p, p.down(checked(p, x))); }
ElementSet down_set(const Poset& p, std::string_view x) { return down_set(p, p.index_of(x)); }
ElementSet up_set(const Poset& p, Index x) { return ElementSet(p, p.up(checked(p, x))); }
ElementSet up_set(const Poset& p, std::string_view x) { return up_set(p, p.index_of(x)); }

ElementSet punctured_down(const Poset& p, Index x)
{
    Bits b = p.down(checked(p, x));
    b.reset(x);
    return ElementSet(p, std::move(b));
}
ElementSet punctured_down(const Poset& p, std::string_view x) { return punctured_down(p, p.index_of(x)); }

ElementSet punctured_up(const Poset& p, Index x)
{
    Bits b = p.up(checked(p, x));
    b.reset(x);
    return ElementSet(p, std::move(b));
}
ElementSet punctured_up(const Poset& p, std::string_view x) { return punctured_up(p, p.index_of(x)); }

ElementSet closure(const ElementSet& a)
{
    const Poset& p = a.parent();
    Bits out = p.empty_bits();
    for (Index x : a.indices())
        out |= p.up(x);
    return ElementSet(p, std::move(out));
}

ElementSet open_hull(const ElementSet& a)
{
    const Poset& p = a.parent();
    Bits out = p.empty_bits();
    for (Index x : a.indices())
        out |= p.down(x);
    return ElementSet(p, std::move(out));
}

bool is_down_set(const ElementSet& a) { return open_hull(a) == a; }

bool is_up_set(const ElementSet& a) { return closure(a) == a; }

Poset opposite(const Poset& p)
{
    std::vector<Bits> down;
    down.reserve(p.size());
    for (Index x = 0; x < p.size(); ++x)
        down.push_back(p.up(x));
    return Poset::from_closure(p.ids(), std::move(down));
}

std::vector<Index> linear_extension(const Poset& p)
{
    const std::size_t n = p.size();
    std::vector<std::size_t> pending(n);
    std::priority_queue<Index, std::vector<Index>, std::greater<>> ready;
    for (Index x = 0; x < n; ++x) {
        pending[x] = p.lower_covers(x).size();
        if (pending[x] == 0)
            ready.push(x);
    }
    std::vector<Index> order;
    order.reserve(n);
    while (!ready.empty()) {
        Index x = ready.top();
        ready.pop();
        order.push_back(x);
        for (Index y : p.upper_covers(x))
            if (--pending[y] == 0)
                ready.push(y);
    }
    return order;
}

std::vector<ElementSet> connected_components(const ElementSet& a)
{
    const Poset& p = a.parent();
    Bits unseen = a.bits();
    std::vector<ElementSet> out;
    for (auto start = unseen.find_first(); start != Bits::npos; start = unseen.find_first()) {
        Bits comp = p.empty_bits();
        std::vector<Index> stack{static_cast<Index>(start)};
        unseen.reset(start);
        comp.set(start);
        while (!stack.empty()) {
            Index x = stack.back();
            stack.pop_back();
            Bits next = (p.up(x) | p.down(x)) & unseen;
            for (Index y : bit_indices(next)) {
                unseen.reset(y);
                comp.set(y);
                stack.push_back(y);
            }
        }
        out.emplace_back(p, std::move(comp));
    }
    return out;
}

Poset induced_subposet(const Poset& p, const Bits& members)
{
    std::vector<Index> keep = bit_indices(members);
    std::vector<std::string> ids;
    ids.reserve(keep.size());
    for (Index x : keep)
        ids.push_back(p.id(x));
    std::vector<Bits> down(keep.size(), Bits(keep.size()));
    for (std::size_t i = 0; i < keep.size(); ++i)
        for (std::size_t j = 0; j < keep.size(); ++j)
            if (p.leq(keep[j], keep[i]))
                down[i].set(j);
    return Poset::from_closure(std::move(ids), std::move(down));
}

Poset induced_subposet(const ElementSet& a) { return induced_subposet(a.parent(), a.bits()); }

std::vector<Index> minimal_elements(const Poset& p)
{
    std::vector<Index> out;
    for (Index x = 0; x < p.size(); ++x)
        if (p.lower_covers(x).empty())
            out.push_back(x);
    return out;
}

std::vector<Index> maximal_elements(const Poset& p)
{
    std::vector<Index> out;
    for (Index x = 0; x < p.size(); ++x)
        if (p.upper_covers(x).empty())
            out.push_back(x);
    return out;
}

namespace {

struct IsoSearch
{
    const Poset& a;
    const Poset& b;
    std::vector<std::vector<Index>> candidates;
    std::vector<Index> order;
    std::vector<Index> map;
    std::vector<bool> used;

    bool extend(std::size_t depth)
    {
        if (depth == order.size())
            return true;
        Index x = order[depth];
        for (Index y : candidates[x]) {
            if (used[y])
                continue;
            bool ok = true;
            for (std::size_t k = 0; k < depth && ok; ++k) {
                Index u = order[k], v = map[u];
                ok = a.leq(u, x) == b.leq(v, y) && a.leq(x, u) == b.leq(y, v);
            }
            if (!ok)
                continue;
            map[x] = y;
            used[y] = true;
            if (extend(depth + 1))
                return true;
            used[y] = false;
        }
        return false;
    }
};

} // namespace

bool isomorphic(const Poset& a, const Poset& b)
{
    if (a.size() != b.size() || a.hasse_size() != b.hasse_size())
        return false;
    const std::size_t n = a.size();
    auto signature = [](const Poset& p, Index x) {
        return std::array<std::size_t, 4>{p.down(x).count(), p.up(x).count(), p.lower_covers(x).size(),
                                          p.upper_covers(x).size()};
    };
    IsoSearch s{a, b, std::vector<std::vector<Index>>(n), linear_extension(a), std::vector<Index>(n),
                std::vector<bool>(n, false)};
    for (Index x = 0; x < n; ++x) {
        for (Index y = 0; y < n; ++y)
            if (signature(a, x) == signature(b, y))
                s.candidates[x].push_back(y);
        if (s.candidates[x].empty())
            return false;
    }
    return s.extend(0);
}

} // namespace fintop
