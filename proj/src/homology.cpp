#include "fintop/homology.hpp"

#include <algorithm>
#include <numeric>
#include <optional>
#include <stdexcept>

namespace fintop {

namespace {

using Dense = std::vector<std::vector<Integer>>;

Integer abs_value(const Integer& v) { return v < 0 ? Integer(-v) : v; }

// Turn a list of non-zero diagonal entries into invariant factors.
std::vector<Integer> normalize_diagonal(std::vector<Integer> d)
{
    for (auto& x : d)
        x = abs_value(x);
    for (std::size_t i = 0; i < d.size(); ++i) {
        for (std::size_t j = i + 1; j < d.size(); ++j) {
            if (d[j] % d[i] == 0)
                continue;
            Integer g = boost::multiprecision::gcd(d[i], d[j]);
            Integer l = d[i] / g * d[j];
            d[i] = g;
            d[j] = l;
        }
    }
    return d;
}

std::vector<Integer> dense_diagonal(Dense a)
{
    const std::size_t m = a.size();
    const std::size_t n = m == 0 ? 0 : a[0].size();
    std::vector<Integer> diag;

    auto swap_cols = [&](std::size_t c1, std::size_t c2) {
        if (c1 != c2)
            for (auto& row : a)
                std::swap(row[c1], row[c2]);
    };

    for (std::size_t t = 0; t < std::min(m, n); ++t) {
        std::size_t pi = m, pj = n;
        Integer best;
        for (std::size_t i = t; i < m; ++i)
            for (std::size_t j = t; j < n; ++j)
                if (a[i][j] != 0 && (pi == m || abs_value(a[i][j]) < best)) {
                    best = abs_value(a[i][j]);
                    pi = i;
                    pj = j;
                }
        if (pi == m)
            break;
        std::swap(a[t], a[pi]);
        swap_cols(t, pj);

        for (;;) {
            bool clean = true;
            for (std::size_t i = t + 1; i < m; ++i) {
                if (a[i][t] == 0)
                    continue;
                Integer q = a[i][t] / a[t][t];
                if (q != 0)
                    for (std::size_t j = t; j < n; ++j)
                        if (a[t][j] != 0)
                            a[i][j] -= q * a[t][j];
                if (a[i][t] != 0)
                    clean = false;
            }
            for (std::size_t j = t + 1; j < n; ++j) {
                if (a[t][j] == 0)
                    continue;
                Integer q = a[t][j] / a[t][t];
                if (q != 0)
                    for (std::size_t i = t; i < m; ++i)
                        if (a[i][t] != 0)
                            a[i][j] -= q * a[i][t];
                if (a[t][j] != 0)
                    clean = false;
            }
            if (clean)
                break;
            // A remainder is now smaller than the pivot: move the smallest one in.
            std::size_t bi = t, bj = t;
            best = abs_value(a[t][t]);
            for (std::size_t i = t + 1; i < m; ++i)
                if (a[i][t] != 0 && abs_value(a[i][t]) < best) {
                    best = abs_value(a[i][t]);
                    bi = i;
                    bj = t;
                }
            for (std::size_t j = t + 1; j < n; ++j)
                if (a[t][j] != 0 && abs_value(a[t][j]) < best) {
                    best = abs_value(a[t][j]);
                    bi = t;
                    bj = j;
                }
            std::swap(a[t], a[bi]);
            swap_cols(t, bj);
        }
        diag.push_back(a[t][t]);
    }
    return diag;
}

// Sparse elimination of unit pivots. Returns the number of unit pivots and
// leaves the residual matrix (rows/columns not yet eliminated) in `residual`.
std::size_t eliminate_unit_pivots(const IntegerMatrix& m, Dense& residual)
{
    using Row = std::vector<std::pair<std::size_t, Integer>>;
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<Row> row(rows);
    std::vector<std::vector<std::size_t>> col_rows(cols);
    for (std::size_t c = 0; c < cols; ++c)
        for (const auto& [r, v] : m.column(c)) {
            row[r].emplace_back(c, v);
            col_rows[c].push_back(r);
        }

    auto lookup = [&](std::size_t r, std::size_t c) -> const Integer* {
        const Row& e = row[r];
        auto it = std::lower_bound(e.begin(), e.end(), c, [](const auto& x, std::size_t k) { return x.first < k; });
        return (it != e.end() && it->first == c) ? &it->second : nullptr;
    };

    std::vector<bool> row_alive(rows, true), col_alive(cols, true);
    std::vector<std::size_t> stamp(rows, 0);
    std::size_t epoch = 0;
    std::size_t units = 0;

    // Drop dead, zero and duplicate rows from a column's row list.
    auto compact = [&](std::size_t c) {
        ++epoch;
        auto& list = col_rows[c];
        std::size_t w = 0;
        for (std::size_t r : list) {
            if (!row_alive[r] || stamp[r] == epoch || lookup(r, c) == nullptr)
                continue;
            stamp[r] = epoch;
            list[w++] = r;
        }
        list.resize(w);
    };

    bool progress = true;
    while (progress) {
        progress = false;
        for (std::size_t c = 0; c < cols; ++c) {
            if (!col_alive[c])
                continue;
            compact(c);
            std::size_t best = rows;
            for (std::size_t r : col_rows[c]) {
                const Integer* v = lookup(r, c);
                if ((*v == 1 || *v == -1) && (best == rows || row[r].size() < row[best].size()))
                    best = r;
            }
            if (best == rows)
                continue;

            const Row pivot_row = row[best];
            const Integer pivot = *lookup(best, c);
            const std::vector<std::size_t> targets = col_rows[c];
            for (std::size_t r : targets) {
                if (r == best)
                    continue;
                Integer factor = *lookup(r, c) * pivot;
                Row merged;
                merged.reserve(row[r].size() + pivot_row.size());
                std::size_t i = 0, j = 0;
                const Row& cur = row[r];
                while (i < cur.size() || j < pivot_row.size()) {
                    if (j == pivot_row.size() || (i < cur.size() && cur[i].first < pivot_row[j].first)) {
                        merged.push_back(cur[i++]);
                    } else if (i == cur.size() || pivot_row[j].first < cur[i].first) {
                        merged.emplace_back(pivot_row[j].first, -factor * pivot_row[j].second);
                        col_rows[pivot_row[j].first].push_back(r);
                        ++j;
                    } else {
                        Integer v = cur[i].second - factor * pivot_row[j].second;
                        if (v != 0)
                            merged.emplace_back(cur[i].first, std::move(v));
                        ++i;
                        ++j;
                    }
                }
                row[r] = std::move(merged);
            }
            row_alive[best] = false;
            col_alive[c] = false;
            ++units;
            progress = true;
        }
    }

    std::vector<std::size_t> live_rows, live_cols;
    std::vector<std::size_t> col_slot(cols, cols);
    for (std::size_t r = 0; r < rows; ++r)
        if (row_alive[r] && !row[r].empty())
            live_rows.push_back(r);
    for (std::size_t c = 0; c < cols; ++c)
        if (col_alive[c]) {
            col_slot[c] = live_cols.size();
            live_cols.push_back(c);
        }
    residual.assign(live_rows.size(), std::vector<Integer>(live_cols.size()));
    for (std::size_t i = 0; i < live_rows.size(); ++i)
        for (const auto& [c, v] : row[live_rows[i]])
            residual[i][col_slot[c]] = v;
    return units;
}

} // namespace

SmithForm smith_normal_form(const IntegerMatrix& m, std::size_t dense_threshold)
{
    std::vector<Integer> diag;
    if (m.cols() <= dense_threshold) {
        diag = dense_diagonal(m.to_dense());
    } else {
        Dense residual;
        std::size_t units = eliminate_unit_pivots(m, residual);
        diag.assign(units, Integer(1));
        auto rest = dense_diagonal(std::move(residual));
        diag.insert(diag.end(), rest.begin(), rest.end());
    }
    SmithForm out;
    out.invariant_factors = normalize_diagonal(std::move(diag));
    out.rank = out.invariant_factors.size();
    return out;
}

std::size_t rational_rank(const IntegerMatrix& m)
{
    Dense a = m.to_dense();
    const std::size_t rows = a.size();
    const std::size_t cols = m.cols();
    std::size_t rank = 0;
    Integer previous = 1;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t p = rank;
        while (p < rows && a[p][c] == 0)
            ++p;
        if (p == rows)
            continue;
        std::swap(a[p], a[rank]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            for (std::size_t j = c + 1; j < cols; ++j)
                a[i][j] = (a[rank][c] * a[i][j] - a[i][c] * a[rank][j]) / previous;
            a[i][c] = 0;
        }
        previous = a[rank][c];
        ++rank;
    }
    return rank;
}

std::size_t rank_mod_p(const IntegerMatrix& m, std::uint32_t p)
{
    const std::size_t rows = m.rows(), cols = m.cols();
    std::vector<std::vector<std::int64_t>> a(rows, std::vector<std::int64_t>(cols, 0));
    const Integer modulus = p;
    for (std::size_t c = 0; c < cols; ++c)
        for (const auto& [r, v] : m.column(c)) {
            Integer x = v % modulus;
            if (x < 0)
                x += modulus;
            a[r][c] = static_cast<std::int64_t>(x);
        }
    auto inverse = [p](std::int64_t x) {
        std::int64_t result = 1, base = x, e = p - 2;
        while (e > 0) {
            if (e & 1)
                result = result * base % p;
            base = base * base % p;
            e >>= 1;
        }
        return result;
    };
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t piv = rank;
        while (piv < rows && a[piv][c] == 0)
            ++piv;
        if (piv == rows)
            continue;
        std::swap(a[piv], a[rank]);
        std::int64_t inv = inverse(a[rank][c]);
        for (std::size_t i = rank + 1; i < rows; ++i) {
            if (a[i][c] == 0)
                continue;
            std::int64_t f = a[i][c] * inv % p;
            for (std::size_t j = c; j < cols; ++j)
                a[i][j] = ((a[i][j] - f * a[rank][j]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

// ---------------------------------------------------------------------------

const HomologyGroup& HomologyProfile::degree(std::size_t k) const
{
    static const HomologyGroup zero;
    return k < groups.size() ? groups[k] : zero;
}

bool HomologyProfile::is_zero() const
{
    if (reduced && empty_space)
        return false;
    return std::all_of(groups.begin(), groups.end(), [](const HomologyGroup& g) { return g.is_zero(); });
}

std::optional<int> HomologyProfile::first_nonzero_degree() const
{
    if (reduced && empty_space)
        return -1;
    for (std::size_t k = 0; k < groups.size(); ++k)
        if (!groups[k].is_zero())
            return static_cast<int>(k);
    return std::nullopt;
}

std::string HomologyProfile::describe(std::size_t k) const
{
    const HomologyGroup& g = degree(k);
    std::string out;
    if (g.betti > 0)
        out = g.betti == 1 ? "Z" : "Z^" + std::to_string(g.betti);
    for (const auto& t : g.torsion) {
        if (!out.empty())
            out += " + ";
        out += "Z/" + t.str();
    }
    return out.empty() ? "0" : out;
}

std::string HomologyProfile::summary() const
{
    std::string out;
    if (reduced && empty_space)
        out = "H-1=Z";
    for (std::size_t k = 0; k < groups.size(); ++k) {
        if (!out.empty())
            out += ", ";
        out += "H" + std::to_string(k) + "=" + describe(k);
    }
    return out.empty() ? "0" : out;
}

HomologyProfile homology(const ChainComplex& c, bool reduced)
{
    if (!c.boundary_squares_to_zero())
        throw std::logic_error("homology: boundary does not square to zero");
    const std::size_t levels = c.ranks.size();
    std::vector<SmithForm> snf(levels + 1);
    for (std::size_t k = 1; k < levels; ++k)
        snf[k] = smith_normal_form(c.boundaries[k]);

    HomologyProfile h;
    h.reduced = reduced;
    h.groups.resize(levels);
    for (std::size_t k = 0; k < levels; ++k) {
        std::size_t cycles = c.ranks[k] - snf[k].rank;
        h.groups[k].betti = cycles - snf[k + 1].rank;
        for (const auto& d : snf[k + 1].invariant_factors)
            if (d > 1)
                h.groups[k].torsion.push_back(d);
    }
    if (reduced) {
        if (levels == 0 || c.ranks[0] == 0)
            h.empty_space = true;
        else
            --h.groups[0].betti;
    }
    while (!h.groups.empty() && h.groups.back().is_zero())
        h.groups.pop_back();
    return h;
}

HomologyProfile homology(const SimplicialComplex& k, bool reduced) { return homology(chain_complex(k), reduced); }

HomologyProfile homology(const Poset& p, bool reduced) { return homology(order_complex(p), reduced); }

HomologyProfile homology(const RegularCWComplex& c, bool reduced)
{
    return homology(order_complex(c.face_poset()), reduced);
}

std::vector<std::size_t> rational_betti_numbers(const ChainComplex& c)
{
    const std::size_t levels = c.ranks.size();
    std::vector<std::size_t> rank(levels + 1, 0);
    for (std::size_t k = 1; k < levels; ++k)
        rank[k] = rational_rank(c.boundaries[k]);
    std::vector<std::size_t> betti(levels);
    for (std::size_t k = 0; k < levels; ++k)
        betti[k] = c.ranks[k] - rank[k] - rank[k + 1];
    return betti;
}

std::vector<std::size_t> betti_numbers_mod_p(const ChainComplex& c, std::uint32_t p)
{
    const std::size_t levels = c.ranks.size();
    std::vector<std::size_t> rank(levels + 1, 0);
    for (std::size_t k = 1; k < levels; ++k)
        rank[k] = rank_mod_p(c.boundaries[k], p);
    std::vector<std::size_t> betti(levels);
    for (std::size_t k = 0; k < levels; ++k)
        betti[k] = c.ranks[k] - rank[k] - rank[k + 1];
    return betti;
}

long long euler_characteristic(const SimplicialComplex& k)
{
    long long chi = 0;
    for (int d = 0; d <= k.dimension(); ++d)
        chi += (d % 2 == 0 ? 1 : -1) * static_cast<long long>(k.simplices(d).size());
    return chi;
}

long long euler_characteristic(const Poset& p) { return euler_characteristic(order_complex(p)); }

long long euler_characteristic(const HomologyProfile& h)
{
    long long chi = 0;
    for (std::size_t k = 0; k < h.groups.size(); ++k)
        chi += (k % 2 == 0 ? 1 : -1) * static_cast<long long>(h.groups[k].betti);
    if (h.reduced)
        chi += h.empty_space ? 0 : 1;
    return chi;
}

HomologyComparison same_homology(const HomologyProfile& a, const HomologyProfile& b)
{
    HomologyComparison out;
    if (a.reduced != b.reduced)
        out.differences.push_back("profiles mix reduced and unreduced homology");
    if (a.reduced && b.reduced && a.empty_space != b.empty_space)
        out.differences.push_back("H-1: " + std::string(a.empty_space ? "Z" : "0") + " vs " +
                                  std::string(b.empty_space ? "Z" : "0"));
    const std::size_t top = std::max(a.groups.size(), b.groups.size());
    for (std::size_t k = 0; k < top; ++k)
        if (!(a.degree(k) == b.degree(k)))
            out.differences.push_back("H" + std::to_string(k) + ": " + a.describe(k) + " vs " + b.describe(k));
    out.equal = out.differences.empty();
    return out;
}

std::size_t count_components(const SimplicialComplex& k)
{
    std::vector<std::size_t> parent(k.num_vertices());
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](std::size_t x) {
        while (parent[x] != x)
            x = parent[x] = parent[parent[x]];
        return x;
    };
    std::size_t components = k.num_vertices();
    for (const auto& e : k.simplices(1)) {
        auto a = find(e[0]), b = find(e[1]);
        if (a != b) {
            parent[a] = b;
            --components;
        }
    }
    return components;
}

} // namespace fintop
