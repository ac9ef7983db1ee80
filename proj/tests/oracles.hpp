// Independent reference computations for the tests. Nothing here calls into
// the library's algorithms: posets are plain boolean order matrices,
// complexes are explicit lists of vertex-index simplices, and ranks come from
// fraction-free (Bareiss) elimination over big integers or from elimination
// modulo a prime.
#pragma once

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "fintop/complex.hpp"
#include "fintop/mapper.hpp"
#include "fintop/poset.hpp"

namespace oracle {

using Order = std::vector<std::vector<bool>>; // leq[a][b]
using Simplex = std::vector<int>;
using Simplices = std::vector<Simplex>;        // every face, sorted vertex lists
using BigInt = boost::multiprecision::cpp_int;

/// Reflexive-transitive closure of strict pairs (Warshall).
inline Order closure(std::size_t n, const std::vector<std::pair<int, int>>& pairs)
{
    Order leq(n, std::vector<bool>(n, false));
    for (std::size_t i = 0; i < n; ++i)
        leq[i][i] = true;
    for (auto [a, b] : pairs)
        leq[a][b] = true;
    for (std::size_t k = 0; k < n; ++k)
        for (std::size_t i = 0; i < n; ++i)
            if (leq[i][k])
                for (std::size_t j = 0; j < n; ++j)
                    if (leq[k][j])
                        leq[i][j] = true;
    return leq;
}

inline Order order_of(const fintop::Poset& p)
{
    Order leq(p.size(), std::vector<bool>(p.size(), false));
    for (std::size_t a = 0; a < p.size(); ++a)
        for (std::size_t b = 0; b < p.size(); ++b)
            leq[a][b] = p.leq(static_cast<fintop::Index>(a), static_cast<fintop::Index>(b));
    return leq;
}

inline bool covers(const Order& leq, int a, int b)
{
    if (a == b || !leq[a][b])
        return false;
    for (std::size_t c = 0; c < leq.size(); ++c)
        if (static_cast<int>(c) != a && static_cast<int>(c) != b && leq[a][c] && leq[c][b])
            return false;
    return true;
}

/// Every non-empty chain, as index lists sorted bottom to top.
inline Simplices chains(const Order& leq, const std::vector<bool>* alive = nullptr)
{
    const int n = static_cast<int>(leq.size());
    Simplices out;
    std::function<void(Simplex&)> grow = [&](Simplex& c) {
        out.push_back(c);
        for (int y = 0; y < n; ++y) {
            if (alive && !(*alive)[y])
                continue;
            if (y != c.back() && leq[c.back()][y]) {
                c.push_back(y);
                grow(c);
                c.pop_back();
            }
        }
    };
    for (int x = 0; x < n; ++x) {
        if (alive && !(*alive)[x])
            continue;
        Simplex c{x};
        grow(c);
    }
    // Store each chain as a sorted vertex set.
    for (auto& c : out)
        std::sort(c.begin(), c.end());
    std::sort(out.begin(), out.end());
    return out;
}

/// All faces of the given facets.
inline Simplices all_faces(const Simplices& facets)
{
    std::set<Simplex> faces;
    for (Simplex f : facets) {
        std::sort(f.begin(), f.end());
        const std::size_t n = f.size();
        for (std::uint64_t mask = 1; mask < (std::uint64_t{1} << n); ++mask) {
            Simplex s;
            for (std::size_t i = 0; i < n; ++i)
                if (mask >> i & 1)
                    s.push_back(f[i]);
            faces.insert(s);
        }
    }
    return {faces.begin(), faces.end()};
}

/// Faces of a library complex, as vertex-index lists.
inline Simplices faces_of(const fintop::SimplicialComplex& k)
{
    Simplices out;
    for (int d = 0; d <= k.dimension(); ++d)
        for (const auto& s : k.simplices(d))
            out.emplace_back(s.begin(), s.end());
    std::sort(out.begin(), out.end());
    return out;
}

inline long long euler(const Simplices& s)
{
    long long chi = 0;
    for (const auto& f : s)
        chi += f.size() % 2 == 1 ? 1 : -1;
    return chi;
}

/// Rank by fraction-free Gaussian elimination (Bareiss), exact over Z.
inline std::size_t rank_bareiss(std::vector<std::vector<BigInt>> m)
{
    if (m.empty())
        return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t rank = 0;
    BigInt prev = 1;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][c] == 0)
            ++pivot;
        if (pivot == rows)
            continue;
        std::swap(m[pivot], m[rank]);
        for (std::size_t r = rank + 1; r < rows; ++r) {
            for (std::size_t k = c + 1; k < cols; ++k)
                m[r][k] = (m[rank][c] * m[r][k] - m[r][c] * m[rank][k]) / prev;
            m[r][c] = 0;
        }
        prev = m[rank][c];
        ++rank;
    }
    return rank;
}

inline std::size_t rank_mod(std::vector<std::vector<long long>> m, long long p)
{
    if (m.empty())
        return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    auto inv = [p](long long a) {
        long long r = 1, e = p - 2;
        a %= p;
        while (e) {
            if (e & 1)
                r = r * a % p;
            a = a * a % p;
            e >>= 1;
        }
        return r;
    };
    for (auto& row : m)
        for (auto& v : row)
            v = ((v % p) + p) % p;
    std::size_t rank = 0;
    for (std::size_t c = 0; c < cols && rank < rows; ++c) {
        std::size_t pivot = rank;
        while (pivot < rows && m[pivot][c] == 0)
            ++pivot;
        if (pivot == rows)
            continue;
        std::swap(m[pivot], m[rank]);
        long long iv = inv(m[rank][c]);
        for (std::size_t r = 0; r < rows; ++r) {
            if (r == rank || m[r][c] == 0)
                continue;
            long long f = m[r][c] * iv % p;
            for (std::size_t k = c; k < cols; ++k)
                m[r][k] = ((m[r][k] - f * m[rank][k]) % p + p) % p;
        }
        ++rank;
    }
    return rank;
}

/// Boundary matrix from k-faces (columns) to (k-1)-faces (rows).
inline std::vector<std::vector<long long>> boundary(const Simplices& faces, std::size_t k)
{
    std::map<Simplex, std::size_t> row_of;
    std::vector<const Simplex*> cols;
    for (const auto& f : faces) {
        if (f.size() == k)
            row_of.emplace(f, row_of.size());
        if (f.size() == k + 1)
            cols.push_back(&f);
    }
    std::vector<std::vector<long long>> m(row_of.size(), std::vector<long long>(cols.size(), 0));
    for (std::size_t c = 0; c < cols.size(); ++c)
        for (std::size_t i = 0; i < cols[c]->size(); ++i) {
            Simplex face = *cols[c];
            face.erase(face.begin() + static_cast<long>(i));
            m[row_of.at(face)][c] = i % 2 == 0 ? 1 : -1;
        }
    return m;
}

struct Betti
{
    std::vector<std::size_t> rational;
    std::map<long long, std::vector<std::size_t>> mod;
};

/// Unreduced Betti numbers over Q (Bareiss) and over Z/p for each p.
inline Betti betti(const Simplices& faces, const std::vector<long long>& primes = {2, 3, 5})
{
    std::size_t top = 0;
    for (const auto& f : faces)
        top = std::max(top, f.size());
    std::vector<std::size_t> count(top + 2, 0);
    for (const auto& f : faces)
        ++count[f.size() - 1];
    // rank of d_k : C_k -> C_{k-1}, k = 1..top-1
    std::vector<std::size_t> rq(top + 1, 0);
    std::map<long long, std::vector<std::size_t>> rp;
    for (long long p : primes)
        rp[p] = std::vector<std::size_t>(top + 1, 0);
    for (std::size_t k = 1; k < top; ++k) {
        auto m = boundary(faces, k);
        std::vector<std::vector<BigInt>> big(m.size());
        for (std::size_t r = 0; r < m.size(); ++r)
            for (long long v : m[r])
                big[r].push_back(v);
        rq[k] = rank_bareiss(big);
        for (long long p : primes)
            rp[p][k] = rank_mod(m, p);
    }
    Betti out;
    auto numbers = [&](const std::vector<std::size_t>& r) {
        std::vector<std::size_t> b;
        for (std::size_t k = 0; k < top; ++k)
            b.push_back(count[k] - r[k] - (k + 1 < r.size() ? r[k + 1] : 0));
        return b;
    };
    out.rational = numbers(rq);
    for (long long p : primes)
        out.mod[p] = numbers(rp[p]);
    return out;
}

/// Trailing zero Betti numbers dropped.
inline std::vector<std::size_t> trimmed(std::vector<std::size_t> b)
{
    while (!b.empty() && b.back() == 0)
        b.pop_back();
    return b;
}

/// Dismantlability by removing beat points in any order.
inline bool dismantlable(const Order& leq)
{
    const int n = static_cast<int>(leq.size());
    if (n == 0)
        return false;
    std::vector<bool> alive(n, true);
    int left = n;
    bool progress = true;
    while (left > 1 && progress) {
        progress = false;
        for (int x = 0; x < n && !progress; ++x) {
            if (!alive[x])
                continue;
            // punctured up-set and down-set among alive elements
            std::vector<int> up, down;
            for (int y = 0; y < n; ++y)
                if (alive[y] && y != x) {
                    if (leq[x][y])
                        up.push_back(y);
                    if (leq[y][x])
                        down.push_back(y);
                }
            auto has_min = [&](const std::vector<int>& s) {
                for (int m : s)
                    if (std::all_of(s.begin(), s.end(), [&](int z) { return leq[m][z]; }))
                        return true;
                return false;
            };
            auto has_max = [&](const std::vector<int>& s) {
                for (int m : s)
                    if (std::all_of(s.begin(), s.end(), [&](int z) { return leq[z][m]; }))
                        return true;
                return false;
            };
            if ((!up.empty() && has_min(up)) || (!down.empty() && has_max(down))) {
                alive[x] = false;
                --left;
                progress = true;
            }
        }
    }
    return left == 1;
}

/// Components of the comparability graph restricted to `members`.
inline std::size_t components(const Order& leq, const std::vector<bool>& members)
{
    const int n = static_cast<int>(leq.size());
    std::vector<int> parent(n);
    std::iota(parent.begin(), parent.end(), 0);
    std::function<int(int)> find = [&](int a) { return parent[a] == a ? a : parent[a] = find(parent[a]); };
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            if (members[a] && members[b] && leq[a][b])
                parent[find(a)] = find(b);
    std::set<int> roots;
    for (int a = 0; a < n; ++a)
        if (members[a])
            roots.insert(find(a));
    return roots.size();
}

/// Components of the epsilon graph on `members` by breadth-first search;
/// each component as a sorted index list, components sorted by first index id.
inline std::vector<std::vector<int>> epsilon_components(const fintop::PointCloud& pc, const std::vector<int>& members,
                                                        double epsilon)
{
    std::vector<std::vector<int>> out;
    std::vector<bool> seen(pc.size(), false);
    for (int start : members) {
        if (seen[start])
            continue;
        std::vector<int> comp, queue{start};
        seen[start] = true;
        while (!queue.empty()) {
            int a = queue.back();
            queue.pop_back();
            comp.push_back(a);
            for (int b : members) {
                if (seen[b])
                    continue;
                double d2 = 0;
                for (std::size_t k = 0; k < pc.dimension(); ++k)
                    d2 += (pc.point(a)[k] - pc.point(b)[k]) * (pc.point(a)[k] - pc.point(b)[k]);
                if (d2 <= epsilon * epsilon) {
                    seen[b] = true;
                    queue.push_back(b);
                }
            }
        }
        std::sort(comp.begin(), comp.end());
        out.push_back(std::move(comp));
    }
    return out;
}

} // namespace oracle
