#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <utility>
#include <vector>

#include "errors.hpp"
#include "perm.hpp"

namespace altexp {

namespace detail {

/// Perfect matching of a d-regular bipartite multigraph (d >= 1) by
/// Hopcroft-Karp.  `edges[e] = (u, v)`, u and v in [0, n).  Returns one edge
/// id per left vertex.
inline std::vector<std::size_t> perfect_matching(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                                 const std::vector<std::size_t>& ids)
{
    constexpr std::size_t none = std::numeric_limits<std::size_t>::max();
    std::vector<std::vector<std::size_t>> adj(n);
    for (auto e : ids)
        adj[edges[e].first].push_back(e);
    std::vector<std::size_t> match_l(n, none), match_r(n, none), dist(n), it(n);

    auto bfs = [&] {
        std::vector<std::size_t> q;
        bool found = false;
        for (std::size_t u = 0; u < n; ++u) {
            dist[u] = match_l[u] == none ? 0 : none;
            if (dist[u] == 0)
                q.push_back(u);
        }
        for (std::size_t h = 0; h < q.size(); ++h) {
            const auto u = q[h];
            for (auto e : adj[u]) {
                const auto w = match_r[edges[e].second];
                if (w == none)
                    found = true;
                else if (dist[w] == none) {
                    dist[w] = dist[u] + 1;
                    q.push_back(w);
                }
            }
        }
        return found;
    };
    // Iterative augmenting-path search along the BFS layering.
    auto dfs = [&](std::size_t root) {
        std::vector<std::size_t> stack{root}, via;
        while (!stack.empty()) {
            const auto u = stack.back();
            bool advanced = false;
            for (; it[u] < adj[u].size(); ++it[u]) {
                const auto e = adj[u][it[u]];
                const auto w = match_r[edges[e].second];
                if (w == none) {
                    via.push_back(e);
                    for (auto f : via) {
                        match_l[edges[f].first] = f;
                        match_r[edges[f].second] = edges[f].first;
                    }
                    return true;
                }
                if (dist[w] == dist[u] + 1) {
                    via.push_back(e);
                    stack.push_back(w);
                    ++it[u];
                    advanced = true;
                    break;
                }
            }
            if (!advanced) {
                dist[u] = none;
                stack.pop_back();
                if (!via.empty())
                    via.pop_back();
            }
        }
        return false;
    };
    std::size_t size = 0;
    while (bfs()) {
        std::fill(it.begin(), it.end(), 0);
        for (std::size_t u = 0; u < n; ++u)
            if (match_l[u] == none && dfs(u))
                ++size;
    }
    if (size != n)
        throw construction_failure("perfect_matching: graph is not regular bipartite");
    return match_l;
}

inline void color_regular(std::size_t n, const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                          std::vector<std::size_t> ids, std::size_t degree, std::size_t offset,
                          std::vector<std::size_t>& color)
{
    if (degree == 0)
        return;
    if (degree == 1) {
        for (auto e : ids)
            color[e] = offset;
        return;
    }
    if (degree % 2 == 1) {
        auto m = perfect_matching(n, edges, ids);
        std::vector<bool> taken(edges.size(), false);
        for (auto e : m) {
            color[e] = offset;
            taken[e] = true;
        }
        std::erase_if(ids, [&](std::size_t e) { return taken[e]; });
        color_regular(n, edges, std::move(ids), degree - 1, offset + 1, color);
        return;
    }
    // Euler split: alternate along closed trails; bipartite trails are even.
    std::vector<std::vector<std::size_t>> adj(2 * n);
    for (auto e : ids) {
        adj[edges[e].first].push_back(e);
        adj[n + edges[e].second].push_back(e);
    }
    std::vector<bool> used(edges.size(), false);
    std::vector<std::size_t> pos(2 * n, 0);
    std::vector<std::size_t> half[2];
    for (std::size_t start = 0; start < 2 * n; ++start)
        for (;;) {
            while (pos[start] < adj[start].size() && used[adj[start][pos[start]]])
                ++pos[start];
            if (pos[start] == adj[start].size())
                break;
            std::size_t v = start, parity = 0;
            do {
                while (used[adj[v][pos[v]]])
                    ++pos[v];
                const auto e = adj[v][pos[v]];
                used[e] = true;
                half[parity].push_back(e);
                parity ^= 1;
                v = v < n ? n + edges[e].second : edges[e].first;
            } while (v != start);
        }
    color_regular(n, edges, std::move(half[0]), degree / 2, offset, color);
    color_regular(n, edges, std::move(half[1]), degree / 2, offset + degree / 2, color);
}

} // namespace detail

/// Proper edge colouring of a `degree`-regular bipartite multigraph on n + n
/// vertices with `degree` colours.
inline std::vector<std::size_t> edge_color_bipartite(std::size_t n,
                                                     const std::vector<std::pair<std::size_t, std::size_t>>& edges,
                                                     std::size_t degree)
{
    if (edges.size() != n * degree)
        throw std::invalid_argument("edge_color_bipartite: edge count is not n * degree");
    std::vector<std::size_t> left(n, 0), right(n, 0);
    for (auto [u, v] : edges) {
        if (u >= n || v >= n)
            throw std::out_of_range("edge_color_bipartite: vertex out of range");
        ++left[u];
        ++right[v];
    }
    for (std::size_t i = 0; i < n; ++i)
        if (left[i] != degree || right[i] != degree)
            throw std::invalid_argument("edge_color_bipartite: graph is not regular");
    std::vector<std::size_t> ids(edges.size());
    for (std::size_t e = 0; e < ids.size(); ++e)
        ids[e] = e;
    std::vector<std::size_t> color(edges.size(), 0);
    detail::color_regular(n, edges, std::move(ids), degree, 0, color);
    return color;
}

/// Grid of `rows` x `cols` cells, cell (r, c) at index r * cols + c.
/// g = a * b * c with a, c moving points only within their row and b only
/// within its column.
struct ButterflyFactors {
    Permutation a, b, c;
};

inline bool preserves_rows(const Permutation& g, std::size_t cols)
{
    for (point_t x = 0; x < g.size(); ++x)
        if (g(x) / cols != x / cols)
            return false;
    return true;
}

inline bool preserves_columns(const Permutation& g, std::size_t cols)
{
    for (point_t x = 0; x < g.size(); ++x)
        if (g(x) % cols != x % cols)
            return false;
    return true;
}

/// Cell x in row i with g(x) in row j is an edge i -> j; its colour is the
/// column it travels through.
inline std::vector<std::pair<std::size_t, std::size_t>> butterfly_edges(const Permutation& g, std::size_t cols)
{
    std::vector<std::pair<std::size_t, std::size_t>> edges(g.size());
    for (point_t x = 0; x < g.size(); ++x)
        edges[x] = {x / cols, g(x) / cols};
    return edges;
}

inline ButterflyFactors butterfly_from_coloring(const Permutation& g, std::size_t cols, const std::vector<std::size_t>& col)
{
    const std::size_t n = g.size();
    std::vector<point_t> a(n), b(n), c(n);
    for (point_t x = 0; x < n; ++x) {
        const auto i = x / cols, j = g(x) / cols, k = col[x];
        c[x] = static_cast<point_t>(i * cols + k);
        b[i * cols + k] = static_cast<point_t>(j * cols + k);
        a[j * cols + k] = g(x);
    }
    return {Permutation(std::move(a)), Permutation(std::move(b)), Permutation(std::move(c))};
}

inline ButterflyFactors butterfly_factor(const Permutation& g, std::size_t rows, std::size_t cols)
{
    const std::size_t n = rows * cols;
    if (g.size() != n)
        throw std::domain_error("butterfly_factor: permutation does not match the grid");
    auto id = Permutation::identity(n);
    if (preserves_columns(g, cols))
        return {id, g, id};
    if (preserves_rows(g, cols))
        return {g, id, id};
    return butterfly_from_coloring(g, cols, edge_color_bipartite(rows, butterfly_edges(g, cols), cols));
}

} // namespace altexp
