#pragma once

#include <boost/functional/hash.hpp>

#include <cstdint>
#include <ostream>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <vector>

#include "errors.hpp"
#include "generating_set.hpp"
#include "parallel.hpp"
#include "perm.hpp"

namespace altexp {

/// Regular multigraph with every vertex listing `degree` neighbours.  The
/// walk operator is A = adjacency / degree.
class SparseGraph {
public:
    SparseGraph() = default;
    SparseGraph(std::size_t n, std::size_t degree, std::vector<std::uint32_t> adj)
        : n_(n), deg_(degree), adj_(std::move(adj))
    {
        if (adj_.size() != n_ * deg_)
            throw std::invalid_argument("SparseGraph: adjacency size is not n * degree");
    }

    /// Schreier graph: x -- s(x) and x -- s^-1(x) for every generator, so the
    /// degree is 2|S| and the operator is symmetric.
    static SparseGraph from_permutations(const std::vector<Permutation>& gens)
    {
        if (gens.empty())
            throw std::invalid_argument("SparseGraph: no generators");
        const std::size_t n = gens.front().size();
        const std::size_t deg = 2 * gens.size();
        std::vector<std::uint32_t> adj(n * deg);
        for (std::size_t k = 0; k < gens.size(); ++k) {
            if (gens[k].size() != n)
                throw std::domain_error("SparseGraph: generators act on different sets");
            const auto inv = gens[k].inverse();
            for (point_t x = 0; x < n; ++x) {
                adj[x * deg + 2 * k] = gens[k](x);
                adj[x * deg + 2 * k + 1] = inv(x);
            }
        }
        return SparseGraph(n, deg, std::move(adj));
    }

    std::size_t size() const noexcept { return n_; }
    std::size_t degree() const noexcept { return deg_; }
    const std::uint32_t* neighbors(std::size_t v) const { return adj_.data() + v * deg_; }

    template <class F>
    void for_each_neighbor(std::size_t v, F&& f) const
    {
        for (std::size_t k = 0; k < deg_; ++k)
            f(adj_[v * deg_ + k], 1u);
    }

    void apply(const std::vector<double>& x, std::vector<double>& y) const
    {
        y.resize(n_);
        const double w = 1.0 / static_cast<double>(deg_);
        parallel_blocks(n_, 8192, [&](std::size_t lo, std::size_t hi) {
            for (std::size_t v = lo; v < hi; ++v) {
                double s = 0;
                for (std::size_t k = 0; k < deg_; ++k)
                    s += x[adj_[v * deg_ + k]];
                y[v] = s * w;
            }
        });
    }

private:
    std::size_t n_ = 0, deg_ = 0;
    std::vector<std::uint32_t> adj_;
};

/// Schreier graph of line-preserving generators on the cube, stored as one
/// K x K multiplicity block per line and axis (the sum of s and s^-1 over
/// that axis's generators).  Each application costs d K^{d+1}.
class LineBlockGraph {
public:
    LineBlockGraph(const CubeGeometry& g, const std::vector<LineAction>& gens) : geo_(g), K_(g.side())
    {
        if (gens.empty())
            throw std::invalid_argument("LineBlockGraph: no generators");
        deg_ = 2 * gens.size();
        if (deg_ > 65535)
            throw limit_exceeded("LineBlockGraph: degree too large");
        const std::size_t lines = g.lines_per_axis();
        for (unsigned axis = 0; axis < g.dim(); ++axis) {
            bool used = false;
            for (const auto& a : gens)
                used = used || a.axis == axis;
            if (!used)
                continue;
            Axis ax{axis, std::vector<std::uint16_t>(lines * K_ * K_, 0)};
            for (const auto& a : gens) {
                if (a.axis != axis)
                    continue;
                for (std::size_t l = 0; l < lines; ++l) {
                    const auto& p = a.patterns[a.pattern_of_line[l]];
                    auto* blk = ax.blocks.data() + l * K_ * K_;
                    for (std::uint64_t c = 0; c < K_; ++c) {
                        ++blk[c * K_ + p[c]];
                        ++blk[p[c] * K_ + c];
                    }
                }
            }
            axes_.push_back(std::move(ax));
        }
    }

    static LineBlockGraph from_set(const GeneratingSet& set)
    {
        if (!set.materialized)
            throw limit_exceeded("LineBlockGraph: generating set is not materialized");
        std::vector<LineAction> acts;
        for (const auto& gen : set.generators)
            acts.push_back(*gen.action);
        return LineBlockGraph(set.geometry, acts);
    }

    std::size_t size() const { return geo_.points(); }
    std::size_t degree() const noexcept { return deg_; }
    const CubeGeometry& geometry() const noexcept { return geo_; }

    template <class F>
    void for_each_neighbor(std::size_t v, F&& f) const
    {
        const auto x = static_cast<point_t>(v);
        for (const auto& ax : axes_) {
            const auto l = geo_.line_of(x, ax.axis);
            const auto c = geo_.coord(x, ax.axis);
            const auto* row = ax.blocks.data() + l * K_ * K_ + c * K_;
            for (std::uint64_t c2 = 0; c2 < K_; ++c2)
                if (row[c2])
                    f(geo_.point_on_line(ax.axis, l, c2), static_cast<unsigned>(row[c2]));
        }
    }

    void apply(const std::vector<double>& x, std::vector<double>& y) const
    {
        const std::size_t n = size();
        y.assign(n, 0.0);
        const double w = 1.0 / static_cast<double>(deg_);
        const std::size_t lines = geo_.lines_per_axis();
        // Lines of one axis are disjoint, so each worker owns its lines' points.
        for (const auto& ax : axes_)
            parallel_blocks(lines, 512, [&](std::size_t lo, std::size_t hi) {
                std::vector<double> in(K_);
                std::vector<point_t> pts(K_);
                for (std::size_t l = lo; l < hi; ++l) {
                    for (std::uint64_t c = 0; c < K_; ++c) {
                        pts[c] = geo_.point_on_line(ax.axis, l, c);
                        in[c] = x[pts[c]];
                    }
                    const auto* blk = ax.blocks.data() + l * K_ * K_;
                    for (std::uint64_t c = 0; c < K_; ++c) {
                        double s = 0;
                        for (std::uint64_t c2 = 0; c2 < K_; ++c2)
                            s += blk[c * K_ + c2] * in[c2];
                        y[pts[c]] += s * w;
                    }
                }
            });
    }

private:
    struct Axis {
        unsigned axis;
        std::vector<std::uint16_t> blocks;
    };
    CubeGeometry geo_;
    std::uint64_t K_;
    std::size_t deg_ = 0;
    std::vector<Axis> axes_;
};

/// Number of connected components (breadth-first search).
template <class Graph>
std::size_t component_count(const Graph& g)
{
    const std::size_t n = g.size();
    std::vector<bool> seen(n, false);
    std::vector<std::size_t> queue;
    std::size_t comps = 0;
    for (std::size_t s = 0; s < n; ++s) {
        if (seen[s])
            continue;
        ++comps;
        seen[s] = true;
        queue.assign(1, s);
        for (std::size_t i = 0; i < queue.size(); ++i)
            g.for_each_neighbor(queue[i], [&](std::size_t u, unsigned) {
                if (!seen[u]) {
                    seen[u] = true;
                    queue.push_back(u);
                }
            });
    }
    return comps;
}

template <class Graph>
bool is_connected(const Graph& g)
{
    return component_count(g) == 1;
}

/// "# vertices N degree k" then one "u v" line per neighbour entry.
template <class Graph>
void write_edge_list(std::ostream& os, const Graph& g)
{
    os << "# vertices " << g.size() << " degree " << g.degree() << '\n';
    for (std::size_t v = 0; v < g.size(); ++v)
        g.for_each_neighbor(v, [&](std::size_t u, unsigned mult) {
            for (unsigned k = 0; k < mult; ++k)
                os << v << ' ' << u << '\n';
        });
}

struct CayleyGraph {
    std::vector<Permutation> elements; // elements[0] is the identity
    SparseGraph graph;
};

/// Cayley graph by breadth-first closure under right multiplication.
/// Throws limit_exceeded naming the size reached when the group is larger
/// than `limit`.
inline CayleyGraph cayley_graph(const std::vector<Permutation>& gens, std::size_t limit = 2000000)
{
    if (gens.empty())
        throw std::invalid_argument("cayley_graph: no generators");
    const std::size_t n = gens.front().size();
    struct Hash {
        std::size_t operator()(const std::vector<point_t>& v) const { return boost::hash_range(v.begin(), v.end()); }
    };
    std::unordered_map<std::vector<point_t>, std::uint32_t, Hash> index;
    CayleyGraph out;
    out.elements.push_back(Permutation::identity(n));
    index.emplace(out.elements.front().image(), 0);
    std::vector<Permutation> inv;
    for (const auto& s : gens)
        inv.push_back(s.inverse());
    std::vector<std::uint32_t> adj;
    const std::size_t deg = 2 * gens.size();
    auto lookup = [&](Permutation y) {
        auto [it, fresh] = index.try_emplace(y.image(), static_cast<std::uint32_t>(out.elements.size()));
        if (fresh) {
            if (out.elements.size() >= limit)
                throw limit_exceeded("cayley_graph: group exceeds the limit of " + std::to_string(limit) +
                                     " elements (reached " + std::to_string(out.elements.size()) + ")");
            out.elements.push_back(std::move(y));
        }
        return it->second;
    };
    for (std::size_t i = 0; i < out.elements.size(); ++i)
        for (std::size_t k = 0; k < gens.size(); ++k) {
            const auto x = out.elements[i];
            adj.push_back(lookup(x * gens[k]));
            adj.push_back(lookup(x * inv[k]));
        }
    out.graph = SparseGraph(out.elements.size(), deg, std::move(adj));
    return out;
}

} // namespace altexp
