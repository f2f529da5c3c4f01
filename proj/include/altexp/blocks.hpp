#pragma once

#include <algorithm>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <vector>

#include "butterfly.hpp"
#include "errors.hpp"
#include "perm.hpp"

namespace altexp {

/// Fixed family of windows on [0, n) used to write elements of Alt(n) as
/// products of window-supported even permutations.  Points sit in a ragged
/// grid of `b` rows of length `a` (x at row x / a, column x % a); windows
/// are the row chunks followed by the columns.  A one-row chunk borrows the
/// row above it into its window, so every chunk window spans two rows.
struct BlockLayout {
    std::size_t n = 0, m = 0, a = 0, b = 0;
    std::vector<std::size_t> chunk_start; // first row of each chunk, plus b
    std::vector<std::size_t> pair_row;    // second row of each chunk window
    std::vector<std::vector<point_t>> windows;

    std::size_t chunks() const noexcept { return chunk_start.empty() ? 0 : chunk_start.size() - 1; }
    /// Upper bound on the factor count, 3 ceil(n/m) + 3.
    std::size_t bound() const { return 3 * ((n + m - 1) / m) + 3; }
};

/// Chooses a in [ceil(n/m), floor(m/2)] minimising 2 * chunks + a.  Chunks
/// take floor(m/a) rows each, the last one possibly fewer.  n <= m is a
/// single window.
inline BlockLayout block_layout(std::size_t n, std::size_t m)
{
    if (m < 5)
        throw std::invalid_argument("block_layout: window size must be at least 5");
    BlockLayout L;
    L.n = n;
    L.m = m;
    if (n <= m) {
        L.a = n;
        L.b = 1;
        L.chunk_start = {0, 1};
        L.pair_row = {0};
        std::vector<point_t> w(n);
        std::iota(w.begin(), w.end(), 0);
        L.windows.push_back(std::move(w));
        return L;
    }
    if (n > m * (m / 2))
        throw std::invalid_argument("block_layout: need n <= m * floor(m / 2)");
    std::size_t best = std::numeric_limits<std::size_t>::max();
    for (std::size_t a = (n + m - 1) / m; a <= m / 2; ++a) {
        const std::size_t b = (n + a - 1) / a;
        const std::size_t per = m / a;
        if (b > m || per < 2)
            continue;
        const std::size_t nc = (b + per - 1) / per;
        if (2 * nc + a < best) {
            best = 2 * nc + a;
            L.a = a;
            L.b = b;
            L.chunk_start.clear();
            for (std::size_t j = 0; j < nc; ++j)
                L.chunk_start.push_back(j * per);
            L.chunk_start.push_back(b);
        }
    }
    if (best == std::numeric_limits<std::size_t>::max())
        throw std::invalid_argument("block_layout: no admissible grid");
    for (std::size_t j = 0; j < L.chunks(); ++j) {
        const auto r = L.chunk_start[j];
        const bool single = L.chunk_start[j + 1] == r + 1;
        L.pair_row.push_back(single ? r - 1 : r + 1);
        std::vector<point_t> w;
        for (std::size_t x = (single ? r - 1 : r) * L.a; x < std::min(n, L.chunk_start[j + 1] * L.a); ++x)
            w.push_back(static_cast<point_t>(x));
        L.windows.push_back(std::move(w));
    }
    for (std::size_t k = 0; k < L.a; ++k) {
        std::vector<point_t> w;
        for (std::size_t x = k; x < n; x += L.a)
            w.push_back(static_cast<point_t>(x));
        L.windows.push_back(std::move(w));
    }
    return L;
}

struct BlockFactor {
    std::size_t window;
    Permutation perm;
};

namespace detail {

inline bool supported_in(const Permutation& p, const std::vector<point_t>& w, std::size_t n)
{
    std::vector<bool> in(n, false);
    for (auto x : w)
        in[x] = true;
    for (point_t x = 0; x < n; ++x)
        if (p(x) != x && !in[x])
            return false;
    return true;
}

inline Permutation restrict_to(const Permutation& p, const std::vector<point_t>& w, std::size_t n)
{
    auto img = Permutation::identity(n).image();
    for (auto x : w)
        img[x] = p(x);
    return Permutation(std::move(img));
}

inline Permutation transposition(std::size_t n, point_t x, point_t y)
{
    auto img = Permutation::identity(n).image();
    std::swap(img[x], img[y]);
    return Permutation(std::move(img));
}

} // namespace detail

/// g = F_0 * F_1 * ... with every factor even and supported on one window:
/// row-chunk factors, then column factors, then row-chunk factors again.
/// Identity factors are dropped.
inline std::vector<BlockFactor> block_factor(const Permutation& g, const BlockLayout& L)
{
    const std::size_t n = L.n;
    if (g.size() != n)
        throw std::domain_error("block_factor: permutation does not match the layout");
    if (!g.is_even())
        throw std::invalid_argument("block_factor: permutation is odd");
    if (g.is_identity())
        return {};
    for (std::size_t w = 0; w < L.windows.size(); ++w)
        if (detail::supported_in(g, L.windows[w], n))
            return {{w, g}};

    const std::size_t a = L.a, b = L.b, cells = a * b, nc = L.chunks();
    // Dummy cells fill the short last row and are fixed by g.
    auto ext = Permutation::identity(cells).image();
    for (point_t x = 0; x < n; ++x)
        ext[x] = g(x);
    Permutation G(std::move(ext));
    auto col = edge_color_bipartite(b, butterfly_edges(G, a), a);
    // Relabel colours so the dummy loops use the columns missing from the last row.
    const std::size_t last = n - (b - 1) * a;
    std::vector<std::size_t> relabel(a, a);
    std::size_t hi = last, lo = 0;
    for (std::size_t x = n; x < cells; ++x)
        relabel[col[x]] = hi++;
    for (std::size_t k = 0; k < a; ++k)
        if (relabel[k] == a)
            relabel[k] = lo++;
    for (auto& c : col)
        c = relabel[c];
    auto f = butterfly_from_coloring(G, a, col);
    auto shrink = [&](const Permutation& p) {
        std::vector<point_t> img(n);
        for (point_t x = 0; x < n; ++x) {
            if (p(x) >= n)
                throw construction_failure("block_factor: dummy cell reached by a real point");
            img[x] = p(x);
        }
        return Permutation(std::move(img));
    };
    const auto A = shrink(f.a), B = shrink(f.b), C = shrink(f.c);

    std::vector<Permutation> As, Bs, Cs;
    for (std::size_t j = 0; j < nc; ++j) {
        std::vector<point_t> own;
        for (std::size_t x = L.chunk_start[j] * a; x < std::min(n, L.chunk_start[j + 1] * a); ++x)
            own.push_back(static_cast<point_t>(x));
        As.push_back(detail::restrict_to(A, own, n));
        Cs.push_back(detail::restrict_to(C, own, n));
    }
    for (std::size_t k = 0; k < a; ++k)
        Bs.push_back(detail::restrict_to(B, L.windows[nc + k], n));

    // Parity repair: move a transposition tau across a layer boundary,
    // X Y = (X tau)(tau Y), with tau inside both windows involved.
    auto cell = [&](std::size_t r, std::size_t c) { return static_cast<point_t>(r * a + c); };
    for (std::size_t j = 0; j < nc; ++j)
        if (!As[j].is_even()) {
            auto tau = detail::transposition(n, cell(L.chunk_start[j], 0), cell(L.pair_row[j], 0));
            As[j] = As[j] * tau;
            Bs[0] = tau * Bs[0];
        }
    for (std::size_t k = 1; k < a; ++k)
        if (!Bs[k].is_even()) {
            auto tau = detail::transposition(n, cell(0, k), cell(1, k));
            Bs[k] = Bs[k] * tau;
            Cs[0] = tau * Cs[0];
        }
    for (std::size_t j = 1; j < nc; ++j)
        if (!Cs[j].is_even()) {
            auto tau = detail::transposition(n, cell(L.chunk_start[j], 0), cell(L.pair_row[j], 0));
            Bs[0] = Bs[0] * tau;
            Cs[j] = tau * Cs[j];
        }
    if (!Bs[0].is_even()) {
        auto tau = detail::transposition(n, cell(0, 0), cell(1, 0));
        Bs[0] = Bs[0] * tau;
        Cs[0] = tau * Cs[0];
    }

    std::vector<BlockFactor> out;
    auto push = [&](std::size_t w, Permutation p) {
        if (!p.is_identity())
            out.push_back({w, std::move(p)});
    };
    for (std::size_t j = 0; j < nc; ++j)
        push(j, As[j]);
    for (std::size_t k = 0; k < a; ++k)
        push(nc + k, Bs[k]);
    // A one-row last chunk shares a row with its neighbour once repaired, so
    // its A piece must come last in its layer and its C piece first.
    for (std::size_t j = nc; j-- > 0;)
        push(j, Cs[j]);

    auto prod = Permutation::identity(n);
    for (const auto& bf : out) {
        if (!bf.perm.is_even() || !detail::supported_in(bf.perm, L.windows[bf.window], n))
            throw construction_failure("block_factor: factor is odd or leaves its window");
        prod = prod * bf.perm;
    }
    if (!(prod == g))
        throw construction_failure("block_factor: product does not reproduce g");
    if (out.size() > L.bound())
        throw construction_failure("block_factor: factor count above 3 ceil(n/m) + 3");
    return out;
}

inline std::vector<BlockFactor> block_factor(const Permutation& g, std::size_t m)
{
    return block_factor(g, block_layout(g.size(), m));
}

/// Generators with labels, acting on [0, degree).
struct PermSet {
    std::size_t degree = 0;
    std::vector<std::string> labels;
    std::vector<Permutation> perms;

    std::size_t size() const noexcept { return perms.size(); }
    void add(std::string label, Permutation p)
    {
        labels.push_back(std::move(label));
        perms.push_back(std::move(p));
    }
};

/// The 3-cycle (0 1 2) with an m-cycle (m odd) or an (m-1)-cycle fixing 0
/// (m even): a standard generating pair of Alt(m), m >= 3.
inline PermSet alt_base(std::size_t m)
{
    if (m < 3)
        throw std::invalid_argument("alt_base: need m >= 3");
    PermSet s;
    s.degree = m;
    s.add("(0 1 2)", Permutation::from_cycles(m, {{0, 1, 2}}));
    std::vector<point_t> cyc;
    for (std::size_t i = m % 2 ? 0 : 1; i < m; ++i)
        cyc.push_back(static_cast<point_t>(i));
    if (cyc.size() > 2)
        s.add(m % 2 ? "long cycle" : "long cycle fixing 0", Permutation::from_cycles(m, {cyc}));
    return s;
}

/// Window w padded to exactly m points with the smallest points outside it.
inline std::vector<point_t> padded_window(const BlockLayout& L, std::size_t w)
{
    auto pts = L.windows.at(w);
    std::vector<bool> in(L.n, false);
    for (auto x : pts)
        in[x] = true;
    for (point_t x = 0; pts.size() < std::min(L.m, L.n); ++x)
        if (!in[x])
            pts.push_back(x);
    std::sort(pts.begin(), pts.end());
    return pts;
}

/// F_n: the base generators of Alt(m) pushed into every (padded) window.
inline PermSet build_Fn(std::size_t n, const PermSet& base)
{
    const std::size_t m = base.degree;
    if (m > n)
        throw std::invalid_argument("build_Fn: base degree exceeds n");
    if (n == m)
        return base;
    const auto L = block_layout(n, m);
    PermSet out;
    out.degree = n;
    for (std::size_t w = 0; w < L.windows.size(); ++w) {
        const auto pts = padded_window(L, w);
        for (std::size_t k = 0; k < base.size(); ++k) {
            auto img = Permutation::identity(n).image();
            for (std::size_t i = 0; i < m; ++i)
                img[pts[i]] = pts[base.perms[k](static_cast<point_t>(i))];
            out.add("w" + std::to_string(w) + ":" + base.labels[k], Permutation(std::move(img)));
        }
    }
    return out;
}

/// F_n plus the transposition (0 1), generating Sym(n).
inline PermSet build_sym(const PermSet& fn)
{
    PermSet out = fn;
    out.add("t=(0 1)", detail::transposition(fn.degree, 0, 1));
    return out;
}

} // namespace altexp
