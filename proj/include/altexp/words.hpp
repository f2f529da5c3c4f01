#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <vector>

#include "butterfly.hpp"
#include "line_action.hpp"

namespace altexp {

/// A product of letters from the E_i: value = letters[0] * letters[1] * ...,
/// so the last letter acts first.
struct WordInE {
    std::vector<ShiftVector> letters;

    std::size_t size() const noexcept { return letters.size(); }

    point_t apply(const CubeGeometry& g, point_t x) const
    {
        for (auto it = letters.rbegin(); it != letters.rend(); ++it)
            x = it->apply(g, x);
        return x;
    }

    Permutation materialize(const CubeGeometry& g) const
    {
        std::vector<point_t> img(g.points());
        for (point_t x = 0; x < img.size(); ++x)
            img[x] = apply(g, x);
        return Permutation(std::move(img));
    }

    WordInE inverse(std::uint64_t K) const
    {
        WordInE w;
        for (auto it = letters.rbegin(); it != letters.rend(); ++it)
            w.letters.push_back(it->inverse(K));
        return w;
    }

    void append(const WordInE& o) { letters.insert(letters.end(), o.letters.begin(), o.letters.end()); }

    std::vector<unsigned> axes() const
    {
        std::vector<unsigned> a;
        for (const auto& l : letters)
            a.push_back(l.axis);
        return a;
    }
};

namespace detail {

/// Face-local index of a point of M = {coord_0 = 0}: its axis-0 line.
inline std::size_t face_index(const CubeGeometry& g, point_t x) { return g.line_of(x, 0); }
inline point_t face_point(const CubeGeometry& g, std::size_t l) { return g.point_on_line(0, l, 0); }

/// One routing round: a permutation of M moving only coordinate `axis`.
struct Round {
    unsigned axis;
    Permutation rho; // on face-local indices
};

/// Recursive butterfly over `axes` (in order): rho = a * (rounds of b) * c.
inline void route_rounds(const CubeGeometry& g, const Permutation& rho, const std::vector<unsigned>& axes,
                         std::size_t first, std::vector<Round>& out)
{
    const unsigned axis = axes[first];
    if (first + 1 == axes.size()) {
        out.push_back({axis, rho});
        return;
    }
    // Grid for this axis: row = face point with the axis coordinate removed,
    // column = that coordinate.  The face's own stride on `axis` is K^{axis-1}.
    const std::size_t n = rho.size();
    const std::uint64_t K = g.side();
    std::uint64_t st = 1;
    for (unsigned i = 1; i < axis; ++i)
        st *= K;
    auto to_grid = [&](std::size_t l) {
        const std::size_t lo = l % st, c = (l / st) % K, hi = l / (st * K);
        return (lo + hi * st) * K + c;
    };
    auto from_grid = [&](std::size_t x) {
        const std::size_t row = x / K, c = x % K, lo = row % st, hi = row / st;
        return lo + c * st + hi * st * K;
    };
    std::vector<point_t> gimg(n);
    for (std::size_t l = 0; l < n; ++l)
        gimg[to_grid(l)] = static_cast<point_t>(to_grid(rho(static_cast<point_t>(l))));
    auto f = butterfly_factor(Permutation(std::move(gimg)), n / K, K);
    auto back = [&](const Permutation& p) {
        std::vector<point_t> img(n);
        for (std::size_t x = 0; x < n; ++x)
            img[from_grid(x)] = static_cast<point_t>(from_grid(p(static_cast<point_t>(x))));
        return Permutation(std::move(img));
    };
    out.push_back({axis, back(f.a)});
    route_rounds(g, back(f.b), axes, first + 1, out);
    out.push_back({axis, back(f.c)});
}

/// The gadget E_0 E_j E_0 realizing a round on M, in word order.
inline std::vector<ShiftVector> round_letters(const CubeGeometry& g, const Round& r)
{
    const std::uint64_t K = g.side();
    auto h1 = ShiftVector::zero(g, 0), h2 = ShiftVector::zero(g, r.axis), h3 = ShiftVector::zero(g, 0);
    if (!r.rho.is_identity()) {
        for (std::size_t l = 0; l < r.rho.size(); ++l) {
            const point_t x = face_point(g, l);
            const auto y = g.coord(x, r.axis);
            const auto ty = g.coord(face_point(g, r.rho(static_cast<point_t>(l))), r.axis);
            // Lift x to coord_0 = y, move along the axis to tau(y), drop back.
            h1.shifts[l] = static_cast<std::uint32_t>(y);
            h2.shifts[g.line_of(g.with_coord(x, 0, y), r.axis)] = static_cast<std::uint32_t>((ty + K - y) % K);
            h3.shifts[face_index(g, g.with_coord(x, r.axis, ty))] = static_cast<std::uint32_t>((K - y) % K);
        }
    }
    return {h3, h2, h1};
}

} // namespace detail

/// A word t of exactly 4d - 5 letters whose restriction to M equals sigma,
/// a permutation of M's face-local indices.  Axis pattern (1-based)
/// E1 E2 E1 E3 ... E1 Ed E1 ... E1 E2 E1.
inline WordInE grid_route(const CubeGeometry& g, const Permutation& sigma)
{
    const unsigned d = g.dim();
    if (d < 2)
        throw std::invalid_argument("grid_route: need d >= 2");
    if (sigma.size() != g.lines_per_axis())
        throw std::domain_error("grid_route: sigma is not a permutation of the face");
    std::vector<unsigned> axes;
    for (unsigned j = 1; j < d; ++j)
        axes.push_back(j);
    std::vector<detail::Round> rounds;
    detail::route_rounds(g, sigma, axes, 0, rounds);

    WordInE w;
    for (const auto& r : rounds) {
        auto ls = detail::round_letters(g, r);
        if (!w.letters.empty()) {
            // Adjacent E_0 letters merge.
            w.letters.back() = w.letters.back().plus(ls.front(), g.side());
            w.letters.insert(w.letters.end(), ls.begin() + 1, ls.end());
        } else {
            w.letters = std::move(ls);
        }
    }
    if (w.size() != 4 * d - 5)
        throw construction_failure("grid_route: unexpected word length");
    return w;
}

/// sigma given as a permutation of the whole cube supported on M.
inline WordInE grid_route_points(const CubeGeometry& g, const Permutation& sigma)
{
    std::vector<point_t> img(g.lines_per_axis());
    for (std::size_t l = 0; l < img.size(); ++l) {
        const point_t y = sigma(detail::face_point(g, l));
        if (g.coord(y, 0) != 0)
            throw std::invalid_argument("grid_route: sigma does not preserve the face");
        img[l] = static_cast<point_t>(detail::face_index(g, y));
    }
    return grid_route(g, Permutation(std::move(img)));
}

/// Two letters moving a point set into M: first gshift (axis 1) puts the
/// points on distinct axis-0 lines, then hshift (axis 0) parks them at
/// coord_0 = 0.  Word order {hshift, gshift}.
struct ToSquare {
    ShiftVector gshift, hshift;
    WordInE word() const { return WordInE{{hshift, gshift}}; }
};

/// Greedy line-by-line choice over the axis-1 lines, shifts tried in the
/// order 0..K-1.  nullopt when some line has no admissible shift.
inline std::optional<ToSquare> tosquare_word(const CubeGeometry& g, const PointSet& b)
{
    if (g.dim() < 2)
        throw std::invalid_argument("tosquare_word: need d >= 2");
    if (b.size() > g.lines_per_axis())
        throw std::invalid_argument("tosquare_word: more points than the face holds");
    const std::uint64_t K = g.side();
    ToSquare out{ShiftVector::zero(g, 1), ShiftVector::zero(g, 0)};
    std::vector<std::vector<point_t>> on_line(g.lines_per_axis());
    for (auto x : b)
        on_line[g.line_of(x, 1)].push_back(x);
    std::vector<bool> occupied(g.lines_per_axis(), false); // axis-0 lines
    for (std::size_t l = 0; l < on_line.size(); ++l) {
        if (on_line[l].empty())
            continue;
        bool placed = false;
        for (std::uint64_t sh = 0; sh < K && !placed; ++sh) {
            bool ok = true;
            for (auto x : on_line[l])
                if (occupied[g.line_of(g.with_coord(x, 1, (g.coord(x, 1) + sh) % K), 0)]) {
                    ok = false;
                    break;
                }
            if (!ok)
                continue;
            out.gshift.shifts[l] = static_cast<std::uint32_t>(sh);
            for (auto x : on_line[l]) {
                const auto y = g.with_coord(x, 1, (g.coord(x, 1) + sh) % K);
                occupied[g.line_of(y, 0)] = true;
                out.hshift.shifts[g.line_of(y, 0)] = static_cast<std::uint32_t>((K - g.coord(y, 0)) % K);
            }
            placed = true;
        }
        if (!placed)
            return std::nullopt;
    }
    return out;
}

/// Largest a with 1 + a(K-1) < K^{d-1} / (3 ln K).
inline std::size_t largest_cycle_lines(std::uint64_t K, unsigned d)
{
    const double face = std::pow(static_cast<double>(K), d - 1);
    const double cap = face / (3.0 * std::log(static_cast<double>(K)));
    std::size_t a = 0;
    while (1.0 + static_cast<double>(a + 1) * static_cast<double>(K - 1) < cap)
        ++a;
    return a;
}

struct CycleWord {
    WordInE word;                   // at most d - 1 letters, one per axis in use
    std::vector<point_t> cycle;     // c0 traced from its first point
    std::vector<std::size_t> lines; // chosen lines as (axis, line) packed axis * K^{d-1} + line
};

/// A cycle of length 1 + a(K-1) in M from a lines parallel to axes 1..d-1
/// forming a tree: each new line meets the union of the earlier ones in
/// exactly one point.  Lines are found breadth-first from the origin.
inline CycleWord cycle_word(const CubeGeometry& g, std::size_t a)
{
    const std::uint64_t K = g.side();
    const unsigned d = g.dim();
    if (d < 2)
        throw std::invalid_argument("cycle_word: need d >= 2");
    const std::size_t face = g.lines_per_axis();
    if (a == 0 || a >= (face - 1) / (K - 1))
        throw std::invalid_argument("cycle_word: a out of range");

    std::vector<bool> covered(g.points(), false);
    std::vector<std::vector<bool>> chosen(d, std::vector<bool>(face, false));
    std::vector<std::pair<unsigned, std::size_t>> lines;
    std::size_t next = 0;
    auto take = [&](unsigned axis, std::size_t line) {
        chosen[axis][line] = true;
        lines.emplace_back(axis, line);
        for (auto p : g.line_points(axis, line))
            covered[p] = true;
    };
    take(1, g.line_of(0, 1));
    while (lines.size() < a && next < lines.size()) {
        const auto [ax, ln] = lines[next++];
        for (auto p : g.line_points(ax, ln))
            for (unsigned j = 1; j < d && lines.size() < a; ++j) {
                const auto cand = g.line_of(p, j);
                if (j == ax || chosen[j][cand])
                    continue;
                std::size_t hits = 0;
                for (auto q : g.line_points(j, cand))
                    hits += covered[q];
                if (hits == 1)
                    take(j, cand);
            }
    }
    if (lines.size() < a)
        throw construction_failure("cycle_word: tree search ran out of lines");

    CycleWord out;
    for (unsigned j = 1; j < d; ++j) {
        auto v = ShiftVector::zero(g, j);
        bool any = false;
        for (auto [ax, ln] : lines)
            if (ax == j) {
                v.shifts[ln] = 1;
                any = true;
            }
        if (any)
            out.word.letters.push_back(std::move(v));
    }
    for (auto [ax, ln] : lines)
        out.lines.push_back(ax * face + ln);
    point_t x = 0;
    do {
        out.cycle.push_back(x);
        x = out.word.apply(g, x);
    } while (x != 0 && out.cycle.size() <= g.points());
    if (out.cycle.size() != 1 + a * (K - 1))
        throw construction_failure("cycle_word: product is not a single cycle of the expected length");
    return out;
}

/// A word u w0 u^-1 equal to the L-cycle c, where w0 = cycle_word(a)
/// (L = 1 + a(K-1)) and u = v^-1 t with v from tosquare_word and t from
/// grid_route: 2 + 19 + 5 + 19 + 2 letters at d = 6.  nullopt when the
/// tosquare step fails.
inline std::optional<WordInE> conjugacy_word47(const CubeGeometry& g, const Permutation& c, const CycleWord& c0)
{
    const std::size_t L = c0.cycle.size();
    if (c.size() != g.points())
        throw std::domain_error("conjugacy_word47: permutation does not match the cube");
    std::vector<point_t> q;
    for (const auto& cyc : c.cycles())
        if (cyc.size() > 1) {
            if (!q.empty())
                throw std::invalid_argument("conjugacy_word47: more than one nontrivial cycle");
            q = cyc;
        }
    if (q.size() != L)
        throw std::invalid_argument("conjugacy_word47: cycle length does not match c0");

    bool same = true;
    for (std::size_t i = 0; i < L && same; ++i)
        same = c(c0.cycle[i]) == c0.cycle[(i + 1) % L];
    if (same)
        return c0.word;

    auto v = tosquare_word(g, PointSet(q, g.points()));
    if (!v)
        return std::nullopt;
    const auto vw = v->word();

    // sigma on M: c0.cycle[i] -> v(q[i]), the rest matched in index order.
    const std::size_t face = g.lines_per_axis();
    std::vector<point_t> img(face, 0);
    std::vector<bool> src(face, false), dst(face, false);
    for (std::size_t i = 0; i < L; ++i) {
        const auto from = detail::face_index(g, c0.cycle[i]);
        const auto to = detail::face_index(g, vw.apply(g, q[i]));
        img[from] = static_cast<point_t>(to);
        src[from] = dst[to] = true;
    }
    for (std::size_t f = 0, t = 0; f < face; ++f) {
        if (src[f])
            continue;
        while (dst[t])
            ++t;
        img[f] = static_cast<point_t>(t++);
    }
    const auto t = grid_route(g, Permutation(std::move(img)));

    WordInE w = vw.inverse(g.side());
    w.append(t);
    w.append(c0.word);
    w.append(t.inverse(g.side()));
    w.append(vw);
    return w;
}

} // namespace altexp
