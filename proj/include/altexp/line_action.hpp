#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

#include "cube.hpp"
#include "perm.hpp"
#include "rng.hpp"

namespace altexp {

/// A permutation of the cube that preserves every line parallel to `axis`,
/// acting on each line by one of a few local permutations of [0, K).
struct LineAction {
    unsigned axis = 0;
    std::vector<std::vector<point_t>> patterns;
    std::vector<std::uint32_t> pattern_of_line;

    point_t apply(const CubeGeometry& g, point_t x) const
    {
        const auto& p = patterns[pattern_of_line[g.line_of(x, axis)]];
        return g.with_coord(x, axis, p[g.coord(x, axis)]);
    }

    Permutation materialize(const CubeGeometry& g) const
    {
        std::vector<point_t> img(g.points());
        for (std::size_t l = 0; l < g.lines_per_axis(); ++l) {
            const auto& p = patterns[pattern_of_line[l]];
            for (std::uint64_t c = 0; c < g.side(); ++c)
                img[g.point_on_line(axis, l, c)] = g.point_on_line(axis, l, p[c]);
        }
        return Permutation(std::move(img));
    }

    /// Parity from the local patterns, without materializing.
    Parity parity() const
    {
        std::vector<std::size_t> uses(patterns.size(), 0);
        for (auto p : pattern_of_line)
            ++uses[p];
        Parity total = Parity::even;
        for (std::size_t k = 0; k < patterns.size(); ++k)
            if (uses[k] % 2 == 1 && !Permutation(patterns[k]).is_even())
                total = total * Parity::odd;
        return total;
    }

    /// Builds from one local permutation per line, sharing equal patterns.
    static LineAction from_lines(unsigned axis, const std::vector<std::vector<point_t>>& per_line)
    {
        LineAction a;
        a.axis = axis;
        std::map<std::vector<point_t>, std::uint32_t> ids;
        a.pattern_of_line.reserve(per_line.size());
        for (const auto& p : per_line) {
            auto [it, fresh] = ids.try_emplace(p, static_cast<std::uint32_t>(a.patterns.size()));
            if (fresh)
                a.patterns.push_back(p);
            a.pattern_of_line.push_back(it->second);
        }
        return a;
    }
};

/// Element of E_i: one cyclic shift (mod K) per axis-i line.
struct ShiftVector {
    unsigned axis = 0;
    std::vector<std::uint32_t> shifts;

    static ShiftVector zero(const CubeGeometry& g, unsigned axis)
    {
        return ShiftVector{axis, std::vector<std::uint32_t>(g.lines_per_axis(), 0)};
    }

    static ShiftVector random(const CubeGeometry& g, unsigned axis, Rng& rng)
    {
        ShiftVector v = zero(g, axis);
        for (auto& s : v.shifts)
            s = static_cast<std::uint32_t>(rng.below(g.side()));
        return v;
    }

    bool is_identity() const
    {
        for (auto s : shifts)
            if (s)
                return false;
        return true;
    }

    point_t apply(const CubeGeometry& g, point_t x) const
    {
        const auto s = shifts[g.line_of(x, axis)];
        if (s == 0)
            return x;
        return g.with_coord(x, axis, (g.coord(x, axis) + s) % g.side());
    }

    /// Shifts add: the composite of two elements of the same E_i.
    ShiftVector plus(const ShiftVector& o, std::uint64_t K) const
    {
        if (o.axis != axis || o.shifts.size() != shifts.size())
            throw std::domain_error("ShiftVector: different axes");
        ShiftVector r = *this;
        for (std::size_t i = 0; i < shifts.size(); ++i)
            r.shifts[i] = static_cast<std::uint32_t>((shifts[i] + o.shifts[i]) % K);
        return r;
    }

    ShiftVector inverse(std::uint64_t K) const
    {
        ShiftVector r = *this;
        for (auto& s : r.shifts)
            s = static_cast<std::uint32_t>((K - s) % K);
        return r;
    }

    Permutation materialize(const CubeGeometry& g) const
    {
        std::vector<point_t> img(g.points());
        for (point_t x = 0; x < img.size(); ++x)
            img[x] = apply(g, x);
        return Permutation(std::move(img));
    }
};

} // namespace altexp
