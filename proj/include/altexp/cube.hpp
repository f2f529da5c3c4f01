#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <array>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <vector>

#include "perm.hpp"

namespace altexp {

using bigint = boost::multiprecision::cpp_int;

/// The d-dimensional cube of side K on which the constructed groups act.
///
/// Coordinates are 0-based; coordinate value j on an axis stands for the
/// field element g^j of a fixed primitive g, so the order-K cyclic shift
/// acts as +1 mod K.  Encoding is lexicographic with axis 0 fastest:
/// index = sum_i coord_i * K^i.
///
/// A geometry whose point count exceeds the materialization limit is still
/// constructible (sizes only); point-level calls then throw.
class CubeGeometry {
public:
    static constexpr std::size_t max_dim = 16;

    /// Cube for the SL_{3s}(F_2) model: K = 2^{3s} - 1.
    static CubeGeometry from_field(unsigned s, unsigned d)
    {
        if (s == 0)
            throw std::invalid_argument("CubeGeometry: s must be positive");
        if (3 * s >= 63)
            throw std::invalid_argument("CubeGeometry: s too large for 64-bit side length");
        CubeGeometry g(((std::uint64_t{1} << (3 * s)) - 1), d);
        g.s_ = s;
        return g;
    }

    /// Cube with an arbitrary side length (K >= 2).
    static CubeGeometry from_side(std::uint64_t side, unsigned d) { return CubeGeometry(side, d); }

    unsigned s() const noexcept { return s_; }
    unsigned dim() const noexcept { return d_; }
    std::uint64_t side() const noexcept { return side_; }
    const bigint& point_count_big() const noexcept { return n_big_; }
    bool materializable() const noexcept { return n_big_ <= max_points(); }

    /// Number of points; throws std::length_error when not materializable.
    std::size_t points() const
    {
        require_materializable();
        return static_cast<std::size_t>(n_big_);
    }

    /// Number of lines parallel to one axis, K^{d-1}.
    std::size_t lines_per_axis() const
    {
        require_materializable();
        return static_cast<std::size_t>(n_big_ / side_);
    }

    std::uint64_t stride(unsigned axis) const { return strides_.at(axis); }

    point_t encode(std::span<const std::uint64_t> coords) const
    {
        require_materializable();
        if (coords.size() != d_)
            throw std::invalid_argument("encode: wrong number of coordinates");
        std::uint64_t idx = 0;
        for (unsigned i = 0; i < d_; ++i) {
            if (coords[i] >= side_)
                throw std::out_of_range("encode: coordinate out of range");
            idx += coords[i] * strides_[i];
        }
        return static_cast<point_t>(idx);
    }

    std::vector<std::uint64_t> decode(point_t x) const
    {
        require_materializable();
        if (x >= points())
            throw std::out_of_range("decode: index out of range");
        std::vector<std::uint64_t> c(d_);
        std::uint64_t r = x;
        for (unsigned i = 0; i < d_; ++i) {
            c[i] = r % side_;
            r /= side_;
        }
        return c;
    }

    std::uint64_t coord(point_t x, unsigned axis) const { return (x / strides_[axis]) % side_; }

    /// Index of the axis-parallel line through x: the point index with the
    /// axis coordinate removed, in [0, K^{d-1}).
    std::size_t line_of(point_t x, unsigned axis) const
    {
        const std::uint64_t lo = x % strides_[axis];
        const std::uint64_t hi = x / (strides_[axis] * side_);
        return static_cast<std::size_t>(lo + hi * strides_[axis]);
    }

    /// Point on line `line` (parallel to `axis`) whose axis coordinate is c.
    point_t point_on_line(unsigned axis, std::size_t line, std::uint64_t c) const
    {
        const std::uint64_t lo = line % strides_[axis];
        const std::uint64_t hi = line / strides_[axis];
        return static_cast<point_t>(lo + c * strides_[axis] + hi * strides_[axis] * side_);
    }

    /// x with its axis coordinate replaced by c.
    point_t with_coord(point_t x, unsigned axis, std::uint64_t c) const
    {
        const auto old = coord(x, axis);
        return static_cast<point_t>(x + (c - old) * strides_[axis]);
    }

    std::vector<point_t> line_points(unsigned axis, std::size_t line) const
    {
        std::vector<point_t> pts(side_);
        for (std::uint64_t c = 0; c < side_; ++c)
            pts[c] = point_on_line(axis, line, c);
        return pts;
    }

    /// Points with coordinate 0 on axis 0 (the face used for routing), in index order.
    std::vector<point_t> face_points() const
    {
        std::vector<point_t> f;
        f.reserve(lines_per_axis());
        for (std::size_t l = 0; l < lines_per_axis(); ++l)
            f.push_back(point_on_line(0, l, 0));
        return f;
    }

    static constexpr std::uint64_t max_points() { return std::numeric_limits<point_t>::max() / 2; }

private:
    CubeGeometry(std::uint64_t side, unsigned d) : d_(d), side_(side)
    {
        if (d < 1 || d > max_dim)
            throw std::invalid_argument("CubeGeometry: dimension out of range");
        if (side < 2)
            throw std::invalid_argument("CubeGeometry: side length must be at least 2");
        n_big_ = 1;
        for (unsigned i = 0; i < d; ++i)
            n_big_ *= side;
        if (materializable()) {
            std::uint64_t st = 1;
            for (unsigned i = 0; i < d; ++i) {
                strides_[i] = st;
                st *= side;
            }
        }
    }

    void require_materializable() const
    {
        if (!materializable())
            throw std::length_error("CubeGeometry: point count too large to materialize");
    }

    unsigned s_ = 0;
    unsigned d_;
    std::uint64_t side_;
    bigint n_big_;
    std::array<std::uint64_t, max_dim> strides_{};
};

} // namespace altexp
