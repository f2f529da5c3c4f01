#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <numeric>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace altexp {

using point_t = std::uint32_t;

enum class Parity : std::uint8_t { even = 0, odd = 1 };

inline Parity operator*(Parity a, Parity b)
{
    return static_cast<Parity>(static_cast<std::uint8_t>(a) ^ static_cast<std::uint8_t>(b));
}

/// Bijection on the points [0, N).  Composition follows function notation:
/// (p * q)(x) = p(q(x)), so q acts first.
class Permutation {
public:
    Permutation() = default;

    explicit Permutation(std::size_t n) : image_(n)
    {
        std::iota(image_.begin(), image_.end(), point_t{0});
        parity_ = Parity::even;
    }

    /// Throws std::invalid_argument when `image` is not a bijection.
    explicit Permutation(std::vector<point_t> image) : image_(std::move(image))
    {
        std::vector<bool> seen(image_.size(), false);
        for (auto x : image_) {
            if (x >= image_.size() || seen[x])
                throw std::invalid_argument("Permutation: image table is not a bijection");
            seen[x] = true;
        }
        parity_ = compute_parity();
    }

    static Permutation identity(std::size_t n) { return Permutation(n); }

    /// Builds a permutation from disjoint cycles given as point lists.
    static Permutation from_cycles(std::size_t n, const std::vector<std::vector<point_t>>& cycles)
    {
        std::vector<point_t> img(n);
        std::iota(img.begin(), img.end(), point_t{0});
        for (const auto& c : cycles)
            for (std::size_t i = 0; i < c.size(); ++i)
                img.at(c[i]) = c[(i + 1) % c.size()];
        return Permutation(std::move(img));
    }

    std::size_t size() const noexcept { return image_.size(); }
    point_t operator()(point_t x) const { return image_[x]; }
    point_t operator[](point_t x) const { return image_[x]; }
    const std::vector<point_t>& image() const noexcept { return image_; }
    Parity parity() const noexcept { return parity_; }
    bool is_even() const noexcept { return parity_ == Parity::even; }

    bool is_identity() const noexcept
    {
        for (std::size_t i = 0; i < image_.size(); ++i)
            if (image_[i] != i)
                return false;
        return true;
    }

    Permutation inverse() const
    {
        Permutation r;
        r.image_.resize(image_.size());
        for (std::size_t i = 0; i < image_.size(); ++i)
            r.image_[image_[i]] = static_cast<point_t>(i);
        r.parity_ = parity_;
        return r;
    }

    std::size_t fixed_points() const noexcept
    {
        std::size_t n = 0;
        for (std::size_t i = 0; i < image_.size(); ++i)
            n += image_[i] == i;
        return n;
    }

    std::vector<point_t> support() const
    {
        std::vector<point_t> s;
        for (std::size_t i = 0; i < image_.size(); ++i)
            if (image_[i] != i)
                s.push_back(static_cast<point_t>(i));
        return s;
    }

    /// Cycles of length >= 2, each starting at its smallest point.
    std::vector<std::vector<point_t>> cycles() const
    {
        std::vector<std::vector<point_t>> out;
        std::vector<bool> seen(image_.size(), false);
        for (std::size_t i = 0; i < image_.size(); ++i) {
            if (seen[i] || image_[i] == i)
                continue;
            std::vector<point_t> c;
            for (point_t x = static_cast<point_t>(i); !seen[x]; x = image_[x]) {
                seen[x] = true;
                c.push_back(x);
            }
            out.push_back(std::move(c));
        }
        return out;
    }

    std::size_t cycle_count() const
    {
        std::vector<bool> seen(image_.size(), false);
        std::size_t count = 0;
        for (std::size_t i = 0; i < image_.size(); ++i) {
            if (seen[i])
                continue;
            ++count;
            for (auto x = static_cast<point_t>(i); !seen[x]; x = image_[x])
                seen[x] = true;
        }
        return count;
    }

    friend bool operator==(const Permutation& a, const Permutation& b) { return a.image_ == b.image_; }
    friend bool operator<(const Permutation& a, const Permutation& b) { return a.image_ < b.image_; }

private:
    Parity compute_parity() const
    {
        return ((image_.size() - cycle_count()) % 2 == 0) ? Parity::even : Parity::odd;
    }

    std::vector<point_t> image_;
    Parity parity_ = Parity::even;
};

/// (p * q)(x) = p(q(x)).  Throws std::domain_error on mismatched point counts.
inline Permutation compose(const Permutation& p, const Permutation& q)
{
    if (p.size() != q.size())
        throw std::domain_error("compose: permutations act on different point counts");
    std::vector<point_t> img(q.size());
    for (std::size_t i = 0; i < q.size(); ++i)
        img[i] = p(q(static_cast<point_t>(i)));
    return Permutation(std::move(img));
}

inline Permutation operator*(const Permutation& p, const Permutation& q) { return compose(p, q); }

/// g p g^-1
inline Permutation conjugate(const Permutation& p, const Permutation& g) { return g * p * g.inverse(); }

/// Multiset of cycle lengths as length -> multiplicity; fixed points are 1-cycles.
inline std::map<std::size_t, std::size_t> cycle_type(const Permutation& p)
{
    std::map<std::size_t, std::size_t> type;
    std::vector<bool> seen(p.size(), false);
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (seen[i])
            continue;
        std::size_t len = 0;
        for (auto x = static_cast<point_t>(i); !seen[x]; x = p(x)) {
            seen[x] = true;
            ++len;
        }
        ++type[len];
    }
    return type;
}

/// True when p is a single cycle of length `len` with every other point fixed.
inline bool is_single_cycle(const Permutation& p, std::size_t len)
{
    auto t = cycle_type(p);
    if (len == 1)
        return p.is_identity();
    if (t.count(len) == 0 || t.at(len) != 1)
        return false;
    return t.size() == 1 + (p.size() > len ? 1 : 0);
}

/// Strictly increasing list of distinct points in [0, N).
class PointSet {
public:
    PointSet() = default;
    PointSet(std::vector<point_t> pts, std::size_t n)
        : points_(std::move(pts))
    {
        std::sort(points_.begin(), points_.end());
        if (std::adjacent_find(points_.begin(), points_.end()) != points_.end())
            throw std::invalid_argument("PointSet: duplicate points");
        if (!points_.empty() && points_.back() >= n)
            throw std::invalid_argument("PointSet: point out of range");
    }

    std::size_t size() const noexcept { return points_.size(); }
    bool empty() const noexcept { return points_.empty(); }
    std::span<const point_t> points() const noexcept { return points_; }
    auto begin() const { return points_.begin(); }
    auto end() const { return points_.end(); }
    bool contains(point_t x) const { return std::binary_search(points_.begin(), points_.end(), x); }

private:
    std::vector<point_t> points_;
};

inline std::string to_string(const Permutation& p)
{
    std::string s = "[";
    for (std::size_t i = 0; i < p.size(); ++i) {
        if (i)
            s += ',';
        s += std::to_string(p(static_cast<point_t>(i)));
    }
    return s + "]";
}

} // namespace altexp
