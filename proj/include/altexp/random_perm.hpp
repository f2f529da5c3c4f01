#pragma once

#include <utility>
#include <vector>

#include "perm.hpp"
#include "rng.hpp"

namespace altexp {

inline Permutation random_permutation(std::size_t n, Rng& rng)
{
    std::vector<point_t> img(n);
    for (std::size_t i = 0; i < n; ++i)
        img[i] = static_cast<point_t>(i);
    for (std::size_t i = n; i > 1; --i)
        std::swap(img[i - 1], img[rng.below(i)]);
    return Permutation(std::move(img));
}

inline Permutation random_even_permutation(std::size_t n, Rng& rng)
{
    auto p = random_permutation(n, rng);
    if (p.is_even() || n < 2)
        return p;
    auto img = p.image();
    std::swap(img[0], img[1]);
    return Permutation(std::move(img));
}

/// Uniformly random single cycle of length len on distinct random points of [0, n).
inline Permutation random_cycle(std::size_t n, std::size_t len, Rng& rng)
{
    auto shuffled = random_permutation(n, rng).image();
    std::vector<point_t> cyc(shuffled.begin(), shuffled.begin() + static_cast<std::ptrdiff_t>(len));
    return Permutation::from_cycles(n, {cyc});
}

} // namespace altexp
