#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "cube.hpp"
#include "errors.hpp"
#include "line_action.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace altexp {

using rational = boost::multiprecision::cpp_rational;

// ---------------------------------------------------------------------------
// Point distributions.  T is double or rational.

template <class T>
std::vector<T> delta_distribution(const CubeGeometry& g, point_t x)
{
    std::vector<T> p(g.points(), T(0));
    p.at(x) = T(1);
    return p;
}

template <class T>
std::vector<T> uniform_distribution(const CubeGeometry& g)
{
    const std::size_t n = g.points();
    return std::vector<T>(n, T(1) / T(n));
}

/// U_i on the point marginal: every axis line's mass becomes its mean.
template <class T>
std::vector<T> axis_average(const CubeGeometry& g, std::vector<T> p, unsigned axis)
{
    if (p.size() != g.points())
        throw std::domain_error("axis_average: distribution does not match the cube");
    if (axis >= g.dim())
        throw std::out_of_range("axis_average: no such axis");
    const std::uint64_t K = g.side();
    const std::size_t lines = g.lines_per_axis();
    for (std::size_t l = 0; l < lines; ++l) {
        T s(0);
        for (std::uint64_t c = 0; c < K; ++c)
            s += p[g.point_on_line(axis, l, c)];
        s /= T(K);
        for (std::uint64_t c = 0; c < K; ++c)
            p[g.point_on_line(axis, l, c)] = s;
    }
    return p;
}

template <class T>
T total_mass(const std::vector<T>& p)
{
    T s(0);
    for (const auto& x : p)
        s += x;
    return s;
}

/// Total variation distance to the uniform distribution.
template <class T>
T tv_to_uniform(const std::vector<T>& p)
{
    const T u = T(1) / T(p.size());
    T s(0);
    for (const auto& x : p)
        s += x > u ? x - u : u - x;
    return s / T(2);
}

inline ShiftVector sample_Ei(Rng& rng, const CubeGeometry& g, unsigned axis)
{
    if (axis >= g.dim())
        throw std::out_of_range("sample_Ei: no such axis");
    return ShiftVector::random(g, axis, rng);
}

// ---------------------------------------------------------------------------
// Walk on ordered h-tuples of distinct points.

/// One operator of a step pattern with its axes in application order.
/// U_k acts on axis k - 1; Q1 = U_1 ... U_{d/2} and Q2 = U_{d/2+1} ... U_d,
/// where in a product the rightmost factor acts first.
struct WalkStep {
    std::string name;
    std::vector<unsigned> axes;
};

/// Parses e.g. "Q2Q1Q2Q1" or "U1U2U3"; returns steps in application order
/// (right to left).
inline std::vector<WalkStep> parse_pattern(const std::string& pattern, unsigned d)
{
    if (d % 2)
        throw std::invalid_argument("parse_pattern: the tuple walk needs an even dimension");
    std::vector<WalkStep> steps;
    std::size_t i = 0;
    while (i < pattern.size()) {
        const char kind = pattern[i];
        std::size_t j = i + 1;
        while (j < pattern.size() && std::isdigit(static_cast<unsigned char>(pattern[j])))
            ++j;
        if ((kind != 'Q' && kind != 'U') || j == i + 1)
            throw std::invalid_argument("parse_pattern: bad token in '" + pattern + "'");
        const unsigned k = static_cast<unsigned>(std::stoul(pattern.substr(i + 1, j - i - 1)));
        WalkStep st{pattern.substr(i, j - i), {}};
        if (kind == 'U') {
            if (k < 1 || k > d)
                throw std::invalid_argument("parse_pattern: " + st.name + " out of range");
            st.axes = {k - 1};
        } else {
            if (k != 1 && k != 2)
                throw std::invalid_argument("parse_pattern: only Q1 and Q2 exist");
            const unsigned lo = k == 1 ? 0 : d / 2;
            for (unsigned a = lo + d / 2; a-- > lo;)
                st.axes.push_back(a);
        }
        steps.push_back(std::move(st));
        i = j;
    }
    std::reverse(steps.begin(), steps.end());
    if (steps.empty())
        throw std::invalid_argument("parse_pattern: empty pattern");
    return steps;
}

using TupleState = std::vector<point_t>;

/// Largest h with h <= K^{3/2} / 2.
inline std::size_t default_h(std::uint64_t K)
{
    std::size_t h = 0;
    while (4 * (h + 1) * (h + 1) <= K * K * K)
        ++h;
    return h;
}

struct WalkConfig {
    std::uint64_t seed = 1;
    std::size_t samples = 10000;
    std::string pattern = "Q2Q1";
    TupleState target; // empty: no hitting statistic
};

struct StepStats {
    std::string name;
    std::size_t in_B1 = 0, in_B2 = 0; // no two points share the first (last) d/2 coordinates
    std::size_t collisions = 0;       // point pairs sharing the first d/2 coordinates, summed over samples
};

struct Estimate {
    double value = 0, sigma = 0;
};

inline Estimate binomial_estimate(std::size_t hits, std::size_t n)
{
    const double p = static_cast<double>(hits) / static_cast<double>(n);
    return {p, std::sqrt(std::max(p * (1 - p), 1.0 / static_cast<double>(n)) / static_cast<double>(n))};
}

struct WalkStats {
    std::size_t samples = 0, h = 0;
    std::vector<StepStats> steps;
    std::size_t hits = 0;

    Estimate fraction_B1(std::size_t step) const { return binomial_estimate(steps.at(step).in_B1, samples); }
    Estimate fraction_B2(std::size_t step) const { return binomial_estimate(steps.at(step).in_B2, samples); }
    Estimate hit_frequency() const { return binomial_estimate(hits, samples); }
};

namespace detail {

inline std::size_t half_collisions(const TupleState& t, std::uint64_t half_size, bool low)
{
    std::size_t c = 0;
    for (std::size_t i = 0; i < t.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) {
            const bool same = low ? t[i] % half_size == t[j] % half_size : t[i] / half_size == t[j] / half_size;
            c += same;
        }
    return c;
}

inline void check_tuple(const CubeGeometry& g, const TupleState& t)
{
    auto s = t;
    std::sort(s.begin(), s.end());
    if (std::adjacent_find(s.begin(), s.end()) != s.end())
        throw std::invalid_argument("tuple_walk: tuple points are not distinct");
    if (!s.empty() && s.back() >= g.points())
        throw std::out_of_range("tuple_walk: point outside the cube");
}

} // namespace detail

/// Monte Carlo over config.samples independent trajectories from `start`.
/// Each E_i letter draws a uniform shift for every line holding a tuple point
/// (the other lines do not affect the tuple).  Sample k uses
/// Rng::stream(seed, k).
inline WalkStats tuple_walk(const CubeGeometry& g, const WalkConfig& cfg, const TupleState& start)
{
    if (cfg.samples == 0)
        throw std::invalid_argument("tuple_walk: sample count must be positive");
    detail::check_tuple(g, start);
    if (!cfg.target.empty()) {
        detail::check_tuple(g, cfg.target);
        if (cfg.target.size() != start.size())
            throw std::invalid_argument("tuple_walk: target has a different length");
    }
    const auto steps = parse_pattern(cfg.pattern, g.dim());
    const std::uint64_t K = g.side();
    std::uint64_t half = 1;
    for (unsigned a = 0; a < g.dim() / 2; ++a)
        half *= K;
    const std::size_t S = steps.size(), h = start.size();

    constexpr std::size_t grain = 4096;
    const std::size_t blocks = (cfg.samples + grain - 1) / grain;
    std::vector<std::vector<StepStats>> part(blocks, std::vector<StepStats>(S));
    std::vector<std::size_t> part_hits(blocks, 0);
    parallel_blocks(cfg.samples, grain, [&](std::size_t lo, std::size_t hi) {
        auto& st = part[lo / grain];
        auto& hits = part_hits[lo / grain];
        TupleState t;
        std::vector<std::size_t> lines(h);
        std::vector<std::uint32_t> shift(h);
        for (std::size_t k = lo; k < hi; ++k) {
            auto rng = Rng::stream(cfg.seed, k);
            t = start;
            for (std::size_t s = 0; s < S; ++s) {
                for (unsigned axis : steps[s].axes) {
                    for (std::size_t i = 0; i < h; ++i) {
                        lines[i] = g.line_of(t[i], axis);
                        std::size_t j = 0;
                        while (j < i && lines[j] != lines[i])
                            ++j;
                        shift[i] = j < i ? shift[j] : static_cast<std::uint32_t>(rng.below(K));
                    }
                    for (std::size_t i = 0; i < h; ++i)
                        if (shift[i])
                            t[i] = g.with_coord(t[i], axis, (g.coord(t[i], axis) + shift[i]) % K);
                }
                for (std::size_t i = 0; i < h; ++i)
                    for (std::size_t j = 0; j < i; ++j)
                        if (t[i] == t[j])
                            throw construction_failure("tuple_walk: a step merged two tuple points");
                const auto low = detail::half_collisions(t, half, true);
                st[s].collisions += low;
                st[s].in_B1 += low == 0;
                st[s].in_B2 += detail::half_collisions(t, half, false) == 0;
            }
            if (!cfg.target.empty() && t == cfg.target)
                ++hits;
        }
    });
    WalkStats out;
    out.samples = cfg.samples;
    out.h = h;
    out.steps.resize(S);
    for (std::size_t s = 0; s < S; ++s)
        out.steps[s].name = steps[s].name;
    for (std::size_t b = 0; b < blocks; ++b) {
        for (std::size_t s = 0; s < S; ++s) {
            out.steps[s].in_B1 += part[b][s].in_B1;
            out.steps[s].in_B2 += part[b][s].in_B2;
            out.steps[s].collisions += part[b][s].collisions;
        }
        out.hits += part_hits[b];
    }
    return out;
}

/// Exact point-marginal version of a pattern: applies the axis averages in
/// application order.
template <class T>
std::vector<T> pattern_average(const CubeGeometry& g, std::vector<T> p, const std::string& pattern)
{
    for (const auto& st : parse_pattern(pattern, g.dim()))
        for (unsigned axis : st.axes)
            p = axis_average(g, std::move(p), axis);
    return p;
}

// ---------------------------------------------------------------------------
// The mixing estimate on the 6-cube of h-tuples, in exact arithmetic.

struct DoeblinReport {
    std::size_t h = 0;
    std::uint64_t K = 0;
    rational stated_norm;      // 1 - h^2/K^3, the norm bound as stated
    rational contraction;      // h^2/K^3, the factor its later use needs
    rational lhs;              // (1 - h^2/2K^3)^2 (1 - h^2/2K^6)
    bool inequality = false;   // lhs >= 1 - h^2/K^3
    bigint tuple_count;        // prod_{i=1}^h (K^6 - i + 1)
    rational tuple_lower;      // K^{6h} (1 - h^2/2K^6)
    bool count_bound = false;  // tuple_count >= tuple_lower
    rational entry_lower;      // K^{-6h} (1 - h^2/2K^3)^2
    rational entry_target;     // (1 - h^2/K^3) / tuple_count
    bool entry_bound = false;  // entry_lower >= entry_target
    // The chain inequality fails at h = 1 for every K (it needs h^2 >= 2);
    // the entry bound, computed with the exact |B|, holds regardless.
    bool bound_holds() const { return count_bound && entry_bound; }
};

inline DoeblinReport doeblin_contraction_check(std::size_t h, std::uint64_t K)
{
    if (K < 2)
        throw std::invalid_argument("doeblin_contraction_check: K must be at least 2");
    const bigint K3 = bigint(K) * K * K, K6 = K3 * K3;
    if (bigint(4) * h * h > K3)
        throw std::invalid_argument("doeblin_contraction_check: need h <= K^{3/2} / 2");
    DoeblinReport r;
    r.h = h;
    r.K = K;
    const rational h2(bigint(h) * h);
    r.contraction = h2 / rational(K3);
    r.stated_norm = 1 - r.contraction;
    const rational a = 1 - h2 / (2 * rational(K3));
    const rational b = 1 - h2 / (2 * rational(K6));
    r.lhs = a * a * b;
    r.inequality = r.lhs >= r.stated_norm;
    r.tuple_count = 1;
    for (std::size_t i = 1; i <= h; ++i)
        r.tuple_count *= K6 - i + 1;
    const bigint K6h = boost::multiprecision::pow(K6, static_cast<unsigned>(h));
    r.tuple_lower = rational(K6h) * b;
    r.count_bound = rational(r.tuple_count) >= r.tuple_lower;
    r.entry_lower = a * a / rational(K6h);
    r.entry_target = r.stated_norm / rational(r.tuple_count);
    r.entry_bound = r.entry_lower >= r.entry_target;
    return r;
}

// ---------------------------------------------------------------------------
// Urns: l boxes of k urns, p balls in distinct urns, at least q in box 0.

inline bigint binomial(std::size_t n, std::size_t k)
{
    if (k > n)
        return 0;
    bigint c = 1;
    for (std::size_t i = 1; i <= k; ++i)
        c = c * (n - k + i) / i;
    return c;
}

inline rational urn_bound(std::size_t l, std::size_t k, std::size_t p, std::size_t q)
{
    if (p >= l * k)
        throw std::invalid_argument("urn_bound: need p < l k");
    if (q > p)
        return 0;
    const rational lam(bigint(k), bigint(l * k - p));
    rational r(binomial(p, q));
    for (std::size_t i = 0; i < q; ++i)
        r *= lam;
    return r;
}

/// Empirical probability of at least q balls in box 0.  Balls are placed one
/// at a time into a uniform free urn, so only box 0's free count matters.
inline Estimate urn_mc(std::size_t l, std::size_t k, std::size_t p, std::size_t q, std::size_t samples,
                       std::uint64_t seed)
{
    if (p >= l * k)
        throw std::invalid_argument("urn_mc: need p < l k");
    if (samples == 0)
        throw std::invalid_argument("urn_mc: sample count must be positive");
    constexpr std::size_t grain = 4096;
    std::vector<std::size_t> part((samples + grain - 1) / grain, 0);
    parallel_blocks(samples, grain, [&](std::size_t lo, std::size_t hi) {
        std::size_t c = 0;
        for (std::size_t s = lo; s < hi; ++s) {
            auto rng = Rng::stream(seed, s);
            std::size_t in_box = 0, free = l * k;
            for (std::size_t b = 0; b < p; ++b, --free)
                if (rng.below(free) < k - in_box)
                    ++in_box;
            c += in_box >= q;
        }
        part[lo / grain] = c;
    });
    std::size_t hits = 0;
    for (auto c : part)
        hits += c;
    return binomial_estimate(hits, samples);
}

// ---------------------------------------------------------------------------
// Mixing of the lazy walk on points (exact distribution propagation).

struct MixingReport {
    std::size_t steps = 0;
    std::vector<double> tv; // tv[t] after t steps
};

/// Lazy walk p <- (p + A p) / 2 from a point mass at `start`; stops at the
/// first step with TV to uniform below tol.  The walk operator is symmetric,
/// so applying it to the distribution propagates it.
template <class Graph>
MixingReport mixing_time_points(const Graph& g, double tol, std::size_t start = 0, std::size_t max_steps = 100000)
{
    const std::size_t n = g.size();
    if (start >= n)
        throw std::out_of_range("mixing_time_points: start vertex out of range");
    std::vector<double> p(n, 0.0), q;
    p[start] = 1;
    MixingReport r;
    r.tv.push_back(tv_to_uniform(p));
    while (r.tv.back() >= tol) {
        if (r.steps == max_steps)
            throw not_converged("mixing_time_points: TV above tol after the step budget", r.tv.back());
        g.apply(p, q);
        for (std::size_t i = 0; i < n; ++i)
            p[i] = 0.5 * (p[i] + q[i]);
        ++r.steps;
        r.tv.push_back(tv_to_uniform(p));
    }
    return r;
}

/// Same, with one composite step = the full sweep U_1 ... U_d.
inline MixingReport mixing_time_sweeps(const CubeGeometry& g, double tol, point_t start = 0, std::size_t max_steps = 1000)
{
    auto p = delta_distribution<double>(g, start);
    MixingReport r;
    r.tv.push_back(tv_to_uniform(p));
    while (r.tv.back() >= tol) {
        if (r.steps == max_steps)
            throw not_converged("mixing_time_sweeps: TV above tol after the step budget", r.tv.back());
        for (unsigned a = g.dim(); a-- > 0;)
            p = axis_average(g, std::move(p), a);
        ++r.steps;
        r.tv.push_back(tv_to_uniform(p));
    }
    return r;
}

} // namespace altexp
