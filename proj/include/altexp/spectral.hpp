#pragma once

#include <Eigen/Dense>

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include "errors.hpp"
#include "graph.hpp"
#include "line_action.hpp"
#include "parallel.hpp"
#include "rng.hpp"

namespace altexp {

/// lambda1 = 1 - (second largest eigenvalue of the walk operator A).
struct SpectralReport {
    double lambda1 = 0;
    double lambda2 = 1; // second largest eigenvalue of A
    std::string method;
    std::size_t iterations = 0;
    double tol = 0;
    double residual = 0;
    double cheeger_sweep = 0;
    double kazhdan_lower = 0, kazhdan_upper = 0;
    std::uint64_t seed = 0;
    std::vector<double> eigenvector; // unit, orthogonal to constants
};

namespace detail {

inline double dot(const std::vector<double>& a, const std::vector<double>& b)
{
    return parallel_sum(a.size(), [&](std::size_t i) { return a[i] * b[i]; });
}

inline void remove_mean(std::vector<double>& v)
{
    const double mean = parallel_sum(v.size(), [&](std::size_t i) { return v[i]; }) / static_cast<double>(v.size());
    for (auto& x : v)
        x -= mean;
}

inline double normalize(std::vector<double>& v)
{
    const double nrm = std::sqrt(dot(v, v));
    if (nrm > 0)
        for (auto& x : v)
            x /= nrm;
    return nrm;
}

inline std::vector<double> random_unit_perp(std::size_t n, std::uint64_t seed)
{
    Rng rng(seed);
    std::vector<double> v(n);
    for (auto& x : v)
        x = rng.uniform() - 0.5;
    remove_mean(v);
    normalize(v);
    return v;
}

} // namespace detail

/// Dense walk matrix (n <= 4000).
template <class Graph>
Eigen::MatrixXd dense_matrix(const Graph& g)
{
    const std::size_t n = g.size();
    if (n > 4000)
        throw limit_exceeded("dense_matrix: more than 4000 vertices");
    Eigen::MatrixXd A = Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    const double w = 1.0 / static_cast<double>(g.degree());
    for (std::size_t v = 0; v < n; ++v)
        g.for_each_neighbor(v, [&](std::size_t u, unsigned mult) {
            A(static_cast<Eigen::Index>(v), static_cast<Eigen::Index>(u)) += w * mult;
        });
    return A;
}

template <class Graph>
SpectralReport spectral_gap_dense(const Graph& g)
{
    const auto A = dense_matrix(g);
    const auto n = A.rows();
    SpectralReport r;
    r.method = "dense";
    if (n < 2) {
        r.lambda1 = 0;
        return r;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(A);
    // Dense eigenvalues come sorted ascending; the top one is the constant.
    r.lambda2 = es.eigenvalues()(n - 2);
    r.lambda1 = 1.0 - r.lambda2;
    r.eigenvector.resize(static_cast<std::size_t>(n));
    for (Eigen::Index i = 0; i < n; ++i)
        r.eigenvector[static_cast<std::size_t>(i)] = es.eigenvectors()(i, n - 2);
    detail::remove_mean(r.eigenvector);
    detail::normalize(r.eigenvector);
    r.iterations = 1;
    return r;
}

/// Power iteration on the lazy operator (I + A) / 2 with the constant vector
/// deflated.  Stops when both the Rayleigh-quotient change and the residual
/// fall below tol.  Throws not_converged with the best estimate.
template <class Graph>
SpectralReport spectral_gap_power(const Graph& g, double tol = 1e-10, std::uint64_t seed = 1,
                                  std::size_t budget = 100000)
{
    const std::size_t n = g.size();
    SpectralReport r;
    r.method = "power";
    r.tol = tol;
    r.seed = seed;
    if (n < 2)
        return r;
    auto v = detail::random_unit_perp(n, seed);
    std::vector<double> w(n);
    double rho = 0, prev = -1;
    for (std::size_t it = 1; it <= budget; ++it) {
        g.apply(v, w);
        for (std::size_t i = 0; i < n; ++i)
            w[i] = 0.5 * (v[i] + w[i]);
        detail::remove_mean(w);
        rho = detail::dot(v, w);
        double res2 = 0;
        for (std::size_t i = 0; i < n; ++i)
            res2 += (w[i] - rho * v[i]) * (w[i] - rho * v[i]);
        r.residual = std::sqrt(res2);
        r.iterations = it;
        if (detail::normalize(w) == 0)
            break;
        v.swap(w);
        if (std::abs(rho - prev) < tol && r.residual < std::sqrt(tol))
            break;
        prev = rho;
        if (it == budget)
            throw not_converged("spectral_gap_power: no convergence within the iteration budget", 1.0 - (2 * rho - 1));
    }
    r.lambda2 = 2 * rho - 1;
    r.lambda1 = 1.0 - r.lambda2;
    r.eigenvector = std::move(v);
    return r;
}

/// Explicitly restarted Lanczos (full reorthogonalization within each
/// cycle of `steps` vectors) for the top eigenvalue of A on the complement
/// of the constants.  Converged when the Ritz residual is below tol.
template <class Graph>
SpectralReport spectral_gap_lanczos(const Graph& g, double tol = 1e-9, std::uint64_t seed = 1, std::size_t steps = 60,
                                    std::size_t restarts = 500)
{
    const std::size_t n = g.size();
    SpectralReport r;
    r.method = "lanczos";
    r.tol = tol;
    r.seed = seed;
    if (n < 2)
        return r;
    steps = std::min(steps, n - 1);
    auto start = detail::random_unit_perp(n, seed);
    double theta = 0;
    for (std::size_t cycle = 0; cycle < restarts; ++cycle) {
        std::vector<std::vector<double>> Q{start};
        std::vector<double> alpha, beta;
        std::vector<double> w(n);
        for (std::size_t j = 0; j < steps; ++j) {
            g.apply(Q[j], w);
            ++r.iterations;
            detail::remove_mean(w);
            alpha.push_back(detail::dot(Q[j], w));
            // Two passes of Gram-Schmidt against the whole basis.
            for (int pass = 0; pass < 2; ++pass)
                for (const auto& q : Q) {
                    const double c = detail::dot(q, w);
                    for (std::size_t i = 0; i < n; ++i)
                        w[i] -= c * q[i];
                }
            const double b = std::sqrt(detail::dot(w, w));
            beta.push_back(b);
            if (j + 1 == steps || b < 1e-14)
                break;
            for (auto& x : w)
                x /= b;
            Q.push_back(w);
        }
        if (alpha.empty())
            throw not_converged("spectral_gap_lanczos: empty Krylov basis", 1.0);
        const auto k = static_cast<Eigen::Index>(alpha.size());
        Eigen::MatrixXd T = Eigen::MatrixXd::Zero(k, k);
        for (Eigen::Index i = 0; i < k; ++i) {
            T(i, i) = alpha[static_cast<std::size_t>(i)];
            if (i + 1 < k)
                T(i, i + 1) = T(i + 1, i) = beta[static_cast<std::size_t>(i)];
        }
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(T);
        theta = es.eigenvalues()(k - 1);
        const auto y = es.eigenvectors().col(k - 1);
        std::vector<double> x(n, 0.0);
        for (Eigen::Index i = 0; i < k; ++i)
            for (std::size_t t = 0; t < n; ++t)
                x[t] += y(i) * Q[static_cast<std::size_t>(i)][t];
        detail::remove_mean(x);
        detail::normalize(x);
        // True residual of the Ritz pair.
        g.apply(x, w);
        detail::remove_mean(w);
        double res2 = 0;
        for (std::size_t t = 0; t < n; ++t)
            res2 += (w[t] - theta * x[t]) * (w[t] - theta * x[t]);
        r.residual = std::sqrt(res2);
        start = std::move(x);
        if (r.residual < tol || beta.back() < 1e-14)
            break;
        if (cycle + 1 == restarts)
            throw not_converged("spectral_gap_lanczos: no convergence within the restart budget", 1.0 - theta);
    }
    r.lambda2 = theta;
    r.lambda1 = 1.0 - theta;
    r.eigenvector = std::move(start);
    return r;
}

/// Smallest conductance cut(S) / (degree * min(|S|, n - |S|)) over the
/// prefixes of the vertices sorted by v.
template <class Graph>
double cheeger_sweep(const Graph& g, const std::vector<double>& v)
{
    const std::size_t n = g.size();
    if (n < 2)
        return 0;
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return v[a] < v[b]; });
    std::vector<bool> in(n, false);
    double cut = 0, best = 1e300;
    const double deg = static_cast<double>(g.degree());
    for (std::size_t k = 0; k + 1 < n; ++k) {
        const auto x = order[k];
        in[x] = true;
        g.for_each_neighbor(x, [&](std::size_t u, unsigned mult) {
            if (u == x)
                return;
            cut += in[u] ? -static_cast<double>(mult) : static_cast<double>(mult);
        });
        const double small = static_cast<double>(std::min(k + 1, n - k - 1));
        best = std::min(best, cut / (deg * small));
    }
    return best;
}

/// Exact vertex-expansion constant: min |boundary(A)| / |A| over nonempty
/// A with |A| <= n/2 (n <= 22).
struct Expansion {
    std::size_t boundary = 0, set_size = 1;
    double value() const { return static_cast<double>(boundary) / static_cast<double>(set_size); }
};

template <class Graph>
Expansion expansion_exact(const Graph& g)
{
    const std::size_t n = g.size();
    if (n > 22)
        throw limit_exceeded("expansion_exact: more than 22 vertices");
    if (n < 2)
        return {0, 1};
    std::vector<std::uint32_t> nb(n, 0);
    for (std::size_t v = 0; v < n; ++v)
        g.for_each_neighbor(v, [&](std::size_t u, unsigned) { nb[v] |= std::uint32_t{1} << u; });
    Expansion best{n, 1};
    const std::uint32_t full = (std::uint32_t{1} << n) - 1;
    std::vector<std::uint32_t> reach(std::size_t{1} << n, 0);
    for (std::uint32_t a = 1; a <= full; ++a) {
        const unsigned low = static_cast<unsigned>(std::countr_zero(a));
        reach[a] = reach[a & (a - 1)] | nb[low];
        const auto size = static_cast<std::size_t>(std::popcount(a));
        if (2 * size > n)
            continue;
        const auto bd = static_cast<std::size_t>(std::popcount(reach[a] & ~a));
        if (bd * best.set_size < best.boundary * size)
            best = {bd, size};
    }
    return best;
}

/// ||s v - v|| maximised over the generators, (s v)(x) = v(s^-1 x).
inline double max_displacement(const std::vector<Permutation>& gens, const std::vector<double>& v)
{
    double best = 0;
    for (const auto& s : gens) {
        double d2 = 0;
        for (point_t x = 0; x < s.size(); ++x)
            d2 += (v[s(x)] - v[x]) * (v[s(x)] - v[x]);
        best = std::max(best, std::sqrt(d2));
    }
    return best;
}

inline double max_displacement(const CubeGeometry& geo, const std::vector<LineAction>& gens, const std::vector<double>& v)
{
    double best = 0;
    for (const auto& s : gens) {
        const double d2 = parallel_sum(v.size(), [&](std::size_t x) {
            const double t = v[s.apply(geo, static_cast<point_t>(x))] - v[x];
            return t * t;
        });
        best = std::max(best, std::sqrt(d2));
    }
    return best;
}

/// [sqrt(2 lambda1), max_s ||s v1 - v1||] for the representation on
/// functions orthogonal to the invariants.
struct KazhdanBracket {
    double lower = 0, upper = 0;
};

inline KazhdanBracket kazhdan_bracket(double lambda1, double upper_displacement)
{
    return {std::sqrt(2.0 * std::max(0.0, lambda1)), upper_displacement};
}

} // namespace altexp
