#pragma once

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "cube.hpp"
#include "parallel.hpp"

namespace altexp {

/// Weakly decreasing positive parts.
using Partition = std::vector<unsigned>;

inline unsigned partition_size(const Partition& p) { return std::accumulate(p.begin(), p.end(), 0u); }

inline void require_partition(const Partition& p)
{
    for (std::size_t i = 0; i < p.size(); ++i)
        if (p[i] == 0 || (i && p[i] > p[i - 1]))
            throw std::invalid_argument("not a partition: parts must be positive and weakly decreasing");
}

/// All partitions of n, (n) first, in reverse lexicographic order.
inline std::vector<Partition> partitions(unsigned n)
{
    std::vector<Partition> out;
    Partition cur;
    auto rec = [&](auto&& self, unsigned rest, unsigned cap) -> void {
        if (rest == 0) {
            out.push_back(cur);
            return;
        }
        for (unsigned k = std::min(rest, cap); k >= 1; --k) {
            cur.push_back(k);
            self(self, rest - k, k);
            cur.pop_back();
        }
    };
    rec(rec, n, n);
    return out;
}

inline Partition conjugate(const Partition& p)
{
    require_partition(p);
    Partition c(p.empty() ? 0 : p.front(), 0);
    for (unsigned part : p)
        for (unsigned j = 0; j < part; ++j)
            ++c[j];
    return c;
}

inline std::string to_string(const Partition& p)
{
    std::string s;
    for (std::size_t i = 0; i < p.size(); ++i)
        s += (i ? "+" : "") + std::to_string(p[i]);
    return s.empty() ? "0" : s;
}

/// Hook length formula.
inline bigint dimension(const Partition& p)
{
    require_partition(p);
    const auto c = conjugate(p);
    bigint num = 1, den = 1;
    unsigned k = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        for (unsigned j = 0; j < p[i]; ++j) {
            num *= ++k;
            den *= (p[i] - j - 1) + (c[j] - static_cast<unsigned>(i) - 1) + 1;
        }
    return num / den;
}

namespace detail {

/// Partitions obtained by removing one border strip of length r, with the
/// sign (-1)^height.  Works on beta numbers: a strip removal moves one bead
/// from b to b - r, the height is the number of beads jumped over.
inline std::vector<std::pair<Partition, int>> remove_strips(const Partition& p, unsigned r)
{
    const std::size_t k = p.size();
    std::vector<int> beta(k);
    for (std::size_t i = 0; i < k; ++i)
        beta[i] = static_cast<int>(p[i] + (k - 1 - i));
    std::vector<std::pair<Partition, int>> out;
    for (std::size_t i = 0; i < k; ++i) {
        const int to = beta[i] - static_cast<int>(r);
        if (to < 0 || std::find(beta.begin(), beta.end(), to) != beta.end())
            continue;
        int jumped = 0;
        for (int b : beta)
            jumped += b > to && b < beta[i];
        auto nb = beta;
        nb[i] = to;
        std::sort(nb.begin(), nb.end(), std::greater<>());
        Partition q;
        for (std::size_t t = 0; t < k; ++t) {
            const int part = nb[t] - static_cast<int>(k - 1 - t);
            if (part > 0)
                q.push_back(static_cast<unsigned>(part));
        }
        out.emplace_back(std::move(q), jumped % 2 ? -1 : 1);
    }
    return out;
}

} // namespace detail

/// chi_lambda on the class of one L-cycle and N - L fixed points.
/// Removing the L-strip first leaves fixed points only, whose character is
/// the dimension.
inline bigint mn_character(const Partition& p, unsigned L)
{
    require_partition(p);
    const unsigned n = partition_size(p);
    if (L == 0 || L > n)
        throw std::invalid_argument("mn_character: need 1 <= L <= N");
    if (L == 1)
        return dimension(p);
    bigint chi = 0;
    for (const auto& [q, sign] : detail::remove_strips(p, L))
        chi += sign * dimension(q);
    return chi;
}

/// chi_lambda on the class of cycle type mu (general Murnaghan-Nakayama,
/// memoized on (remaining shape, cycles consumed)).
class CharacterTable {
public:
    explicit CharacterTable(unsigned n) : n_(n), parts_(partitions(n))
    {
        if (n > 12)
            throw std::invalid_argument("CharacterTable: full tables limited to N <= 12");
        values_.assign(parts_.size(), std::vector<bigint>(parts_.size()));
        for (std::size_t c = 0; c < parts_.size(); ++c) {
            memo_.clear();
            for (std::size_t r = 0; r < parts_.size(); ++r)
                values_[r][c] = chi(parts_[r], parts_[c], 0);
        }
    }

    unsigned n() const noexcept { return n_; }
    const std::vector<Partition>& classes() const noexcept { return parts_; }
    const bigint& value(std::size_t irrep, std::size_t cls) const { return values_.at(irrep).at(cls); }

    /// Centralizer order z_mu = prod i^{m_i} m_i!.
    static bigint centralizer(const Partition& mu)
    {
        std::map<unsigned, unsigned> m;
        for (unsigned x : mu)
            ++m[x];
        bigint z = 1;
        for (auto [i, k] : m)
            for (unsigned t = 1; t <= k; ++t)
                z *= bigint(i) * t;
        return z;
    }

    /// Exact row and column orthogonality.
    bool orthogonal() const
    {
        const std::size_t c = parts_.size();
        bigint nfact = 1;
        for (unsigned i = 2; i <= n_; ++i)
            nfact *= i;
        for (std::size_t a = 0; a < c; ++a)
            for (std::size_t b = 0; b <= a; ++b) {
                bigint col = 0, row = 0;
                for (std::size_t t = 0; t < c; ++t) {
                    col += values_[t][a] * values_[t][b];
                    row += (nfact / centralizer(parts_[t])) * values_[a][t] * values_[b][t];
                }
                if (col != (a == b ? centralizer(parts_[a]) : bigint(0)) || row != (a == b ? nfact : bigint(0)))
                    return false;
            }
        return true;
    }

    /// CSV rows "partition,class,value".
    void write_csv(std::ostream& os) const
    {
        os << "partition,class,value\n";
        for (std::size_t r = 0; r < parts_.size(); ++r)
            for (std::size_t c = 0; c < parts_.size(); ++c)
                os << to_string(parts_[r]) << ',' << to_string(parts_[c]) << ',' << values_[r][c] << '\n';
    }

private:
    bigint chi(const Partition& p, const Partition& mu, std::size_t i)
    {
        if (i == mu.size())
            return p.empty() ? 1 : 0;
        auto key = std::make_pair(p, i);
        if (auto it = memo_.find(key); it != memo_.end())
            return it->second;
        bigint s = 0;
        for (const auto& [q, sign] : detail::remove_strips(p, mu[i]))
            s += sign * chi(q, mu, i + 1);
        memo_.emplace(std::move(key), s);
        return s;
    }

    unsigned n_;
    std::vector<Partition> parts_;
    std::vector<std::vector<bigint>> values_;
    std::map<std::pair<Partition, std::size_t>, bigint> memo_;
};

struct RoichmanEntry {
    Partition lambda;
    bigint chi, dim;
};

struct RoichmanReport {
    unsigned N = 0, L = 0;
    std::size_t checked = 0;
    std::vector<RoichmanEntry> violations;
};

/// |chi(C_L)| <= dim * max{l1/N, l1'/N, 3/4}^{(L-5)/4} for every lambda of N,
/// compared exactly as |chi|^4 (4N)^{L-5} <= dim^4 max{4 l1, 4 l1', 3N}^{L-5}.
inline RoichmanReport roichman_check(unsigned N, unsigned L)
{
    if (L < 6 || L > N)
        throw std::invalid_argument("roichman_check: need 6 <= L <= N");
    const auto parts = partitions(N);
    std::vector<int> bad(parts.size(), 0);
    std::vector<RoichmanEntry> entries(parts.size());
    parallel_blocks(parts.size(), 8, [&](std::size_t lo, std::size_t hi) {
        for (std::size_t i = lo; i < hi; ++i) {
            const auto& p = parts[i];
            const bigint chi = mn_character(p, L), dim = dimension(p);
            const unsigned m = std::max({4 * p.front(), 4 * static_cast<unsigned>(p.size()), 3 * N});
            const bigint c4 = chi * chi * chi * chi, d4 = dim * dim * dim * dim;
            bad[i] = c4 * boost::multiprecision::pow(bigint(4 * N), L - 5) > d4 * boost::multiprecision::pow(bigint(m), L - 5);
            entries[i] = {p, chi, dim};
        }
    });
    RoichmanReport r;
    r.N = N;
    r.L = L;
    r.checked = parts.size();
    for (std::size_t i = 0; i < parts.size(); ++i)
        if (bad[i])
            r.violations.push_back(entries[i]);
    return r;
}

// ---------------------------------------------------------------------------
// Decay of the averaged cycle operator on the non-trivial part.

using bigfloat = boost::multiprecision::cpp_bin_float_50;

/// Closed interval of high-precision reals.
struct FloatInterval {
    bigfloat lo, hi;
};

struct DecayReport {
    FloatInterval factor;     // (1 - h/N)^{(L-5)/4}
    FloatInterval exp_bound;  // exp(-h (L-5) / 4N)
    FloatInterval e_minus_3;
    bool chain_ordered = false; // factor <= exp_bound
    bool below_e3 = false;      // exp_bound <= e^-3 (certain)
};

namespace detail {

inline FloatInterval widen(const bigfloat& v)
{
    // 50 decimal digits with a handful of roundings; 1e-40 relative is safe.
    const bigfloat eps("1e-40");
    const bigfloat a = boost::multiprecision::abs(v) * eps;
    return {v - a, v + a};
}

} // namespace detail

inline DecayReport decay_factor(std::uint64_t K, unsigned d, const bigint& h, const bigint& L)
{
    if (K < 2 || d == 0)
        throw std::invalid_argument("decay_factor: need K >= 2 and d >= 1");
    if (L < 5)
        throw std::invalid_argument("decay_factor: need L >= 5");
    const bigfloat N = boost::multiprecision::pow(bigfloat(K), static_cast<int>(d));
    const bigfloat hf(h), Lf(L);
    if (hf >= N)
        throw std::invalid_argument("decay_factor: need h < N");
    const bigfloat e = (Lf - 5) / 4;
    DecayReport r;
    r.factor = detail::widen(boost::multiprecision::exp(e * boost::multiprecision::log1p(-hf / N)));
    r.exp_bound = detail::widen(boost::multiprecision::exp(-hf * e / N));
    r.e_minus_3 = detail::widen(boost::multiprecision::exp(bigfloat(-3)));
    r.chain_ordered = r.factor.lo <= r.exp_bound.hi;
    r.below_e3 = r.exp_bound.hi <= r.e_minus_3.lo;
    return r;
}

/// Cycle length the large-K regime uses: floor(K^{d-1} / (3 ln K)) - K - 4,
/// with h = floor(K^{3/2} / 2).
struct DecayRegime {
    bigint h, L;
};

inline DecayRegime large_k_regime(std::uint64_t K, unsigned d)
{
    using boost::multiprecision::floor;
    const bigfloat Kf(K);
    const bigfloat Lf = floor(boost::multiprecision::pow(Kf, static_cast<int>(d) - 1) / (3 * boost::multiprecision::log(Kf)));
    const bigfloat hf = floor(Kf * boost::multiprecision::sqrt(Kf) / 2);
    return {bigint(hf), bigint(Lf) - K - 4};
}

} // namespace altexp
