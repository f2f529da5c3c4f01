#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <stdexcept>
#include <string>
#include <vector>

#include "errors.hpp"
#include "perm.hpp"
#include "rng.hpp"

namespace altexp {

/// Square matrix over F_2 with at most 64 rows; row i is a bit mask whose
/// bit j is entry (i, j).
class MatGF2 {
public:
    static constexpr unsigned max_dim = 64;

    MatGF2() = default;
    explicit MatGF2(unsigned n) : n_(n), rows_(n, 0)
    {
        if (n > max_dim)
            throw std::invalid_argument("MatGF2: dimension above 64");
    }

    static MatGF2 identity(unsigned n)
    {
        MatGF2 m(n);
        for (unsigned i = 0; i < n; ++i)
            m.rows_[i] = std::uint64_t{1} << i;
        return m;
    }

    static MatGF2 random(unsigned n, Rng& rng)
    {
        MatGF2 m(n);
        for (auto& r : m.rows_)
            r = rng() & m.mask();
        return m;
    }

    static MatGF2 random_invertible(unsigned n, Rng& rng)
    {
        for (;;) {
            auto m = random(n, rng);
            if (m.is_invertible())
                return m;
        }
    }

    unsigned dim() const noexcept { return n_; }
    bool get(unsigned i, unsigned j) const { return (rows_[i] >> j) & 1U; }
    void set(unsigned i, unsigned j, bool v)
    {
        if (v)
            rows_[i] |= std::uint64_t{1} << j;
        else
            rows_[i] &= ~(std::uint64_t{1} << j);
    }
    std::uint64_t row(unsigned i) const { return rows_[i]; }
    void set_row(unsigned i, std::uint64_t r) { rows_[i] = r & mask(); }

    bool is_zero() const noexcept
    {
        for (auto r : rows_)
            if (r)
                return false;
        return true;
    }
    bool is_identity() const noexcept { return *this == identity(n_); }

    friend bool operator==(const MatGF2& a, const MatGF2& b) { return a.n_ == b.n_ && a.rows_ == b.rows_; }
    friend bool operator<(const MatGF2& a, const MatGF2& b) { return a.rows_ < b.rows_; }

    friend MatGF2 operator+(const MatGF2& a, const MatGF2& b)
    {
        a.check_same(b);
        MatGF2 c(a.n_);
        for (unsigned i = 0; i < a.n_; ++i)
            c.rows_[i] = a.rows_[i] ^ b.rows_[i];
        return c;
    }

    friend MatGF2 operator*(const MatGF2& a, const MatGF2& b)
    {
        a.check_same(b);
        MatGF2 c(a.n_);
        for (unsigned i = 0; i < a.n_; ++i) {
            std::uint64_t acc = 0;
            for (std::uint64_t r = a.rows_[i]; r; r &= r - 1)
                acc ^= b.rows_[static_cast<unsigned>(std::countr_zero(r))];
            c.rows_[i] = acc;
        }
        return c;
    }

    /// M v for a column vector v given as a bit mask.
    std::uint64_t apply(std::uint64_t v) const noexcept
    {
        std::uint64_t out = 0;
        for (unsigned i = 0; i < n_; ++i)
            out |= static_cast<std::uint64_t>(std::popcount(rows_[i] & v) & 1) << i;
        return out;
    }

    unsigned rank() const
    {
        auto r = rows_;
        unsigned rk = 0;
        for (unsigned col = 0; col < n_ && rk < n_; ++col) {
            const std::uint64_t bit = std::uint64_t{1} << col;
            unsigned piv = rk;
            while (piv < n_ && !(r[piv] & bit))
                ++piv;
            if (piv == n_)
                continue;
            std::swap(r[rk], r[piv]);
            for (unsigned i = 0; i < n_; ++i)
                if (i != rk && (r[i] & bit))
                    r[i] ^= r[rk];
            ++rk;
        }
        return rk;
    }

    bool is_invertible() const { return rank() == n_; }

    /// Throws construction_failure when singular.
    MatGF2 inverse() const
    {
        auto a = rows_;
        auto inv = identity(n_).rows_;
        for (unsigned col = 0; col < n_; ++col) {
            const std::uint64_t bit = std::uint64_t{1} << col;
            unsigned piv = col;
            while (piv < n_ && !(a[piv] & bit))
                ++piv;
            if (piv == n_)
                throw construction_failure("MatGF2::inverse: matrix is singular");
            std::swap(a[col], a[piv]);
            std::swap(inv[col], inv[piv]);
            for (unsigned i = 0; i < n_; ++i)
                if (i != col && (a[i] & bit)) {
                    a[i] ^= a[col];
                    inv[i] ^= inv[col];
                }
        }
        MatGF2 m(n_);
        m.rows_ = inv;
        return m;
    }

    MatGF2 pow(std::uint64_t e) const
    {
        MatGF2 result = identity(n_);
        MatGF2 base = *this;
        for (; e; e >>= 1) {
            if (e & 1)
                result = result * base;
            base = base * base;
        }
        return result;
    }

    /// The b x b block at block position (bi, bj).
    MatGF2 block(unsigned bi, unsigned bj, unsigned b) const
    {
        MatGF2 m(b);
        const std::uint64_t bm = b == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << b) - 1;
        for (unsigned i = 0; i < b; ++i)
            m.rows_[i] = (rows_[bi * b + i] >> (bj * b)) & bm;
        return m;
    }

    void set_block(unsigned bi, unsigned bj, const MatGF2& m)
    {
        const unsigned b = m.dim();
        const std::uint64_t bm = ((b == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << b) - 1)) << (bj * b);
        for (unsigned i = 0; i < b; ++i) {
            auto& r = rows_[bi * b + i];
            r = (r & ~bm) | (m.rows_[i] << (bj * b));
        }
    }

    /// Rows as fixed-width lowercase hex, most significant column first.
    std::vector<std::string> hex_rows() const
    {
        std::vector<std::string> out;
        const int width = static_cast<int>((n_ + 3) / 4);
        for (auto r : rows_) {
            char buf[24];
            std::snprintf(buf, sizeof buf, "%0*llx", width, static_cast<unsigned long long>(r));
            out.emplace_back(buf);
        }
        return out;
    }

    /// Matrix number `index` in the enumeration of all 2^{n^2} matrices (n <= 8):
    /// bit (i*n + j) of index is entry (i, j).
    static MatGF2 from_index(unsigned n, std::uint64_t index)
    {
        MatGF2 m(n);
        for (unsigned i = 0; i < n; ++i)
            m.rows_[i] = (index >> (i * n)) & ((std::uint64_t{1} << n) - 1);
        return m;
    }

    std::uint64_t to_index() const
    {
        std::uint64_t idx = 0;
        for (unsigned i = 0; i < n_; ++i)
            idx |= rows_[i] << (i * n_);
        return idx;
    }

private:
    std::uint64_t mask() const noexcept { return n_ == 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << n_) - 1; }
    void check_same(const MatGF2& b) const
    {
        if (n_ != b.n_)
            throw std::domain_error("MatGF2: dimension mismatch");
    }

    unsigned n_ = 0;
    std::vector<std::uint64_t> rows_;
};

inline std::vector<std::uint64_t> prime_factors(std::uint64_t k)
{
    std::vector<std::uint64_t> ps;
    for (std::uint64_t p = 2; p * p <= k; ++p) {
        if (k % p)
            continue;
        ps.push_back(p);
        while (k % p == 0)
            k /= p;
    }
    if (k > 1)
        ps.push_back(k);
    return ps;
}

/// Companion matrix of x^n + sum c_i x^i (bit i of `low` is c_i): the
/// multiplication-by-x map on F_2[x]/(p) in the basis 1, x, ..., x^{n-1}.
inline MatGF2 companion_matrix(unsigned n, std::uint64_t low)
{
    MatGF2 m(n);
    for (unsigned j = 0; j + 1 < n; ++j)
        m.set(j + 1, j, true);
    for (unsigned i = 0; i < n; ++i)
        m.set(i, n - 1, (low >> i) & 1U);
    return m;
}

/// True when M has multiplicative order exactly `order`, given its prime factors.
inline bool has_order(const MatGF2& m, std::uint64_t order, const std::vector<std::uint64_t>& primes)
{
    if (!m.pow(order).is_identity())
        return false;
    for (auto p : primes)
        if (m.pow(order / p).is_identity())
            return false;
    return true;
}

/// Companion matrix of the first primitive polynomial of degree 3s (in
/// increasing order of the low coefficients); its order is K = 2^{3s} - 1.
inline MatGF2 primitive_order_K_element(unsigned s)
{
    if (s == 0 || 3 * s > 48)
        throw std::invalid_argument("primitive_order_K_element: need 1 <= s <= 16");
    const unsigned n = 3 * s;
    const std::uint64_t k = (std::uint64_t{1} << n) - 1;
    const auto primes = prime_factors(k);
    for (std::uint64_t low = 1; low < (std::uint64_t{1} << n); low += 2) {
        auto c = companion_matrix(n, low);
        if (has_order(c, k, primes))
            return c;
    }
    throw construction_failure("primitive_order_K_element: no primitive polynomial found");
}

/// Discrete-log labeling of V \ {0}, V = F_2^{3s}: point j is g^j e_0 for the
/// fixed primitive g, so g itself acts as j -> j + 1 mod K.
class FieldModel {
public:
    static constexpr unsigned max_table_bits = 24;

    explicit FieldModel(unsigned s) : s_(s), gen_(primitive_order_K_element(s))
    {
        const unsigned n = 3 * s;
        if (n > max_table_bits)
            throw limit_exceeded("FieldModel: 2^" + std::to_string(n) + " vectors exceed the table limit");
        k_ = (std::uint64_t{1} << n) - 1;
        vec_.resize(k_);
        log_.assign(k_ + 1, 0);
        std::uint64_t v = 1;
        for (std::uint64_t j = 0; j < k_; ++j) {
            vec_[j] = v;
            log_[v] = static_cast<std::uint32_t>(j);
            v = gen_.apply(v);
        }
        if (v != 1)
            throw construction_failure("FieldModel: generator orbit does not close");
    }

    unsigned s() const noexcept { return s_; }
    unsigned dim() const noexcept { return 3 * s_; }
    std::uint64_t K() const noexcept { return k_; }
    const MatGF2& generator() const noexcept { return gen_; }
    std::uint64_t vector_of(std::uint64_t j) const { return vec_.at(j); }
    std::uint64_t log_of(std::uint64_t v) const
    {
        if (v == 0 || v > k_)
            throw std::out_of_range("FieldModel::log_of: not a nonzero vector");
        return log_[v];
    }

    /// Image table of M on the K labeled points.  Throws on singular M.
    std::vector<point_t> action_table(const MatGF2& m) const
    {
        if (m.dim() != dim())
            throw std::domain_error("FieldModel: matrix has the wrong dimension");
        std::vector<point_t> img(k_);
        for (std::uint64_t j = 0; j < k_; ++j) {
            const auto w = m.apply(vec_[j]);
            if (w == 0)
                throw construction_failure("matrix_to_permutation: matrix is singular");
            img[j] = log_[w];
        }
        return img;
    }

    Permutation matrix_to_permutation(const MatGF2& m) const { return Permutation(action_table(m)); }

private:
    unsigned s_;
    MatGF2 gen_;
    std::uint64_t k_ = 0;
    std::vector<std::uint64_t> vec_;
    std::vector<std::uint32_t> log_;
};

} // namespace altexp
