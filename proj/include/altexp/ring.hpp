#pragma once

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "cube.hpp"
#include "gf2.hpp"

namespace altexp {

/// Element of R = Mat_s(F_2)^m, stored componentwise.
class RingElement {
public:
    RingElement() = default;
    RingElement(unsigned s, std::size_t m) : s_(s), c_(m, MatGF2(s)) {}
    explicit RingElement(std::vector<MatGF2> comps) : s_(comps.empty() ? 0 : comps.front().dim()), c_(std::move(comps))
    {
        for (const auto& x : c_)
            if (x.dim() != s_)
                throw std::invalid_argument("RingElement: components of different sizes");
    }

    static RingElement zero(unsigned s, std::size_t m) { return RingElement(s, m); }
    static RingElement one(unsigned s, std::size_t m) { return constant(MatGF2::identity(s), m); }
    static RingElement constant(const MatGF2& x, std::size_t m) { return RingElement(std::vector<MatGF2>(m, x)); }
    static RingElement random(unsigned s, std::size_t m, Rng& rng)
    {
        RingElement r(s, m);
        for (auto& x : r.c_)
            x = MatGF2::random(s, rng);
        return r;
    }

    unsigned s() const noexcept { return s_; }
    std::size_t m() const noexcept { return c_.size(); }
    const MatGF2& operator[](std::size_t i) const { return c_[i]; }
    MatGF2& operator[](std::size_t i) { return c_[i]; }
    const std::vector<MatGF2>& components() const noexcept { return c_; }

    bool is_zero() const
    {
        return std::all_of(c_.begin(), c_.end(), [](const MatGF2& x) { return x.is_zero(); });
    }
    bool is_unit() const
    {
        return std::all_of(c_.begin(), c_.end(), [](const MatGF2& x) { return x.is_invertible(); });
    }
    RingElement inverse() const
    {
        RingElement r(s_, m());
        for (std::size_t i = 0; i < m(); ++i)
            r.c_[i] = c_[i].inverse();
        return r;
    }

    friend bool operator==(const RingElement& a, const RingElement& b) { return a.c_ == b.c_; }

    friend RingElement operator+(const RingElement& a, const RingElement& b)
    {
        a.check_same(b);
        RingElement r(a.s_, a.m());
        for (std::size_t i = 0; i < a.m(); ++i)
            r.c_[i] = a.c_[i] + b.c_[i];
        return r;
    }

    friend RingElement operator*(const RingElement& a, const RingElement& b)
    {
        a.check_same(b);
        RingElement r(a.s_, a.m());
        for (std::size_t i = 0; i < a.m(); ++i)
            r.c_[i] = a.c_[i] * b.c_[i];
        return r;
    }

    /// Flattened bits (component-major, then row-major) for linear algebra over F_2.
    std::vector<std::uint64_t> bits() const
    {
        const std::size_t per = std::size_t{s_} * s_;
        std::vector<std::uint64_t> out((per * m() + 63) / 64, 0);
        std::size_t pos = 0;
        for (const auto& x : c_)
            for (unsigned i = 0; i < s_; ++i)
                for (unsigned j = 0; j < s_; ++j, ++pos)
                    if (x.get(i, j))
                        out[pos / 64] |= std::uint64_t{1} << (pos % 64);
        return out;
    }

private:
    void check_same(const RingElement& b) const
    {
        if (s_ != b.s_ || m() != b.m())
            throw std::domain_error("RingElement: shape mismatch");
    }

    unsigned s_ = 0;
    std::vector<MatGF2> c_;
};

/// Smallest t with (2^{s^2})^t >= m: the tuple length indexing m copies of Mat_s(F_2).
inline unsigned ring_tuple_length(unsigned s, const bigint& m)
{
    if (m <= 1)
        return 0;
    bigint cap = 1;
    const bigint base = bigint(1) << (s * s);
    unsigned t = 0;
    while (cap < m) {
        cap *= base;
        ++t;
    }
    return t;
}

/// The closed form ceil(3(d-1)/s), an upper bound for ring_tuple_length at m = K^{d-1}.
inline unsigned ring_tuple_bound(unsigned s, unsigned d) { return (3 * (d - 1) + s - 1) / s; }

/// Generators alpha, beta, gamma_1..gamma_t of R as a unital ring.  Component c
/// of gamma_i is the i-th base-2^{s^2} digit of c read as a matrix (bit i*s+j
/// of the digit is entry (i, j)).  alpha is the corner unit e_{s,1} and beta
/// the superdiagonal shift; together they generate Mat_s(F_2).  For s = 1 the
/// matrix algebra is F_2 itself and alpha = beta = 0.
inline std::vector<RingElement> ring_generators(unsigned s, std::size_t m)
{
    if (s == 0 || s > 8)
        throw std::invalid_argument("ring_generators: need 1 <= s <= 8");
    MatGF2 a(s), b(s);
    if (s > 1) {
        a.set(s - 1, 0, true);
        for (unsigned i = 0; i + 1 < s; ++i)
            b.set(i, i + 1, true);
    }
    std::vector<RingElement> gens{RingElement::constant(a, m), RingElement::constant(b, m)};
    const unsigned t = ring_tuple_length(s, m);
    const unsigned digit_bits = s * s;
    for (unsigned i = 0; i < t; ++i) {
        RingElement g(s, m);
        for (std::size_t c = 0; c < m; ++c) {
            const unsigned shift = i * digit_bits;
            const std::uint64_t digit = shift >= 64 ? 0 : (static_cast<std::uint64_t>(c) >> shift);
            const std::uint64_t mask = digit_bits >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << digit_bits) - 1;
            g[c] = MatGF2::from_index(s, digit & mask);
        }
        gens.push_back(std::move(g));
    }
    return gens;
}

/// F_2-dimension of the unital subring generated by `gens` (all of R when it
/// equals s^2 m).  Spans monomials by breadth-first right multiplication.
inline std::size_t subring_dimension(const std::vector<RingElement>& gens, unsigned s, std::size_t m)
{
    using Vec = std::vector<std::uint64_t>;
    std::vector<std::pair<Vec, std::size_t>> basis; // reduced vector and its pivot bit
    std::vector<RingElement> queue;
    auto reduce = [&](Vec v) {
        for (const auto& [b, piv] : basis)
            if ((v[piv / 64] >> (piv % 64)) & 1U)
                for (std::size_t w = 0; w < v.size(); ++w)
                    v[w] ^= b[w];
        return v;
    };
    auto try_add = [&](const RingElement& x) {
        auto v = reduce(x.bits());
        for (std::size_t w = 0; w < v.size(); ++w)
            if (v[w]) {
                const std::size_t piv = w * 64 + static_cast<std::size_t>(std::countr_zero(v[w]));
                for (auto& [b, p] : basis)
                    if ((b[piv / 64] >> (piv % 64)) & 1U)
                        for (std::size_t k = 0; k < b.size(); ++k)
                            b[k] ^= v[k];
                basis.emplace_back(std::move(v), piv);
                queue.push_back(x);
                return;
            }
    };
    try_add(RingElement::one(s, m));
    for (std::size_t i = 0; i < queue.size(); ++i)
        for (const auto& g : gens) {
            auto y = queue[i] * g;
            try_add(y);
        }
    return basis.size();
}

inline bigint subring_size(const std::vector<RingElement>& gens, unsigned s, std::size_t m)
{
    return bigint(1) << subring_dimension(gens, s, m);
}

/// Element of EL_3(R), stored per component as a 3s x 3s matrix over F_2
/// whose s x s block (i, j) is the (i, j) entry in R.
class EL3Element {
public:
    EL3Element() = default;
    EL3Element(unsigned s, std::size_t m) : s_(s), c_(m, MatGF2::identity(3 * s)) {}
    explicit EL3Element(std::vector<MatGF2> comps) : s_(comps.empty() ? 0 : comps.front().dim() / 3), c_(std::move(comps))
    {
        for (const auto& x : c_)
            if (x.dim() != 3 * s_)
                throw std::invalid_argument("EL3Element: component size is not 3s");
    }

    static EL3Element identity(unsigned s, std::size_t m) { return EL3Element(s, m); }

    /// Id + r e_{ij}, i != j (0-based).
    static EL3Element elementary(unsigned i, unsigned j, const RingElement& r)
    {
        if (i == j || i > 2 || j > 2)
            throw std::invalid_argument("EL3Element::elementary: need i != j in [0, 3)");
        EL3Element e(r.s(), r.m());
        for (std::size_t c = 0; c < r.m(); ++c)
            e.c_[c].set_block(i, j, r[c]);
        return e;
    }

    unsigned s() const noexcept { return s_; }
    std::size_t m() const noexcept { return c_.size(); }
    const MatGF2& component(std::size_t c) const { return c_[c]; }
    MatGF2& component(std::size_t c) { return c_[c]; }
    const std::vector<MatGF2>& components() const noexcept { return c_; }

    RingElement entry(unsigned i, unsigned j) const
    {
        RingElement r(s_, m());
        for (std::size_t c = 0; c < m(); ++c)
            r[c] = c_[c].block(i, j, s_);
        return r;
    }
    void set_entry(unsigned i, unsigned j, const RingElement& r)
    {
        for (std::size_t c = 0; c < m(); ++c)
            c_[c].set_block(i, j, r[c]);
    }

    bool is_identity() const
    {
        return std::all_of(c_.begin(), c_.end(), [](const MatGF2& x) { return x.is_identity(); });
    }
    bool is_invertible() const
    {
        return std::all_of(c_.begin(), c_.end(), [](const MatGF2& x) { return x.is_invertible(); });
    }

    EL3Element inverse() const
    {
        EL3Element r = *this;
        for (auto& x : r.c_)
            x = x.inverse();
        return r;
    }

    friend bool operator==(const EL3Element& a, const EL3Element& b) { return a.c_ == b.c_; }

    friend EL3Element operator*(const EL3Element& a, const EL3Element& b)
    {
        if (a.s_ != b.s_ || a.m() != b.m())
            throw std::domain_error("EL3Element: shape mismatch");
        EL3Element r = a;
        for (std::size_t c = 0; c < a.m(); ++c)
            r.c_[c] = a.c_[c] * b.c_[c];
        return r;
    }

private:
    unsigned s_ = 0;
    std::vector<MatGF2> c_;
};

/// A generator of EL_3(R): Id + r e_{ij} with its label.
struct LabeledEL3 {
    std::string label;
    EL3Element element;
};

/// {Id + e_ij} followed by {Id + alpha_k e_ij} over the ring generators,
/// for the six ordered pairs i != j.  Size 18 + 6t.
inline std::vector<LabeledEL3> el3_generating_set(unsigned s, std::size_t m)
{
    static constexpr std::array<std::pair<unsigned, unsigned>, 6> pairs{
        {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}}};
    std::vector<LabeledEL3> out;
    auto add = [&](const RingElement& r, const std::string& name) {
        for (auto [i, j] : pairs)
            out.push_back({"e" + std::to_string(i + 1) + std::to_string(j + 1) + "(" + name + ")",
                           EL3Element::elementary(i, j, r)});
    };
    add(RingElement::one(s, m), "1");
    const auto gens = ring_generators(s, m);
    for (std::size_t k = 0; k < gens.size(); ++k)
        add(gens[k], k == 0 ? "alpha" : k == 1 ? "beta" : "gamma" + std::to_string(k - 1));
    return out;
}

/// |S-bar| = 18 + 6t without building anything.
inline bigint el3_generating_set_size(unsigned t) { return 18 + 6 * bigint(t); }

/// Random element of EL_3(R): a product of `length` random generators.
inline EL3Element random_el3(unsigned s, std::size_t m, Rng& rng, std::size_t length = 200)
{
    const auto gens = el3_generating_set(s, m);
    EL3Element x = EL3Element::identity(s, m);
    for (std::size_t i = 0; i < length; ++i)
        x = x * gens[rng.below(gens.size())].element;
    return x;
}

} // namespace altexp
