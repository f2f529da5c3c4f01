#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

#include "cube.hpp"

namespace altexp {

using rational = boost::multiprecision::cpp_rational;

/// Closed interval [lo, hi] of rationals known to contain a real number.
/// Results of every operation are rounded outward to dyadic rationals with
/// `bits` fractional bits, so sizes stay bounded and enclosure is kept.
class Interval {
public:
    static constexpr unsigned default_bits = 256;

    Interval() = default;
    Interval(rational v) : lo_(v), hi_(v) {} // NOLINT: implicit from exact values
    Interval(long v) : lo_(v), hi_(v) {}     // NOLINT
    Interval(rational lo, rational hi) : lo_(std::move(lo)), hi_(std::move(hi))
    {
        if (lo_ > hi_)
            throw std::invalid_argument("Interval: lo > hi");
    }

    const rational& lo() const noexcept { return lo_; }
    const rational& hi() const noexcept { return hi_; }
    rational width() const { return hi_ - lo_; }
    bool contains(const rational& x) const { return lo_ <= x && x <= hi_; }

    // Certain comparisons: true only when every point of the interval satisfies them.
    bool certainly_gt(const Interval& o) const { return lo_ > o.hi_; }
    bool certainly_ge(const Interval& o) const { return lo_ >= o.hi_; }
    bool certainly_lt(const Interval& o) const { return hi_ < o.lo_; }
    bool certainly_le(const Interval& o) const { return hi_ <= o.lo_; }

    friend Interval operator+(const Interval& a, const Interval& b) { return round({a.lo_ + b.lo_, a.hi_ + b.hi_}); }
    friend Interval operator-(const Interval& a, const Interval& b) { return round({a.lo_ - b.hi_, a.hi_ - b.lo_}); }
    friend Interval operator-(const Interval& a) { return {-a.hi_, -a.lo_}; }
    friend Interval operator*(const Interval& a, const Interval& b)
    {
        rational c[4] = {a.lo_ * b.lo_, a.lo_ * b.hi_, a.hi_ * b.lo_, a.hi_ * b.hi_};
        rational lo = c[0], hi = c[0];
        for (const auto& x : c) {
            lo = x < lo ? x : lo;
            hi = x > hi ? x : hi;
        }
        return round({lo, hi});
    }
    friend Interval operator/(const Interval& a, const Interval& b)
    {
        if (b.lo_ <= 0 && b.hi_ >= 0)
            throw std::domain_error("Interval: division by an interval containing 0");
        return a * Interval(1 / b.hi_, 1 / b.lo_);
    }

    /// Outward rounding to multiples of 2^-bits.
    static Interval round(const Interval& x, unsigned bits = default_bits)
    {
        // Small exact values stay exact.
        if (x.lo_ == x.hi_ && size_bits(x.lo_) <= 2 * bits)
            return x;
        const bigint scale = bigint(1) << bits;
        auto floor_div = [](const bigint& n, const bigint& d) {
            bigint q = n / d;
            if (n % d != 0 && ((n < 0) != (d < 0)))
                q -= 1;
            return q;
        };
        const rational l = x.lo_ * scale, h = x.hi_ * scale;
        const bigint fl = floor_div(numerator(l), denominator(l));
        const bigint ch = -floor_div(-numerator(h), denominator(h));
        Interval r;
        r.lo_ = rational(fl, scale);
        r.hi_ = rational(ch, scale);
        return r;
    }

    std::string to_string() const { return "[" + lo_.str() + ", " + hi_.str() + "]"; }

private:
    static std::size_t size_bits(const rational& v)
    {
        const bigint n = abs(numerator(v));
        return (n == 0 ? 0 : msb(n)) + msb(denominator(v));
    }

    rational lo_ = 0, hi_ = 0;
};

inline Interval pow(Interval x, unsigned k)
{
    Interval r(1L);
    while (k) {
        if (k & 1)
            r = r * x;
        x = x * x;
        k >>= 1;
    }
    return r;
}

/// sqrt of an interval of nonnegative rationals via integer square roots
/// of scaled numerators: floor(sqrt(p q 4^b)) / (q 2^b) <= sqrt(p/q).
inline Interval sqrt(const Interval& x, unsigned bits = Interval::default_bits)
{
    if (x.lo() < 0)
        throw std::domain_error("sqrt: negative interval");
    auto lower = [&](const rational& v) {
        const bigint p = numerator(v), q = denominator(v);
        const bigint n = p * q << (2 * bits);
        const bigint s = boost::multiprecision::sqrt(n);
        return rational(s, q << bits);
    };
    auto upper = [&](const rational& v) {
        const bigint p = numerator(v), q = denominator(v);
        const bigint n = p * q << (2 * bits);
        bigint s = boost::multiprecision::sqrt(n);
        if (s * s != n)
            s += 1;
        return rational(s, q << bits);
    };
    return Interval::round({lower(x.lo()), upper(x.hi())}, bits);
}

/// exp(x) for a rational x: Taylor series of e^|x| with the tail bounded by
/// a geometric series, inverted for negative x.
inline Interval exp(const rational& x, unsigned bits = Interval::default_bits)
{
    const rational a = x < 0 ? rational(-x) : x;
    Interval sum(1L), term(1L);
    const rational eps = rational(1, bigint(1) << (bits - 8));
    for (unsigned k = 1;; ++k) {
        term = term * Interval(a) / Interval(rational(k));
        sum = sum + term;
        // Remaining terms: term * sum_{j>=1} (a/(k+1))^j.
        if (a < k + 1) {
            const rational ratio = a / (k + 1);
            const rational tail = term.hi() * ratio / (1 - ratio);
            if (tail < eps) {
                Interval r = sum + Interval(rational(0), tail);
                return x < 0 ? Interval(1L) / r : r;
            }
        }
        if (k > 100000)
            throw std::runtime_error("exp: series did not settle");
    }
}

namespace detail {

/// 2 atanh(z) = ln((1+z)/(1-z)) for 0 <= z <= 1/2.
inline Interval two_atanh(const rational& z, unsigned bits)
{
    Interval sum(0L), power(z);
    const rational z2 = z * z;
    const rational eps = rational(1, bigint(1) << (bits - 8));
    for (unsigned k = 0;; ++k) {
        sum = sum + power / Interval(rational(2 * k + 1));
        power = power * Interval(z2);
        // Tail <= power / ((2k+3)(1 - z^2)).
        const rational tail = power.hi() / ((2 * k + 3) * (1 - z2));
        if (tail < eps)
            return (sum + Interval(rational(0), tail)) * Interval(2L);
    }
}

} // namespace detail

/// ln x for rational x > 0: x = 2^m y with y in [1, 2), then
/// ln y = 2 atanh((y-1)/(y+1)).
inline Interval log(const rational& x, unsigned bits = Interval::default_bits)
{
    if (x <= 0)
        throw std::domain_error("log: nonpositive argument");
    long m = 0;
    rational y = x;
    while (y >= 2) {
        y /= 2;
        ++m;
    }
    while (y < 1) {
        y *= 2;
        --m;
    }
    const Interval ln2 = detail::two_atanh(rational(1, 3), bits);
    return Interval(rational(m)) * ln2 + detail::two_atanh((y - 1) / (y + 1), bits);
}

} // namespace altexp
