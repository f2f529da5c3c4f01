#pragma once

#include <map>
#include <mutex>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ring.hpp"

namespace altexp {

/// True when x is a generalized elementary matrix: identity diagonal and all
/// nonzero off-diagonal entries (as elements of R) in one row or one column.
inline bool is_gem(const EL3Element& x)
{
    const unsigned s = x.s();
    bool nz[3][3] = {};
    for (std::size_t c = 0; c < x.m(); ++c) {
        const auto& comp = x.component(c);
        for (unsigned i = 0; i < 3; ++i)
            for (unsigned j = 0; j < 3; ++j) {
                auto b = comp.block(i, j, s);
                if (i == j) {
                    if (!b.is_identity())
                        return false;
                } else if (!b.is_zero()) {
                    nz[i][j] = true;
                }
            }
    }
    for (unsigned k = 0; k < 3; ++k) {
        bool row_ok = true, col_ok = true;
        for (unsigned i = 0; i < 3; ++i)
            for (unsigned j = 0; j < 3; ++j)
                if (nz[i][j]) {
                    row_ok = row_ok && i == k;
                    col_ok = col_ok && j == k;
                }
        if (row_ok || col_ok)
            return true;
    }
    return false;
}

/// Ordered product of GEM letters: value() = letters[0] * letters[1] * ...
struct GemWord {
    std::vector<EL3Element> letters;
    std::size_t reduction_letters = 0;
    std::size_t corner_letters = 0;

    std::size_t size() const noexcept { return letters.size(); }

    EL3Element value(unsigned s, std::size_t m) const
    {
        EL3Element x = EL3Element::identity(s, m);
        for (const auto& l : letters)
            x = x * l;
        return x;
    }
};

namespace detail {

/// All of GL_s(F_2) in index order (s <= 3).
inline const std::vector<MatGF2>& gl_elements(unsigned s)
{
    static std::mutex mu;
    static std::map<unsigned, std::vector<MatGF2>> cache;
    std::lock_guard lock(mu);
    auto it = cache.find(s);
    if (it != cache.end())
        return it->second;
    std::vector<MatGF2> els;
    for (std::uint64_t idx = 0; idx < (std::uint64_t{1} << (s * s)); ++idx) {
        auto m = MatGF2::from_index(s, idx);
        if (m.is_invertible())
            els.push_back(m);
    }
    return cache.emplace(s, std::move(els)).first->second;
}

/// Commutator table for GL_s(F_2), s <= 3: u -> the first pair (v, w) in
/// index order with v w v^-1 w^-1 = u.
inline const std::map<std::uint64_t, std::pair<MatGF2, MatGF2>>& commutator_table(unsigned s)
{
    static std::mutex mu;
    static std::map<unsigned, std::map<std::uint64_t, std::pair<MatGF2, MatGF2>>> cache;
    const auto& els = gl_elements(s);
    std::lock_guard lock(mu);
    auto it = cache.find(s);
    if (it != cache.end())
        return it->second;
    std::map<std::uint64_t, std::pair<MatGF2, MatGF2>> table;
    std::vector<MatGF2> inv;
    for (const auto& e : els)
        inv.push_back(e.inverse());
    for (std::size_t a = 0; a < els.size(); ++a)
        for (std::size_t b = 0; b < els.size(); ++b) {
            auto u = els[a] * els[b] * inv[a] * inv[b];
            table.try_emplace(u.to_index(), els[a], els[b]);
        }
    return cache.emplace(s, std::move(table)).first->second;
}

inline std::optional<std::pair<MatGF2, MatGF2>> commutator_of(const MatGF2& u, std::uint64_t seed,
                                                              std::size_t budget = 1000000)
{
    const unsigned s = u.dim();
    if (s <= 3) {
        const auto& t = commutator_table(s);
        auto it = t.find(u.to_index());
        if (it == t.end())
            return std::nullopt;
        return it->second;
    }
    Rng rng(seed);
    for (std::size_t i = 0; i < budget; ++i) {
        auto v = MatGF2::random_invertible(s, rng);
        auto w = MatGF2::random_invertible(s, rng);
        if (v * w * v.inverse() * w.inverse() == u)
            return std::make_pair(v, w);
    }
    return std::nullopt;
}

/// X with t + X * P invertible, P stacked from `pool` (each s x s).  Tries
/// X = 0 first, then random X.  Returns one coefficient per pool entry.
inline std::optional<std::vector<MatGF2>> make_invertible(const MatGF2& t, const std::vector<MatGF2>& pool,
                                                          Rng& rng, bool randomize, std::size_t budget = 20000)
{
    const unsigned s = t.dim();
    std::vector<MatGF2> x(pool.size(), MatGF2(s));
    if (!randomize && t.is_invertible())
        return x;
    for (std::size_t k = 0; k < budget; ++k) {
        for (auto& xi : x)
            xi = MatGF2::random(s, rng);
        auto r = t;
        for (std::size_t i = 0; i < pool.size(); ++i)
            r = r + x[i] * pool[i];
        if (r.is_invertible())
            return x;
    }
    return std::nullopt;
}

/// Per-component output of the column reductions: the seven left factors
/// (each a GEM of a fixed per-step shape) and the remaining corner u with
/// L7 ... L1 g = diag(u, 1, 1).
struct ComponentReduction {
    std::vector<MatGF2> letters; // L1..L7 as 3s x 3s matrices
    MatGF2 corner;
};

inline MatGF2 gem_matrix(unsigned s, const std::vector<std::tuple<unsigned, unsigned, MatGF2>>& entries)
{
    auto m = MatGF2::identity(3 * s);
    for (const auto& [i, j, x] : entries)
        m.set_block(i, j, x);
    return m;
}

inline std::optional<ComponentReduction> reduce_component(const MatGF2& g0, unsigned s, Rng& rng, bool randomize)
{
    const auto I = MatGF2::identity(s);
    MatGF2 g = g0;
    ComponentReduction out;
    auto apply = [&](MatGF2 L) {
        g = L * g;
        out.letters.push_back(std::move(L));
    };
    auto blk = [&](unsigned i, unsigned j) { return g.block(i, j, s); };

    // Third column -> (0, 0, 1).
    {
        auto x = make_invertible(blk(0, 2), {blk(1, 2), blk(2, 2)}, rng, randomize);
        if (!x)
            return std::nullopt;
        apply(gem_matrix(s, {{0, 1, (*x)[0]}, {0, 2, (*x)[1]}}));
        const auto c1inv = blk(0, 2).inverse();
        apply(gem_matrix(s, {{1, 0, blk(1, 2) * c1inv}, {2, 0, (I + blk(2, 2)) * c1inv}}));
        apply(gem_matrix(s, {{0, 2, blk(0, 2)}}));
    }
    // Second column -> (0, 1, 0), keeping the third.
    {
        auto x = make_invertible(blk(0, 1), {blk(1, 1)}, rng, randomize);
        if (!x)
            return std::nullopt;
        apply(gem_matrix(s, {{0, 1, (*x)[0]}}));
        const auto pinv = blk(0, 1).inverse();
        apply(gem_matrix(s, {{1, 0, (I + blk(1, 1)) * pinv}, {2, 0, blk(2, 1) * pinv}}));
        apply(gem_matrix(s, {{0, 1, blk(0, 1)}}));
    }
    // First column below the corner.
    {
        const auto uinv = blk(0, 0).inverse();
        apply(gem_matrix(s, {{1, 0, blk(1, 0) * uinv}, {2, 0, blk(2, 0) * uinv}}));
    }
    out.corner = blk(0, 0);
    if (!(g == gem_matrix(s, {{0, 0, out.corner}})))
        throw construction_failure("gem_factor: column reduction did not reach diag(u, 1, 1)");
    return out;
}

} // namespace detail

/// (v, w) with u = v w v^-1 w^-1 componentwise.  Throws construction_failure
/// naming the first component that is not a commutator.
inline std::pair<RingElement, RingElement> commutator_decompose(const RingElement& u, std::uint64_t seed = 1)
{
    RingElement v(u.s(), u.m()), w(u.s(), u.m());
    for (std::size_t c = 0; c < u.m(); ++c) {
        auto vw = detail::commutator_of(u[c], seed + c);
        if (!vw)
            throw construction_failure("commutator_decompose: component " + std::to_string(c) +
                                       " is not a commutator in GL_" + std::to_string(u.s()) + "(F_2)");
        v[c] = vw->first;
        w[c] = vw->second;
    }
    return {v, w};
}

/// diag(w, w^-1, 1) as five GEMs (Whitehead), in product order.
inline std::vector<EL3Element> whitehead_letters(const RingElement& w)
{
    const auto one = RingElement::one(w.s(), w.m());
    const auto winv = w.inverse();
    return {EL3Element::elementary(0, 1, w), EL3Element::elementary(1, 0, winv),
            EL3Element::elementary(0, 1, w + one), EL3Element::elementary(1, 0, one),
            EL3Element::elementary(0, 1, one)};
}

/// Factors g into at most 17 GEMs: three letters clear the third column, three
/// the second, one the first, and the corner diag([v,w], 1, 1) is written as
/// D Y D^-1 Y^-1 with D = diag(v, 1, 1) and Y = diag(w, w^-1, 1); conjugating
/// Y's five letters by the diagonal D keeps them GEMs.
inline GemWord gem_factor(const EL3Element& g, std::uint64_t seed = 1, std::size_t steer_budget = 2000)
{
    const unsigned s = g.s();
    const std::size_t m = g.m();
    GemWord word;
    if (g.is_identity())
        return word;
    if (is_gem(g)) {
        word.letters.push_back(g);
        word.reduction_letters = 1;
        return word;
    }
    if (!g.is_invertible())
        throw std::invalid_argument("gem_factor: element is not invertible");

    // When no reduction of g_c yields a commutator corner, g_c E_c is reduced
    // instead for a random row-type E_c = E_c^-1; E_c then merges into the
    // final corner letter, which has the same shape.
    std::vector<std::vector<MatGF2>> letters(7, std::vector<MatGF2>(m));
    std::vector<MatGF2> right(m, MatGF2::identity(3 * s));
    RingElement u(s, m), v(s, m), w(s, m);
    for (std::size_t c = 0; c < m; ++c) {
        Rng rng = Rng::stream(seed, c);
        bool done = false;
        MatGF2 target = g.component(c);
        for (std::size_t attempt = 0; attempt < steer_budget && !done; ++attempt) {
            if (attempt > 0 && attempt % 16 == 0) {
                right[c] = detail::gem_matrix(s, {{0, 1, MatGF2::random(s, rng)}, {0, 2, MatGF2::random(s, rng)}});
                target = g.component(c) * right[c];
            }
            auto red = detail::reduce_component(target, s, rng, attempt > 0);
            if (!red)
                continue;
            auto vw = detail::commutator_of(red->corner, seed + c);
            if (!vw)
                continue;
            for (std::size_t k = 0; k < 7; ++k)
                letters[k][c] = red->letters[k];
            u[c] = red->corner;
            v[c] = vw->first;
            w[c] = vw->second;
            done = true;
        }
        if (!done)
            throw construction_failure("gem_factor: component " + std::to_string(c) +
                                       " has no reduction whose corner is a commutator");
    }

    // g E = L1^-1 ... L7^-1 diag(u, 1, 1); each L_k^-1 = L_k in characteristic 2.
    for (std::size_t k = 0; k < 7; ++k) {
        EL3Element L(letters[k]);
        if (!L.is_identity())
            word.letters.push_back(L);
    }
    word.reduction_letters = word.letters.size();
    const EL3Element E(right);
    std::vector<EL3Element> corner;
    if (!u.components().empty() && !(u == RingElement::one(s, m))) {
        EL3Element D = EL3Element::identity(s, m);
        D.set_entry(0, 0, v);
        const auto Dinv = D.inverse();
        const auto y = whitehead_letters(w);
        for (const auto& l : y)
            corner.push_back(D * l * Dinv);
        for (auto it = y.rbegin(); it != y.rend(); ++it)
            corner.push_back(it->inverse());
        corner.back() = corner.back() * E;
    } else {
        corner.push_back(E);
    }
    for (auto& l : corner)
        if (!l.is_identity())
            word.letters.push_back(std::move(l));
    word.corner_letters = word.letters.size() - word.reduction_letters;
    return word;
}

} // namespace altexp
