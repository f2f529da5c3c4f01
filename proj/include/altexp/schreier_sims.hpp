#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cube.hpp"
#include "errors.hpp"
#include "perm.hpp"
#include "rng.hpp"

namespace altexp {

/// Base and strong generating set for a permutation group.
///
/// Built in two phases: random sifting fills the chain quickly, then a
/// deterministic pass sifts every Schreier generator at every level.  The
/// second phase is what makes the order exact; the first only saves restarts.
class StabilizerChain {
public:
    struct Level {
        point_t base;
        std::vector<Permutation> gens;
        std::vector<std::int32_t> orbit_pos; // -1 when not in the orbit
        std::vector<point_t> orbit;
        std::vector<Permutation> transversal; // transversal[k](base) == orbit[k]
    };

    StabilizerChain(std::vector<Permutation> gens, std::uint64_t seed = 1)
    {
        if (gens.empty())
            return;
        n_ = gens.front().size();
        for (const auto& g : gens)
            if (g.size() != n_)
                throw std::domain_error("StabilizerChain: generators act on different point counts");
        std::vector<Permutation> nontrivial;
        for (auto& g : gens)
            if (!g.is_identity())
                nontrivial.push_back(std::move(g));
        if (nontrivial.empty())
            return;
        add_level(first_moved(nontrivial.front()));
        levels_[0].gens = nontrivial;
        rebuild_orbit(0);
        for (const auto& g : nontrivial)
            insert_residue(g, 0);
        random_phase(nontrivial, seed);
        deterministic_phase();
    }

    const std::vector<Level>& levels() const noexcept { return levels_; }

    bigint order() const
    {
        bigint o = 1;
        for (const auto& l : levels_)
            o *= l.orbit.size();
        return o;
    }

    /// Sifts g; returns true when g lies in the group.
    bool contains(const Permutation& g) const
    {
        if (g.size() != n_ && !levels_.empty())
            return false;
        auto [r, j] = strip(g, 0);
        (void)j;
        return r.is_identity();
    }

private:
    static point_t first_moved(const Permutation& g)
    {
        for (std::size_t i = 0; i < g.size(); ++i)
            if (g(static_cast<point_t>(i)) != i)
                return static_cast<point_t>(i);
        return 0;
    }

    void add_level(point_t base)
    {
        Level l;
        l.base = base;
        levels_.push_back(std::move(l));
        this->rebuild_orbit(levels_.size() - 1);
    }

    void rebuild_orbit(std::size_t i)
    {
        auto& l = levels_[i];
        l.orbit.assign(1, l.base);
        l.orbit_pos.assign(n_, -1);
        l.orbit_pos[l.base] = 0;
        l.transversal.assign(1, Permutation::identity(n_));
        for (std::size_t k = 0; k < l.orbit.size(); ++k) {
            const point_t x = l.orbit[k];
            for (const auto& s : l.gens) {
                const point_t y = s(x);
                if (l.orbit_pos[y] < 0) {
                    l.orbit_pos[y] = static_cast<std::int32_t>(l.orbit.size());
                    l.orbit.push_back(y);
                    l.transversal.push_back(s * l.transversal[k]);
                }
            }
        }
    }

    /// Returns the residue and the level at which sifting stopped
    /// (levels_.size() when it passed through every level).
    std::pair<Permutation, std::size_t> strip(Permutation h, std::size_t from) const
    {
        for (std::size_t j = from; j < levels_.size(); ++j) {
            const auto& l = levels_[j];
            const point_t x = h(l.base);
            if (l.orbit_pos[x] < 0)
                return {std::move(h), j};
            h = l.transversal[static_cast<std::size_t>(l.orbit_pos[x])].inverse() * h;
        }
        return {std::move(h), levels_.size()};
    }

    /// Adds a non-trivial residue of sifting starting at level `from`.
    /// Returns the lowest level whose generators changed, or nullopt.
    std::optional<std::size_t> insert_residue(const Permutation& g, std::size_t from)
    {
        auto [r, j] = strip(g, from);
        if (r.is_identity())
            return std::nullopt;
        if (j == levels_.size())
            add_level(first_moved(r));
        for (std::size_t l = from; l <= j; ++l) {
            levels_[l].gens.push_back(r);
            rebuild_orbit(l);
        }
        return j;
    }

    void random_phase(const std::vector<Permutation>& gens, std::uint64_t seed)
    {
        Rng rng(seed);
        std::vector<Permutation> pool = gens;
        while (pool.size() < 10)
            pool.push_back(gens[pool.size() % gens.size()]);
        Permutation acc = Permutation::identity(n_);
        int quiet = 0;
        for (int iter = 0; quiet < 30 && iter < 5000; ++iter) {
            const auto a = rng.below(pool.size());
            auto b = rng.below(pool.size() - 1);
            if (b >= a)
                ++b;
            pool[a] = pool[a] * pool[b];
            acc = acc * pool[a];
            if (iter < 20)
                continue;
            if (insert_residue(acc, 0))
                quiet = 0;
            else
                ++quiet;
        }
    }

    void deterministic_phase()
    {
        std::ptrdiff_t i = static_cast<std::ptrdiff_t>(levels_.size()) - 1;
        while (i >= 0) {
            bool restarted = false;
            const auto li = static_cast<std::size_t>(i);
            for (std::size_t k = 0; k < levels_[li].orbit.size() && !restarted; ++k) {
                for (std::size_t gi = 0; gi < levels_[li].gens.size(); ++gi) {
                    const auto& l = levels_[li];
                    const point_t x = l.orbit[k];
                    const auto& s = l.gens[gi];
                    const point_t y = s(x);
                    Permutation h = l.transversal[static_cast<std::size_t>(l.orbit_pos[y])].inverse() * s *
                                    l.transversal[k];
                    if (h.is_identity())
                        continue;
                    if (auto j = insert_residue(h, li + 1)) {
                        i = static_cast<std::ptrdiff_t>(*j);
                        restarted = true;
                        break;
                    }
                }
            }
            if (!restarted)
                --i;
        }
    }

    std::size_t n_ = 0;
    std::vector<Level> levels_;
};

/// Exact order of the group generated by `gens`.  Throws limit_exceeded when
/// the point count is above `point_limit`.
inline bigint group_order(const std::vector<Permutation>& gens, std::size_t point_limit = 10000,
                          std::uint64_t seed = 1)
{
    if (gens.empty())
        return 1;
    if (gens.front().size() > point_limit)
        throw limit_exceeded("group_order: " + std::to_string(gens.front().size()) +
                             " points exceeds the limit of " + std::to_string(point_limit));
    return StabilizerChain(gens, seed).order();
}

inline bigint factorial(unsigned n)
{
    bigint f = 1;
    for (unsigned i = 2; i <= n; ++i)
        f *= i;
    return f;
}

} // namespace altexp
