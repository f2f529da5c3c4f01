#pragma once

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "gf2.hpp"
#include "line_action.hpp"
#include "random_perm.hpp"
#include "ring.hpp"

namespace altexp {

/// pi_axis(h): component c of h acts on the c-th axis-parallel line.
inline LineAction embed_pi_action(const CubeGeometry& g, const FieldModel& f, unsigned axis, const EL3Element& h)
{
    if (axis >= g.dim())
        throw std::invalid_argument("embed_pi: axis out of range");
    if (h.m() != g.lines_per_axis() || f.K() != g.side())
        throw std::domain_error("embed_pi: element does not match the cube");
    LineAction a;
    a.axis = axis;
    std::map<MatGF2, std::uint32_t> ids;
    a.pattern_of_line.reserve(h.m());
    for (std::size_t c = 0; c < h.m(); ++c) {
        auto [it, fresh] = ids.try_emplace(h.component(c), static_cast<std::uint32_t>(a.patterns.size()));
        if (fresh)
            a.patterns.push_back(f.action_table(h.component(c)));
        a.pattern_of_line.push_back(it->second);
    }
    return a;
}

inline Permutation embed_pi(const CubeGeometry& g, const FieldModel& f, unsigned axis, const EL3Element& h)
{
    return embed_pi_action(g, f, axis, h).materialize(g);
}

/// pi_axis applied to Id + r e_ij without forming the EL_3 element.
inline LineAction embed_elementary(const CubeGeometry& g, const FieldModel& f, unsigned axis, unsigned i, unsigned j,
                                   const RingElement& r)
{
    if (r.m() != g.lines_per_axis() || f.K() != g.side())
        throw std::domain_error("embed_elementary: ring element does not match the cube");
    const unsigned s = f.s();
    LineAction a;
    a.axis = axis;
    std::map<MatGF2, std::uint32_t> ids;
    for (std::size_t c = 0; c < r.m(); ++c) {
        auto [it, fresh] = ids.try_emplace(r[c], static_cast<std::uint32_t>(a.patterns.size()));
        if (fresh) {
            auto m = MatGF2::identity(3 * s);
            m.set_block(i, j, r[c]);
            a.patterns.push_back(f.action_table(m));
        }
        a.pattern_of_line.push_back(it->second);
    }
    return a;
}

struct Generator {
    std::string label;
    unsigned axis = 0;
    std::string source; // the S-bar element it comes from
    std::optional<LineAction> action;
};

/// Labeled generators on the cube, with provenance.  When the cube is too
/// large only labels and counts are kept (`materialized` is false).
struct GeneratingSet {
    CubeGeometry geometry = CubeGeometry::from_side(2, 1);
    std::string model = "matrix-H";
    std::string regime = "desk";
    unsigned ring_t = 0;
    bool materialized = false;
    std::vector<Generator> generators;

    std::size_t size() const noexcept { return generators.size(); }

    Permutation permutation(std::size_t k) const
    {
        if (!generators.at(k).action)
            throw limit_exceeded("GeneratingSet: generators are not materialized for this cube");
        return generators[k].action->materialize(geometry);
    }

    std::vector<Permutation> permutations() const
    {
        std::vector<Permutation> out;
        for (std::size_t k = 0; k < size(); ++k)
            out.push_back(permutation(k));
        return out;
    }
};

/// "certified-shape" when s > 6, d = 6 and K > 10^6 (the large-field regime), else "desk".
inline std::string regime_of(unsigned s, unsigned d)
{
    const std::uint64_t k = (std::uint64_t{1} << (3 * s)) - 1;
    return (s > 6 && d == 6 && k > 1000000) ? "certified-shape" : "desk";
}

/// S_N = union over axes of pi_i(S-bar), S-bar built for R = Mat_s(F_2)^{K^{d-1}}.
inline GeneratingSet build_SN(unsigned s, unsigned d = 6)
{
    if (d < 2)
        throw std::invalid_argument("build_SN: need d >= 2");
    GeneratingSet set;
    set.geometry = CubeGeometry::from_field(s, d);
    set.regime = regime_of(s, d);
    const bigint m_big = set.geometry.point_count_big() / set.geometry.side();
    set.ring_t = ring_tuple_length(s, m_big);

    static constexpr std::array<std::pair<unsigned, unsigned>, 6> pairs{
        {{0, 1}, {0, 2}, {1, 0}, {1, 2}, {2, 0}, {2, 1}}};
    std::vector<std::string> ring_names{"1", "alpha", "beta"};
    for (unsigned k = 1; k <= set.ring_t; ++k)
        ring_names.push_back("gamma" + std::to_string(k));

    const bool can_materialize = set.geometry.materializable() && 3 * s <= FieldModel::max_table_bits;
    std::unique_ptr<FieldModel> field;
    std::vector<RingElement> ring;
    std::size_t m = 0;
    if (can_materialize) {
        field = std::make_unique<FieldModel>(s);
        m = set.geometry.lines_per_axis();
        ring.push_back(RingElement::one(s, m));
        for (auto& r : ring_generators(s, m))
            ring.push_back(std::move(r));
    }
    set.materialized = can_materialize;
    for (unsigned axis = 0; axis < d; ++axis)
        for (std::size_t k = 0; k < ring_names.size(); ++k)
            for (auto [i, j] : pairs) {
                Generator gen;
                gen.axis = axis;
                gen.source = "e" + std::to_string(i + 1) + std::to_string(j + 1) + "(" + ring_names[k] + ")";
                gen.label = "pi" + std::to_string(axis + 1) + ":" + gen.source;
                if (can_materialize)
                    gen.action = embed_elementary(set.geometry, *field, axis, i, j, ring[k]);
                set.generators.push_back(std::move(gen));
            }
    return set;
}

/// |S_N| = d (18 + 6t) from sizes alone.
inline bigint sn_size(unsigned s, unsigned d)
{
    auto g = CubeGeometry::from_field(s, d);
    return bigint(d) * el3_generating_set_size(ring_tuple_length(s, g.point_count_big() / g.side()));
}

/// Orbit of point 0 under the generators.
inline std::vector<point_t> orbit_of(const std::vector<Permutation>& gens, point_t start = 0)
{
    if (gens.empty())
        return {start};
    std::vector<bool> seen(gens.front().size(), false);
    std::vector<point_t> orbit{start};
    seen[start] = true;
    for (std::size_t i = 0; i < orbit.size(); ++i)
        for (const auto& g : gens) {
            auto y = g(orbit[i]);
            if (!seen[y]) {
                seen[y] = true;
                orbit.push_back(y);
            }
        }
    return orbit;
}

/// An element of <H> with no fixed points, found among random products.
/// Throws std::invalid_argument when H is not transitive.
inline Permutation fixed_point_free_element(const std::vector<Permutation>& gens, std::uint64_t seed = 1,
                                            std::size_t budget = 100000)
{
    if (gens.empty())
        throw std::invalid_argument("fixed_point_free_element: no generators");
    const std::size_t k = gens.front().size();
    if (orbit_of(gens).size() != k)
        throw std::invalid_argument("fixed_point_free_element: group is not transitive");
    for (const auto& g : gens)
        if (g.fixed_points() == 0)
            return g;
    Rng rng(seed);
    std::size_t word = 4;
    for (std::size_t tries = 0; tries < budget; ++tries) {
        Permutation x = Permutation::identity(k);
        for (std::size_t i = 0; i < word; ++i)
            x = x * gens[rng.below(gens.size())];
        if (x.fixed_points() == 0)
            return x;
        if (tries % 1000 == 999)
            word *= 2;
    }
    throw construction_failure("fixed_point_free_element: search budget exhausted");
}

/// The weak cycle analog for a pluggable transitive H: an element of E_2
/// (axis index 1) acting as gfree on the first `a` axis-2 lines of the face
/// {coord0 = 0} and trivially elsewhere; it moves K a points.
inline LineAction cycle_gen_element(const CubeGeometry& g, const Permutation& gfree, std::size_t a)
{
    if (g.dim() < 2)
        throw std::invalid_argument("cycle_gen_element: need d >= 2");
    const std::size_t face_lines = g.lines_per_axis() / g.side();
    if (a >= face_lines)
        throw std::invalid_argument("cycle_gen_element: a must be below K^{d-2}");
    std::vector<std::vector<point_t>> per_line(g.lines_per_axis(), Permutation::identity(g.side()).image());
    std::size_t used = 0;
    for (std::size_t l = 0; l < g.lines_per_axis() && used < a; ++l) {
        if (g.coord(g.point_on_line(1, l, 0), 0) != 0)
            continue;
        per_line[l] = gfree.image();
        ++used;
    }
    return LineAction::from_lines(1, per_line);
}

} // namespace altexp
