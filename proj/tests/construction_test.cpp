#include <gtest/gtest.h>

#include <altexp/generating_set.hpp>
#include <altexp/schreier_sims.hpp>

using namespace altexp;

TEST(EmbedPi, IdentityAndShift)
{
    auto g = CubeGeometry::from_field(1, 2);
    FieldModel f(1);
    auto id = embed_pi(g, f, 0, EL3Element::identity(1, 7));
    EXPECT_TRUE(id.is_identity());

    // The primitive element on every axis-1 line: seven disjoint 7-cycles.
    EL3Element h(std::vector<MatGF2>(7, f.generator()));
    auto p = embed_pi(g, f, 0, h);
    EXPECT_EQ(cycle_type(p), (std::map<std::size_t, std::size_t>{{7, 7}}));
    for (point_t x = 0; x < g.points(); ++x)
        EXPECT_EQ(g.coord(p(x), 0), (g.coord(x, 0) + 1) % 7);
}

TEST(EmbedPi, Homomorphism)
{
    auto g = CubeGeometry::from_field(1, 3);
    FieldModel f(1);
    Rng rng(5);
    for (int t = 0; t < 100; ++t) {
        const unsigned axis = t % 3;
        auto a = random_el3(1, 49, rng, 30), b = random_el3(1, 49, rng, 30);
        EXPECT_EQ(embed_pi(g, f, axis, a * b), embed_pi(g, f, axis, a) * embed_pi(g, f, axis, b));
    }
}

TEST(EmbedPi, PreservesLines)
{
    auto g = CubeGeometry::from_field(1, 3);
    FieldModel f(1);
    Rng rng(6);
    auto p = embed_pi(g, f, 1, random_el3(1, 49, rng));
    for (point_t x = 0; x < g.points(); ++x)
        EXPECT_EQ(g.line_of(p(x), 1), g.line_of(x, 1));
}

TEST(BuildSN, Counts)
{
    EXPECT_EQ(build_SN(1, 6).size(), 648u);
    EXPECT_EQ(sn_size(1, 6), 648);
    auto big = build_SN(7, 6);
    EXPECT_EQ(big.size(), 216u);
    EXPECT_EQ(sn_size(7, 6), 216);
    EXPECT_FALSE(big.materialized);
    EXPECT_EQ(big.regime, "certified-shape");
    EXPECT_EQ(build_SN(1, 6).regime, "desk");
    EXPECT_THROW(big.permutation(0), limit_exceeded);
}

TEST(BuildSN, LabelsUnique)
{
    auto set = build_SN(1, 3);
    std::set<std::string> labels;
    for (const auto& g : set.generators)
        labels.insert(g.label);
    EXPECT_EQ(labels.size(), set.size());
    EXPECT_EQ(set.generators.front().label, "pi1:e12(1)");
}

TEST(BuildSN, GeneratorsAreEvenInvolutions)
{
    auto set = build_SN(2, 2);
    for (const auto& p : set.permutations()) {
        EXPECT_TRUE(p.is_even());
        EXPECT_TRUE((p * p).is_identity());
    }
}

TEST(BuildSN, GeneratesAlt49)
{
    auto set = build_SN(1, 2);
    EXPECT_EQ(group_order(set.permutations()), factorial(49) / 2);
}

TEST(BuildSN, FullCubeGeneratorsEven)
{
    auto set = build_SN(1, 6);
    ASSERT_TRUE(set.materialized);
    for (const auto& g : set.generators)
        EXPECT_EQ(g.action->parity(), Parity::even) << g.label;
}

TEST(FixedPointFree, CyclicAndSL3)
{
    auto cyc = Permutation::from_cycles(7, {{0, 1, 2, 3, 4, 5, 6}});
    EXPECT_EQ(fixed_point_free_element({cyc}).fixed_points(), 0u);

    FieldModel f(1);
    std::vector<Permutation> gens;
    // Transvections generate SL_3(F_2); none is fixed-point free on 7 points.
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j)
            if (i != j) {
                auto m = MatGF2::identity(3);
                m.set(i, j, true);
                gens.push_back(f.matrix_to_permutation(m));
            }
    auto x = fixed_point_free_element(gens, 3);
    EXPECT_EQ(x.fixed_points(), 0u);
    // Fixed-point-free elements of SL_3(F_2) on 7 points have order 7.
    EXPECT_EQ(cycle_type(x), (std::map<std::size_t, std::size_t>{{7, 1}}));

    auto t = Permutation::from_cycles(7, {{0, 1}});
    EXPECT_THROW(fixed_point_free_element({t}), std::invalid_argument);
}

TEST(CycleGen, MovesKaPoints)
{
    auto g = CubeGeometry::from_side(7, 3);
    auto cyc = Permutation::from_cycles(7, {{0, 1, 2, 3, 4, 5, 6}});
    auto p = cycle_gen_element(g, cyc, 3).materialize(g);
    EXPECT_EQ(g.points() - p.fixed_points(), 21u);
    for (auto x : p.support())
        EXPECT_EQ(g.coord(x, 0), 0u);
    EXPECT_THROW(cycle_gen_element(g, cyc, 7), std::invalid_argument);
}
