#include <gtest/gtest.h>
#include <numeric>
#include <set>

#include <altexp/random_perm.hpp>
#include <altexp/words.hpp>

using namespace altexp;

namespace {

void expect_routes(const CubeGeometry& g, const Permutation& sigma)
{
    auto w = grid_route(g, sigma);
    ASSERT_EQ(w.size(), 4 * g.dim() - 5);
    for (std::size_t l = 0; l < sigma.size(); ++l) {
        const auto y = w.apply(g, g.point_on_line(0, l, 0));
        ASSERT_EQ(y, g.point_on_line(0, sigma(static_cast<point_t>(l)), 0)) << "face point " << l;
    }
}

} // namespace

TEST(GridRoute, IdentityGivesIdentityLetters)
{
    auto g = CubeGeometry::from_side(7, 6);
    auto w = grid_route(g, Permutation::identity(g.lines_per_axis()));
    ASSERT_EQ(w.size(), 19u);
    for (const auto& l : w.letters)
        EXPECT_TRUE(l.is_identity());
}

TEST(GridRoute, AxisPattern)
{
    auto g = CubeGeometry::from_side(7, 6);
    Rng rng(1);
    auto w = grid_route(g, random_permutation(g.lines_per_axis(), rng));
    // 0-based axes of E1 E2 E1 E3 E1 E4 E1 E5 E1 E6 E1 E5 E1 E4 E1 E3 E1 E2 E1.
    std::vector<unsigned> expected{0, 1, 0, 2, 0, 3, 0, 4, 0, 5, 0, 4, 0, 3, 0, 2, 0, 1, 0};
    EXPECT_EQ(w.axes(), expected);
}

TEST(GridRoute, SmallCubesExact)
{
    Rng rng(2);
    for (unsigned d = 2; d <= 4; ++d)
        for (std::uint64_t K : {3u, 5u, 7u}) {
            auto g = CubeGeometry::from_side(K, d);
            for (int t = 0; t < 5; ++t)
                expect_routes(g, random_permutation(g.lines_per_axis(), rng));
        }
}

TEST(GridRoute, FullCubeRandomFace)
{
    auto g = CubeGeometry::from_side(7, 6);
    Rng rng(3);
    for (int t = 0; t < 3; ++t)
        expect_routes(g, random_permutation(g.lines_per_axis(), rng));
}

TEST(GridRoute, PointFormRejectsOffFace)
{
    auto g = CubeGeometry::from_side(3, 2);
    auto p = Permutation::from_cycles(9, {{0, 1}});
    EXPECT_THROW(grid_route_points(g, p), std::invalid_argument);
    auto q = Permutation::from_cycles(9, {{0, 3, 6}});
    auto w = grid_route_points(g, q);
    EXPECT_EQ(w.apply(g, 0), 3u);
    EXPECT_EQ(w.apply(g, 6), 0u);
}

TEST(ToSquare, Trivial)
{
    auto g = CubeGeometry::from_side(7, 3);
    auto on_face = tosquare_word(g, PointSet({0, 7, 14}, g.points()));
    ASSERT_TRUE(on_face);
    EXPECT_TRUE(on_face->gshift.is_identity());
    EXPECT_TRUE(on_face->hshift.is_identity());

    Rng rng(4);
    for (int t = 0; t < 50; ++t) {
        const point_t x = static_cast<point_t>(rng.below(g.points()));
        auto r = tosquare_word(g, PointSet({x}, g.points()));
        ASSERT_TRUE(r);
        EXPECT_EQ(g.coord(r->word().apply(g, x), 0), 0u);
    }
}

TEST(ToSquare, RandomSubsetsLandInFace)
{
    auto g = CubeGeometry::from_side(7, 6);
    Rng rng(5);
    std::size_t ok = 0;
    for (int t = 0; t < 20; ++t) {
        std::vector<point_t> all(g.points());
        std::iota(all.begin(), all.end(), 0);
        for (std::size_t i = 0; i < 2875; ++i)
            std::swap(all[i], all[i + rng.below(all.size() - i)]);
        all.resize(2875);
        PointSet b(all, g.points());
        auto r = tosquare_word(g, b);
        if (!r)
            continue;
        ++ok;
        auto w = r->word();
        std::set<point_t> images;
        for (auto x : b) {
            const auto y = w.apply(g, x);
            ASSERT_EQ(g.coord(y, 0), 0u);
            images.insert(y);
        }
        EXPECT_EQ(images.size(), b.size());
    }
    RecordProperty("success", static_cast<int>(ok));
}

TEST(CycleWord, Lengths)
{
    auto g = CubeGeometry::from_side(7, 6);
    EXPECT_EQ(cycle_word(g, 1).cycle.size(), 7u);
    EXPECT_EQ(cycle_word(g, 2).cycle.size(), 13u);
    EXPECT_EQ(largest_cycle_lines(7, 6), 479u);
    auto c = cycle_word(g, 479);
    EXPECT_EQ(c.cycle.size(), 2875u);
    EXPECT_LE(c.word.size(), 5u);
    auto p = c.word.materialize(g);
    EXPECT_EQ(cycle_type(p), (std::map<std::size_t, std::size_t>{{1, g.points() - 2875}, {2875, 1}}));
    EXPECT_TRUE(p.is_even());
    for (auto x : c.cycle)
        EXPECT_EQ(g.coord(x, 0), 0u);
    EXPECT_THROW(cycle_word(g, 0), std::invalid_argument);
    EXPECT_THROW(cycle_word(g, 2801), std::invalid_argument);
}

TEST(Conjugacy47, SelfAndRandom)
{
    auto g = CubeGeometry::from_side(7, 6);
    const auto c0 = cycle_word(g, 479);
    auto self = conjugacy_word47(g, c0.word.materialize(g), c0);
    ASSERT_TRUE(self);
    EXPECT_EQ(self->size(), c0.word.size());

    Rng rng(6);
    std::size_t ok = 0;
    for (int t = 0; t < 3; ++t) {
        auto c = random_cycle(g.points(), 2875, rng);
        auto w = conjugacy_word47(g, c, c0);
        if (!w)
            continue;
        ++ok;
        EXPECT_LE(w->size(), 47u);
        EXPECT_EQ(w->materialize(g), c);
    }
    RecordProperty("success", static_cast<int>(ok));
}
