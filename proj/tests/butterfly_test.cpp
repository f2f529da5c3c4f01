#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include <altexp/butterfly.hpp>
#include <altexp/random_perm.hpp>

using namespace altexp;

namespace {

void expect_valid(const Permutation& g, std::size_t rows, std::size_t cols)
{
    auto [a, b, c] = butterfly_factor(g, rows, cols);
    ASSERT_EQ(a * b * c, g);
    EXPECT_TRUE(preserves_rows(a, cols));
    EXPECT_TRUE(preserves_columns(b, cols));
    EXPECT_TRUE(preserves_rows(c, cols));
}

} // namespace

TEST(EdgeColor, RandomRegularMultigraphs)
{
    Rng rng(3);
    for (int t = 0; t < 200; ++t) {
        const std::size_t n = 1 + rng.below(30), d = 1 + rng.below(9);
        // Union of d random perfect matchings.
        std::vector<std::pair<std::size_t, std::size_t>> edges;
        for (std::size_t k = 0; k < d; ++k) {
            auto p = random_permutation(n, rng);
            for (std::size_t u = 0; u < n; ++u)
                edges.emplace_back(u, p(static_cast<point_t>(u)));
        }
        std::shuffle(edges.begin(), edges.end(), rng);
        auto col = edge_color_bipartite(n, edges, d);
        std::vector<std::vector<int>> seen_l(n, std::vector<int>(d, 0)), seen_r = seen_l;
        for (std::size_t e = 0; e < edges.size(); ++e) {
            ASSERT_LT(col[e], d);
            ASSERT_EQ(seen_l[edges[e].first][col[e]]++, 0);
            ASSERT_EQ(seen_r[edges[e].second][col[e]]++, 0);
        }
    }
}

TEST(EdgeColor, RejectsIrregular)
{
    EXPECT_THROW(edge_color_bipartite(2, {{0, 0}, {0, 1}}, 1), std::invalid_argument);
}

TEST(Butterfly, Trivial)
{
    auto id = Permutation::identity(6);
    auto [a, b, c] = butterfly_factor(id, 2, 3);
    EXPECT_TRUE(a.is_identity() && b.is_identity() && c.is_identity());

    auto col = Permutation::from_cycles(6, {{0, 3}, {1, 4}});
    auto f = butterfly_factor(col, 2, 3);
    EXPECT_TRUE(f.a.is_identity());
    EXPECT_EQ(f.b, col);
    EXPECT_TRUE(f.c.is_identity());
}

TEST(Butterfly, Exhaustive2x3)
{
    std::vector<point_t> img(6);
    std::iota(img.begin(), img.end(), 0);
    std::size_t count = 0;
    do {
        expect_valid(Permutation(img), 2, 3);
        ++count;
    } while (std::next_permutation(img.begin(), img.end()));
    EXPECT_EQ(count, 720u);
}

TEST(Butterfly, RandomGrids)
{
    Rng rng(4);
    for (auto [r, c] : std::vector<std::pair<std::size_t, std::size_t>>{{3, 3}, {1, 5}, {5, 1}, {7, 7}, {12, 5}, {49, 7}})
        for (int t = 0; t < 20; ++t)
            expect_valid(random_permutation(r * c, rng), r, c);
}

TEST(Butterfly, Exhaustive3x3)
{
    std::vector<point_t> img(9);
    std::iota(img.begin(), img.end(), 0);
    std::size_t count = 0;
    do {
        Permutation g(img);
        auto [a, b, c] = butterfly_factor(g, 3, 3);
        ASSERT_EQ(a * b * c, g);
        ASSERT_TRUE(preserves_rows(a, 3) && preserves_columns(b, 3) && preserves_rows(c, 3));
        ++count;
    } while (std::next_permutation(img.begin(), img.end()));
    EXPECT_EQ(count, 362880u);
}
