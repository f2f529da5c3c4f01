#include <gtest/gtest.h>

#include <altexp/blocks.hpp>
#include <altexp/random_perm.hpp>
#include <altexp/schreier_sims.hpp>

using namespace altexp;

TEST(BlockLayout, FiftyByTen)
{
    auto L = block_layout(50, 10);
    EXPECT_EQ(L.a, 5u);
    EXPECT_EQ(L.b, 10u);
    EXPECT_EQ(L.chunks(), 5u);
    EXPECT_EQ(L.bound(), 18u);
    for (const auto& w : L.windows)
        EXPECT_LE(w.size(), 10u);
}

TEST(BlockLayout, Refusals)
{
    EXPECT_THROW(block_layout(50, 4), std::invalid_argument);
    EXPECT_THROW(block_layout(51, 10), std::invalid_argument);
    EXPECT_NO_THROW(block_layout(50, 10));
}

TEST(BlockFactor, Trivial)
{
    Rng rng(1);
    auto g = random_even_permutation(10, rng);
    auto one = block_factor(g, 10);
    ASSERT_EQ(one.size(), 1u);
    EXPECT_EQ(one[0].perm, g);

    auto small = Permutation::from_cycles(50, {{0, 1, 2}});
    auto f = block_factor(small, 10);
    ASSERT_EQ(f.size(), 1u);
    EXPECT_EQ(f[0].perm, small);

    EXPECT_TRUE(block_factor(Permutation::identity(50), 10).empty());
    EXPECT_THROW(block_factor(Permutation::from_cycles(50, {{0, 1}}), 10), std::invalid_argument);
}

TEST(BlockFactor, RandomAlt50)
{
    Rng rng(2);
    const auto L = block_layout(50, 10);
    for (int t = 0; t < 100; ++t) {
        auto g = random_even_permutation(50, rng);
        auto fs = block_factor(g, L);
        ASSERT_LE(fs.size(), 18u);
        auto prod = Permutation::identity(50);
        for (const auto& f : fs) {
            EXPECT_TRUE(f.perm.is_even());
            for (auto x : f.perm.support())
                EXPECT_TRUE(std::binary_search(L.windows[f.window].begin(), L.windows[f.window].end(), x));
            prod = prod * f.perm;
        }
        EXPECT_EQ(prod, g);
    }
}

TEST(BlockFactor, RaggedGrids)
{
    Rng rng(3);
    for (std::size_t m : {5u, 6u, 7u, 9u, 12u})
        for (std::size_t n = m + 1; n <= m * (m / 2); n += 3)
            for (int t = 0; t < 10; ++t) {
                auto g = random_even_permutation(n, rng);
                auto fs = block_factor(g, m); // asserts product, parity, support and count
                EXPECT_LE(fs.size(), 3 * ((n + m - 1) / m) + 3) << n << " " << m;
            }
}

TEST(BuildFn, SizesAndGeneration)
{
    auto base = alt_base(5);
    EXPECT_EQ(group_order(base.perms), 60);
    EXPECT_EQ(build_Fn(5, base).size(), base.size());
    for (std::size_t n = 6; n <= 10; ++n) {
        auto fn = build_Fn(n, base);
        const auto L = block_layout(n, 5);
        EXPECT_LE(fn.size(), L.windows.size() * base.size());
        for (const auto& p : fn.perms)
            EXPECT_TRUE(p.is_even());
        EXPECT_EQ(group_order(fn.perms), factorial(n) / 2);
        EXPECT_EQ(group_order(build_sym(fn).perms), factorial(n));
    }
}

TEST(BuildFn, HundredOverFortyNine)
{
    auto fn = build_Fn(100, alt_base(49));
    const auto L = block_layout(100, 49);
    EXPECT_EQ(L.bound(), 12u);
    EXPECT_EQ(L.windows.size(), 6u);
    EXPECT_EQ(fn.degree, 100u);
}
