#include <gtest/gtest.h>

#include <altexp/characters.hpp>

#include <sstream>

using namespace altexp;

namespace {

// Standard Young tableaux by removing the largest entry from a corner.
long syt_count(const Partition& p)
{
    if (partition_size(p) <= 1)
        return 1;
    long s = 0;
    for (std::size_t i = 0; i < p.size(); ++i)
        if (i + 1 == p.size() || p[i + 1] < p[i]) {
            auto q = p;
            if (--q[i] == 0)
                q.pop_back();
            s += syt_count(q);
        }
    return s;
}

// Frobenius formula: chi_lambda(mu) = sum over sigma of sign(sigma) times the
// number of ways to give every part of mu to one of k variables so that the
// variable sums equal lambda + delta - sigma(delta).
long frobenius(const Partition& lambda, const Partition& mu)
{
    const std::size_t k = lambda.size();
    std::vector<std::size_t> perm(k);
    std::iota(perm.begin(), perm.end(), 0);
    long total = 0;
    do {
        int sign = 1;
        for (std::size_t i = 0; i < k; ++i)
            for (std::size_t j = i + 1; j < k; ++j)
                if (perm[i] > perm[j])
                    sign = -sign;
        std::vector<long> need(k);
        bool ok = true;
        for (std::size_t i = 0; i < k; ++i) {
            need[i] = static_cast<long>(lambda[i] + (k - 1 - i)) - static_cast<long>(k - 1 - perm[i]);
            ok = ok && need[i] >= 0;
        }
        if (!ok)
            continue;
        std::function<long(std::size_t)> ways = [&](std::size_t j) -> long {
            if (j == mu.size())
                return std::all_of(need.begin(), need.end(), [](long v) { return v == 0; });
            long w = 0;
            for (std::size_t i = 0; i < k; ++i)
                if (need[i] >= mu[j]) {
                    need[i] -= mu[j];
                    w += ways(j + 1);
                    need[i] += mu[j];
                }
            return w;
        };
        total += sign * ways(0);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return total;
}

} // namespace

TEST(Partitions, CountsAndConjugation)
{
    const std::vector<std::size_t> p{1, 1, 2, 3, 5, 7, 11, 15, 22, 30, 42, 56, 77, 101, 135};
    for (unsigned n = 0; n <= 14; ++n) {
        auto ps = partitions(n);
        EXPECT_EQ(ps.size(), p[n]);
        for (const auto& l : ps) {
            EXPECT_EQ(partition_size(l), n);
            EXPECT_EQ(conjugate(conjugate(l)), l);
        }
    }
    EXPECT_EQ(conjugate({3, 1}), (Partition{2, 1, 1}));
    EXPECT_THROW(conjugate({1, 2}), std::invalid_argument);
}

TEST(Dimension, HookLengthAgreesWithTableauxCount)
{
    for (unsigned n = 1; n <= 8; ++n)
        for (const auto& l : partitions(n))
            EXPECT_EQ(dimension(l), bigint(syt_count(l))) << to_string(l);
    EXPECT_EQ(dimension({20}), 1);
    EXPECT_EQ(dimension(Partition(20, 1)), 1);
    EXPECT_EQ(dimension({19, 1}), 19);
}

TEST(MnCharacter, KnownValues)
{
    for (unsigned n = 2; n <= 10; ++n)
        for (unsigned L = 1; L <= n; ++L) {
            EXPECT_EQ(mn_character({n}, L), 1);
            if (L >= 2 && L < n)
                EXPECT_EQ(mn_character({n - 1, 1}, L), static_cast<int>(n - L) - 1);
        }
    EXPECT_EQ(mn_character({11, 1}, 7), 4);
    EXPECT_THROW(mn_character({3}, 4), std::invalid_argument);
}

TEST(MnCharacter, AgreesWithFrobeniusFormula)
{
    for (unsigned n = 1; n <= 7; ++n) {
        CharacterTable t(n);
        const auto& ps = t.classes();
        for (std::size_t r = 0; r < ps.size(); ++r)
            for (std::size_t c = 0; c < ps.size(); ++c)
                EXPECT_EQ(t.value(r, c), bigint(frobenius(ps[r], ps[c]))) << to_string(ps[r]) << " at " << to_string(ps[c]);
    }
}

TEST(MnCharacter, ConjugateDualityAndDimensionBound)
{
    for (unsigned n = 6; n <= 14; ++n)
        for (const auto& l : partitions(n))
            for (unsigned L = 1; L <= n; ++L) {
                const auto chi = mn_character(l, L);
                EXPECT_EQ(mn_character(conjugate(l), L), (L % 2 ? 1 : -1) * chi);
                EXPECT_LE(abs(chi), dimension(l));
            }
}

TEST(CharacterTable, OrthogonalUpToEight)
{
    for (unsigned n = 1; n <= 8; ++n)
        EXPECT_TRUE(CharacterTable(n).orthogonal()) << n;
    // One-cycle columns of the full table match mn_character.
    CharacterTable t(6);
    for (std::size_t r = 0; r < t.classes().size(); ++r)
        EXPECT_EQ(t.value(r, 0), mn_character(t.classes()[r], 6));
}

TEST(CharacterTable, Csv)
{
    std::ostringstream os;
    CharacterTable(2).write_csv(os);
    EXPECT_EQ(os.str(), "partition,class,value\n2,2,1\n2,1+1,1\n1+1,2,-1\n1+1,1+1,1\n");
}

TEST(Roichman, NoViolationsOnDeskRange)
{
    std::size_t checked = 0;
    for (unsigned N = 8; N <= 14; ++N)
        for (unsigned L = 6; L <= N; ++L) {
            auto r = roichman_check(N, L);
            EXPECT_TRUE(r.violations.empty()) << N << ' ' << L << ' ' << to_string(r.violations.front().lambda);
            checked += r.checked;
        }
    RecordProperty("pairs_checked", std::to_string(checked));
    EXPECT_THROW(roichman_check(10, 5), std::invalid_argument);
    EXPECT_THROW(roichman_check(10, 11), std::invalid_argument);
}

TEST(Decay, Regimes)
{
    auto one = decay_factor(7, 6, 0, 2875);
    EXPECT_LE(one.factor.lo, 1);
    EXPECT_GE(one.factor.hi, 1);

    auto desk = decay_factor(7, 6, 9, 2875);
    EXPECT_TRUE(desk.chain_ordered);
    EXPECT_FALSE(desk.below_e3);
    EXPECT_NEAR(static_cast<double>(desk.factor.lo), std::pow(1 - 9.0 / 117649, 2870 / 4.0), 1e-12);

    const std::uint64_t K = (std::uint64_t{1} << 21) - 1;
    const auto reg = large_k_regime(K, 6);
    auto big = decay_factor(K, 6, reg.h, reg.L);
    EXPECT_TRUE(big.chain_ordered);
    EXPECT_TRUE(big.below_e3);
}
