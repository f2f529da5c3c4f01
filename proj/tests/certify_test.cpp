#include <gtest/gtest.h>

#include <chrono>
#include <cmath>

#include <altexp/certify.hpp>

using namespace altexp;

TEST(Interval, SqrtEnclosesAndIsTight)
{
    for (long v : {2L, 5L, 18L, 1000001L}) {
        auto s = sqrt(Interval(rational(v)));
        EXPECT_LE(s.lo() * s.lo(), rational(v));
        EXPECT_GE(s.hi() * s.hi(), rational(v));
        EXPECT_LT(s.width(), rational(1, bigint(1) << 250));
        EXPECT_NEAR(static_cast<double>(s.lo()), std::sqrt(static_cast<double>(v)), 1e-12);
    }
    auto four = sqrt(Interval(rational(4)));
    EXPECT_TRUE(four.contains(2));
}

TEST(Interval, ExpAndLogAgreeWithDouble)
{
    for (long n : {-3L, -1L, 0L, 2L, 7L}) {
        auto e = exp(rational(n));
        EXPECT_NEAR(static_cast<double>(e.lo()), std::exp(static_cast<double>(n)), 1e-12 * std::exp(static_cast<double>(n)));
        EXPECT_LT(e.width(), rational(1, bigint(1) << 200));
    }
    for (long x : {1L, 2L, 3L, 1000001L}) {
        auto l = log(rational(x));
        EXPECT_NEAR(static_cast<double>(l.lo()), std::log(static_cast<double>(x)), 1e-12);
        EXPECT_TRUE(l.lo() <= l.hi());
    }
    // exp(log x) encloses x.
    auto back = exp(rational(log(rational(7)).lo()));
    EXPECT_NEAR(static_cast<double>(back.lo()), 7.0, 1e-12);
}

TEST(Interval, ArithmeticIsOutward)
{
    Interval a(rational(1, 3), rational(1, 2)), b(rational(-2), rational(3));
    auto p = a * b;
    EXPECT_LE(p.lo(), rational(-1));
    EXPECT_GE(p.hi(), rational(3, 2));
    EXPECT_THROW(a / b, std::domain_error);
    EXPECT_THROW(Interval(rational(2), rational(1)), std::invalid_argument);
}

TEST(Rules, Examples)
{
    const auto r2 = rule_full_set();
    auto k17 = rule_kcball(r2, 17);
    EXPECT_TRUE(k17.contains(rational(k17.lo())));
    EXPECT_NEAR(static_cast<double>(k17.lo()), std::sqrt(2.0) / 17, 1e-15);
    auto k1 = rule_kcball(r2, 1);
    EXPECT_EQ(k1.lo(), r2.lo());
    EXPECT_EQ(k1.hi(), r2.hi());
    const rational n = 3 * rational(100 * 100, 2) + 60; // 3 n^2 / 2 + 60 at n = 100
    EXPECT_NEAR(static_cast<double>(rule_kcball(r2, n).lo()), std::sqrt(2.0) / 15060, 1e-15);
    EXPECT_THROW(rule_kcball(r2, 0), std::invalid_argument);

    auto a = rule_kcrel(Interval(rational(1, 70)), Interval(rational(1, 550)));
    EXPECT_EQ(a.lo(), rational(1, 77000));
    EXPECT_EQ(a.hi(), rational(1, 77000));
    auto sat = rule_kcrel(Interval(2L), Interval(2L));
    EXPECT_EQ(sat.lo(), rational(2));
    auto sl = rule_kcrel(Interval(rational(1, 10)), rule_kcball(r2, n));
    EXPECT_NEAR(static_cast<double>(sl.lo()), std::sqrt(2.0) / (20 * 15060.0), 1e-15);
    EXPECT_THROW(rule_kcrel(Interval(3L), Interval(1L)), std::invalid_argument);

    auto t5 = rule_reltconst(5);
    EXPECT_NEAR(static_cast<double>(t5.lo()), 1 / (std::sqrt(18.0) * (std::sqrt(5.0) + 3)), 1e-15);
}

TEST(ConstantTree, TreeHoldsAndRevalidates)
{
    const auto t0 = std::chrono::steady_clock::now();
    auto D = derive_constants();
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    EXPECT_LT(secs, 1.0);
    EXPECT_TRUE(D.all_hold());
    EXPECT_TRUE(D.revalidate());
    for (const auto& c : D.checks())
        EXPECT_TRUE(c.holds) << c.id;
    const double delta = static_cast<double>(D.node("K(Delta;S)").value.lo());
    EXPECT_NEAR(delta, 1 / (102 * (3 + std::sqrt(5.0))), 1e-15);

    auto j = D.to_json();
    EXPECT_EQ(j["nodes"].size(), D.nodes().size());
    EXPECT_EQ(j["checks"][0]["verdict"], "pass");
}

TEST(ConstantTree, TamperedNodeFailsRevalidation)
{
    auto D = derive_constants();
    auto copy = D;
    const_cast<DerivationNode&>(copy.node("K(Delta;GEM)")).value = Interval(rational(1, 10));
    EXPECT_FALSE(copy.revalidate());
}

TEST(DecayChain, Verdicts)
{
    auto D = derive_decay_chain(rational(1, 70));
    EXPECT_TRUE(D.all_hold());
    // 63/70 + 7/100 = 97/100.
    for (const auto& c : D.checks())
        if (c.id == "invariant vector") {
            EXPECT_EQ(c.lhs.lo(), rational(97, 100));
        }
    auto zero = derive_decay_chain(0);
    EXPECT_TRUE(zero.all_hold());
    // eps = 1/60 pushes 63 eps + 0.07 above 1.
    auto big = derive_decay_chain(rational(1, 60));
    EXPECT_FALSE(big.all_hold());
    EXPECT_THROW(derive_decay_chain(-1), std::invalid_argument);
}

TEST(DecayChain, ExponentFactor)
{
    auto f = decay_exponent(rational(1000000) + 1, 6);
    EXPECT_TRUE(f.certainly_ge(Interval(3L)));
    EXPECT_NEAR(static_cast<double>(f.lo()), std::sqrt(1000001.0) / (24 * std::log(1000001.0)), 1e-9);
    // Far below the regime the factor is under 3.
    EXPECT_TRUE(decay_exponent(rational(1000), 6).certainly_lt(Interval(3L)));
}
