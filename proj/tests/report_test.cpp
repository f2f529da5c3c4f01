#include <gtest/gtest.h>

#include <altexp/verify.hpp>

using namespace altexp;

TEST(Report, SortedAndVerdicts)
{
    Report rep(nlohmann::json{{"seed", 3}});
    rep.add("b", "second", 2, 3, Verdict::pass);
    rep.add("a", "first", 1, nullptr, Verdict::reported_only);
    EXPECT_FALSE(rep.any_fail());
    const auto j = rep.to_json(false);
    EXPECT_EQ(j["records"][0]["name"], "a");
    EXPECT_EQ(j["records"][0]["verdict"], "reported-only");
    EXPECT_EQ(j["records"][1]["verdict"], "pass");
    EXPECT_EQ(j["config"]["seed"], 3);
    EXPECT_FALSE(j.contains("timing"));
    EXPECT_TRUE(rep.to_json().contains("timing"));
    rep.add("c", "third", 0, 1, verdict_of(false));
    EXPECT_TRUE(rep.any_fail());
    EXPECT_EQ(rep.count(Verdict::fail), 1u);
}

TEST(Report, ModuleErrorBecomesFailedRecord)
{
    Report rep;
    detail::guarded(rep, "boom", [] { throw construction_failure("no luck"); });
    ASSERT_EQ(rep.records().size(), 1u);
    EXPECT_EQ(rep.records()[0].verdict, Verdict::fail);
    EXPECT_EQ(rep.records()[0].value, "no luck");
    EXPECT_THROW(run_suite(rep, "nope", {}), std::invalid_argument);
}

TEST(Report, CheapSuitesPassAndRepeat)
{
    SuiteOptions o;
    o.block_trials = 10;
    Report a, b;
    for (auto* r : {&a, &b}) {
        run_suite(*r, "certify", o);
        run_suite(*r, "blocks", o);
        run_suite(*r, "characters", o);
    }
    EXPECT_FALSE(a.any_fail());
    EXPECT_EQ(a.to_json(false), b.to_json(false));
}
