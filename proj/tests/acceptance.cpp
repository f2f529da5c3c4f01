// One line per acceptance criterion; exit status 1 if any fails.

#include <altexp/verify.hpp>

#include <cstdio>
#include <iostream>

using namespace altexp;

namespace {

struct Criterion {
    int id;
    const char* what;
    double limit_s;
    std::function<void(Report&, const SuiteOptions&)> run;
};

} // namespace

int main(int argc, char** argv)
{
    SuiteOptions opt;
    bool json = false;
    for (int i = 1; i < argc; ++i)
        json = json || std::string(argv[i]) == "--json";

    const std::vector<Criterion> all{
        {1, "certified constants", 1, [](Report& r, const SuiteOptions&) { suite_certify(r); }},
        {2, "generation", 120, [](Report& r, const SuiteOptions&) { suite_generation(r); }},
        {3, "GEM width", 60, suite_gem},
        {4, "words in E", 600, suite_words},
        {5, "exact averaging", 60, suite_walk_exact},
        {6, "Monte Carlo walk and urns", 600, suite_walk_mc},
        {7, "characters", 120, [](Report& r, const SuiteOptions&) { suite_characters(r); }},
        {8, "spectral", 300, suite_spectral},
        {9, "window factors", 60, suite_blocks},
    };

    bool all_ok = true;
    Report combined;
    for (const auto& c : all) {
        Report rep;
        const auto t0 = std::chrono::steady_clock::now();
        c.run(rep, opt);
        const double s = detail::seconds_since(t0);
        const bool ok = !rep.any_fail() && s < c.limit_s;
        all_ok = all_ok && ok;
        std::printf("criterion %d %-28s %s  (%zu pass, %zu fail, %zu reported; %.2f s of %.0f s)\n", c.id, c.what,
                    ok ? "PASS" : "FAIL", rep.count(Verdict::pass), rep.count(Verdict::fail),
                    rep.count(Verdict::reported_only), s, c.limit_s);
        for (const auto& r : rep.records())
            if (r.verdict != Verdict::pass)
                std::printf("    %-14s %s = %s\n", verdict_name(r.verdict), r.name.c_str(), r.value.dump().c_str());
        std::fflush(stdout);
        for (auto& r : rep.records())
            combined.add(r);
    }
    if (json)
        std::cout << combined.to_json().dump(2) << '\n';
    return all_ok ? 0 : 1;
}
