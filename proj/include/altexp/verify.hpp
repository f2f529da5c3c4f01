#pragma once

// Check suites behind `altgen verify` and the acceptance run.  Every suite
// appends records to a Report; an exception inside a check becomes a
// failed record rather than aborting the run.

#include <chrono>
#include <cmath>
#include <functional>
#include <map>
#include <set>
#include <string>

#include "blocks.hpp"
#include "certify.hpp"
#include "characters.hpp"
#include "gem.hpp"
#include "generating_set.hpp"
#include "graph.hpp"
#include "random_perm.hpp"
#include "randwalk.hpp"
#include "report.hpp"
#include "schreier_sims.hpp"
#include "spectral.hpp"
#include "words.hpp"

namespace altexp {

struct SuiteOptions {
    std::uint64_t seed = 1;
    std::size_t gem_samples = 1000;      // per (s, m)
    std::size_t grid_trials = 20;
    std::size_t cycle_trials = 25;
    std::size_t b1_samples = 10000;
    std::size_t hit_samples = 10000000;
    std::size_t urn_samples = 200000;
    std::size_t block_trials = 100;
};

namespace detail {

inline double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

/// Runs f; records it adds get its wall time, an exception becomes a failed record.
inline void guarded(Report& rep, const std::string& name, const std::function<void()>& f)
{
    const auto t0 = std::chrono::steady_clock::now();
    const std::size_t before = rep.records().size();
    try {
        f();
    } catch (const std::exception& e) {
        rep.add(name, "module error", e.what(), nullptr, Verdict::fail);
    }
    const double s = seconds_since(t0);
    auto& recs = rep.records();
    for (std::size_t i = before; i < recs.size(); ++i)
        recs[i].seconds = s;
}

inline std::string str(const rational& q) { return q.str(); }
/// Exact when short, else a 20-digit decimal enclosure for display.
inline std::string str(const Interval& x)
{
    if (x.lo() == x.hi() && x.lo().str().size() <= 40)
        return x.lo().str();
    auto dec = [](const rational& q) { return bigfloat(q).str(20); };
    return "[" + dec(x.lo()) + ", " + dec(x.hi()) + "]";
}

inline TupleState random_tuple(const CubeGeometry& g, std::size_t h, std::uint64_t seed)
{
    Rng rng(seed);
    std::set<point_t> pts;
    while (pts.size() < h)
        pts.insert(static_cast<point_t>(rng.below(g.points())));
    return TupleState(pts.begin(), pts.end());
}

} // namespace detail

// ---------------------------------------------------------------------------

inline void suite_certify(Report& rep)
{
    detail::guarded(rep, "certify.tree", [&] {
        const auto t0 = std::chrono::steady_clock::now();
        const auto D = derive_constants(false);
        const double s = detail::seconds_since(t0);
        for (const auto& c : D.checks()) {
            nlohmann::json bound = c.relation + " " + detail::str(c.rhs);
            if (c.relation == "in")
                bound = "in (" + detail::str(c.rhs) + ", " + detail::str(c.rhs2) + ")";
            rep.add("certify." + c.id, c.statement, detail::str(c.lhs), bound, verdict_of(c.holds));
        }
        rep.add("certify.revalidate", "every node and check recomputes to the stored value", D.revalidate(), true,
                verdict_of(D.revalidate()));
        rep.add("certify.time", "whole derivation in under one second", s < 1.0, true, verdict_of(s < 1.0));
    });
}

inline void suite_generation(Report& rep)
{
    detail::guarded(rep, "generation.alt49", [&] {
        const auto set = build_SN(1, 2);
        const bigint order = group_order(set.permutations());
        const bigint want = factorial(49) / 2;
        rep.add("generation.order_1_2", "S_N at s=1, d=2 generates Alt(49)", order.str(), want.str(),
                verdict_of(order == want));
    });
    detail::guarded(rep, "generation.cube_1_6", [&] {
        const auto set = build_SN(1, 6);
        std::size_t odd = 0;
        for (const auto& g : set.generators)
            odd += g.action->parity() == Parity::odd;
        rep.add("generation.even_1_6", "every generator at s=1, d=6 is even", odd, 0, verdict_of(odd == 0));
        const auto comps = component_count(LineBlockGraph::from_set(set));
        rep.add("generation.connected_1_6", "Schreier graph on 7^6 points is connected", comps, 1,
                verdict_of(comps == 1));
        rep.add("generation.size_1_6", "|S_N| at s=1, d=6", set.size(), 648, verdict_of(set.size() == 648));
    });
    detail::guarded(rep, "generation.size_7_6", [&] {
        const auto set = build_SN(7, 6);
        rep.add("generation.size_7_6", "|S_N| at s=7, d=6, sizes only", set.size(), 216,
                verdict_of(set.size() == 216 && set.regime == "certified-shape" && !set.materialized));
    });
}

inline void suite_gem(Report& rep, const SuiteOptions& o)
{
    for (unsigned s : {1u, 2u})
        for (std::size_t m : {1u, 2u}) {
            const std::string name = "gem.s" + std::to_string(s) + "_m" + std::to_string(m);
            detail::guarded(rep, name, [&] {
                Rng rng(o.seed * 1000 + s * 10 + m);
                std::size_t longest = 0, wrong = 0;
                for (std::size_t t = 0; t < o.gem_samples; ++t) {
                    const auto g = random_el3(s, m, rng);
                    const auto w = gem_factor(g, o.seed + t);
                    longest = std::max(longest, w.size());
                    bool ok = w.value(s, m) == g;
                    for (const auto& l : w.letters)
                        ok = ok && is_gem(l);
                    wrong += !ok;
                }
                rep.add(name, "random EL3 elements are products of at most 17 GEM letters",
                        {{"samples", o.gem_samples}, {"longest", longest}, {"mismatches", wrong}}, "<= 17",
                        verdict_of(wrong == 0 && longest <= 17));
            });
        }
}

inline void suite_words(Report& rep, const SuiteOptions& o)
{
    const auto g = CubeGeometry::from_side(7, 6);
    detail::guarded(rep, "words.grid_route", [&] {
        Rng rng(o.seed * 31 + 1);
        std::size_t longest = 0, wrong = 0;
        for (std::size_t t = 0; t < o.grid_trials; ++t) {
            const auto sigma = random_permutation(g.lines_per_axis(), rng);
            const auto w = grid_route(g, sigma);
            longest = std::max(longest, w.size());
            for (std::size_t l = 0; l < sigma.size(); ++l)
                if (w.apply(g, g.point_on_line(0, l, 0)) != g.point_on_line(0, sigma(static_cast<point_t>(l)), 0)) {
                    ++wrong;
                    break;
                }
        }
        rep.add("words.grid_route", "random face permutations route with 4d-5 = 19 letters",
                {{"trials", o.grid_trials}, {"longest", longest}, {"mismatches", wrong}}, "== 19",
                verdict_of(wrong == 0 && longest == 19));
    });
    detail::guarded(rep, "words.cycle_word", [&] {
        const auto c0 = cycle_word(g, 479);
        const auto a = largest_cycle_lines(7, 6);
        rep.add("words.cycle_word_479", "479 lines give a 2875-cycle", c0.cycle.size(), 2875,
                verdict_of(c0.cycle.size() == 2875 && is_single_cycle(c0.word.materialize(g), 2875)));
        rep.add("words.largest_cycle_lines", "largest admissible line count at K=7", a, nullptr, Verdict::reported_only);

        Rng rng(o.seed * 31 + 2);
        std::size_t ok = 0, wrong = 0, longest = 0;
        for (std::size_t t = 0; t < o.cycle_trials; ++t) {
            const auto c = random_cycle(g.points(), 2875, rng);
            const auto w = conjugacy_word47(g, c, c0);
            if (!w)
                continue;
            ++ok;
            longest = std::max(longest, w->size());
            wrong += !(w->size() <= 47 && w->materialize(g) == c);
        }
        rep.add("words.conjugacy47_exact", "successful conjugacy words equal the cycle with at most 47 letters",
                {{"successes", ok}, {"longest", longest}, {"mismatches", wrong}}, "<= 47",
                verdict_of(wrong == 0 && ok > 0));
        rep.add("words.conjugacy47_rate", "fraction of random 2875-cycles handled",
                static_cast<double>(ok) / static_cast<double>(o.cycle_trials), nullptr, Verdict::reported_only);

        std::size_t sq = 0;
        for (std::size_t t = 0; t < o.cycle_trials; ++t) {
            std::set<point_t> pts;
            while (pts.size() < 2875)
                pts.insert(static_cast<point_t>(rng.below(g.points())));
            sq += tosquare_word(g, PointSet(std::vector<point_t>(pts.begin(), pts.end()), g.points())).has_value();
        }
        rep.add("words.tosquare_rate", "fraction of random 2875-point sets moved into the face by two letters",
                static_cast<double>(sq) / static_cast<double>(o.cycle_trials), nullptr, Verdict::reported_only);
    });
}

inline void suite_walk_exact(Report& rep, const SuiteOptions& o)
{
    const auto g = CubeGeometry::from_side(7, 6);
    detail::guarded(rep, "walk.idempotent", [&] {
        Rng rng(o.seed * 17 + 3);
        std::vector<rational> p(g.points(), rational(0));
        for (int k = 0; k < 7; ++k)
            p[rng.below(g.points())] += rational(k + 1, 28);
        std::size_t bad = 0;
        for (unsigned a = 0; a < 6; ++a) {
            const auto once = axis_average(g, p, a);
            bad += !(axis_average(g, once, a) == once);
        }
        rep.add("walk.idempotent", "U_i U_i = U_i on a random rational distribution", bad, 0, verdict_of(bad == 0));
    });
    detail::guarded(rep, "walk.sweep_uniform", [&] {
        Rng rng(o.seed * 17 + 4);
        auto p = delta_distribution<rational>(g, static_cast<point_t>(rng.below(g.points())));
        for (unsigned a = 6; a-- > 0;)
            p = axis_average(g, std::move(p), a);
        const rational tv = tv_to_uniform(p);
        rep.add("walk.sweep_uniform", "U_1 ... U_6 maps a point mass to uniform", detail::str(tv), "0",
                verdict_of(tv == 0));
    });
    detail::guarded(rep, "walk.h1_uniform", [&] {
        Rng rng(o.seed * 17 + 5);
        const auto p = pattern_average(g, delta_distribution<rational>(g, static_cast<point_t>(rng.below(g.points()))), "Q2Q1");
        const rational tv = tv_to_uniform(p);
        rep.add("walk.h1_uniform_Q2Q1", "the one-point walk is uniform after Q2 Q1", detail::str(tv), "0",
                verdict_of(tv == 0));
    });
    detail::guarded(rep, "walk.doeblin", [&] {
        const auto r = doeblin_contraction_check(default_h(7), 7);
        rep.add("walk.doeblin_desk", "contraction bound at K=7, h=9 in exact arithmetic",
                {{"h", r.h}, {"stated_norm", detail::str(r.stated_norm)}, {"contraction", detail::str(r.contraction)}},
                nullptr, verdict_of(r.inequality && r.bound_holds()));
        const auto one = doeblin_contraction_check(1, 7);
        rep.add("walk.doeblin_h1_chain", "the chain inequality at h=1 (needs h^2 >= 2)", one.inequality, nullptr,
                Verdict::reported_only);
    });
    detail::guarded(rep, "decay", [&] {
        const auto desk = decay_factor(7, 6, default_h(7), bigint(2875));
        rep.add("decay.e3_desk", "decay factor at K=7, h=9, L=2875 against e^-3",
                {{"exp_bound", desk.exp_bound.hi.str(12)}, {"below_e3", desk.below_e3}}, desk.e_minus_3.lo.str(12),
                Verdict::reported_only);
        const std::uint64_t K = (std::uint64_t{1} << 21) - 1;
        const auto reg = large_k_regime(K, 6);
        const auto big = decay_factor(K, 6, reg.h, reg.L);
        rep.add("decay.e3_large_k", "factor <= exp bound <= e^-3 at K = 2^21 - 1", big.exp_bound.hi.str(12),
                desk.e_minus_3.lo.str(12), verdict_of(big.chain_ordered && big.below_e3));
    });
}

inline void suite_walk_mc(Report& rep, const SuiteOptions& o)
{
    const auto g = CubeGeometry::from_side(7, 6);
    detail::guarded(rep, "walk.B1", [&] {
        const double bound = 1 - 81.0 / 686;
        TupleState packed;
        for (point_t i = 0; i < 9; ++i)
            packed.push_back(i);
        const std::pair<const char*, TupleState> starts[] = {{"random", detail::random_tuple(g, 9, o.seed * 7 + 1)},
                                                             {"packed", packed}};
        for (const auto& [label, start] : starts) {
            WalkConfig cfg;
            cfg.seed = o.seed * 7 + 2;
            cfg.samples = o.b1_samples;
            cfg.pattern = "Q1";
            const auto f = tuple_walk(g, cfg, start).fraction_B1(0);
            rep.add(std::string("walk.B1_fraction_") + label, "P(B1 after Q1) >= 1 - 81/686 at K=7, h=9",
                    {{"value", f.value}, {"sigma", f.sigma}}, bound - 3 * f.sigma,
                    verdict_of(f.value >= bound - 3 * f.sigma));
        }
    });
    detail::guarded(rep, "walk.hit", [&] {
        WalkConfig cfg;
        cfg.seed = o.seed * 7 + 3;
        cfg.samples = o.hit_samples;
        cfg.target = {54321};
        const auto f = tuple_walk(g, cfg, {0}).hit_frequency();
        const double p = std::pow(7.0, -6);
        const double sigma = std::sqrt(p * (1 - p) / static_cast<double>(cfg.samples));
        rep.add("walk.hit_frequency_h1", "one-point walk hits a fixed point with frequency 7^-6",
                {{"value", f.value}, {"samples", cfg.samples}}, {{"p", p}, {"tolerance", 4 * sigma}},
                verdict_of(std::abs(f.value - p) <= 4 * sigma));
    });
    struct P {
        std::size_t l, k, p, q;
    };
    for (auto [l, k, p, q] : {P{10, 10, 10, 3}, P{5, 4, 8, 3}, P{20, 7, 30, 4}, P{3, 5, 9, 5}, P{50, 2, 40, 2}}) {
        const std::string name = "urn.l" + std::to_string(l) + "_k" + std::to_string(k) + "_p" + std::to_string(p) +
                                 "_q" + std::to_string(q);
        detail::guarded(rep, name, [&] {
            const auto e = urn_mc(l, k, p, q, o.urn_samples, o.seed * 7 + 4);
            const double b = static_cast<double>(urn_bound(l, k, p, q));
            rep.add(name, "P(at least q balls in box 0) <= C(k,q) C(lk-q,p-q)/C(lk,p)",
                    {{"value", e.value}, {"sigma", e.sigma}}, b, verdict_of(e.value <= b + 3 * e.sigma));
        });
    }
}

inline void suite_walk(Report& rep, const SuiteOptions& o)
{
    suite_walk_exact(rep, o);
    suite_walk_mc(rep, o);
}

inline void suite_characters(Report& rep)
{
    for (unsigned n = 1; n <= 8; ++n) {
        const std::string name = "characters.orthogonal_" + std::to_string(n);
        detail::guarded(rep, name, [&] {
            const bool ok = CharacterTable(n).orthogonal();
            rep.add(name, "row and column orthogonality of the character table", ok, true, verdict_of(ok));
        });
    }
    for (unsigned n = 8; n <= 14; ++n) {
        const std::string name = "roichman.N" + (n < 10 ? "0" + std::to_string(n) : std::to_string(n));
        detail::guarded(rep, name, [&] {
            std::size_t checked = 0, bad = 0;
            for (unsigned L = 6; L <= n; ++L) {
                const auto r = roichman_check(n, L);
                checked += r.checked;
                bad += r.violations.size();
            }
            rep.add(name, "one-cycle character bound for all lambda and 6 <= L <= N",
                    {{"checked", checked}, {"violations", bad}}, 0, verdict_of(bad == 0));
        });
    }
}

/// The regular representation of the group generated by gens, with S = G.
inline std::vector<Permutation> regular_representation(const std::vector<Permutation>& gens, std::size_t limit = 60)
{
    const auto cg = cayley_graph(gens, limit);
    const std::size_t n = cg.elements.size();
    std::map<std::vector<point_t>, std::size_t> idx;
    for (std::size_t i = 0; i < n; ++i)
        idx[cg.elements[i].image()] = i;
    std::vector<Permutation> out;
    for (const auto& h : cg.elements) {
        std::vector<point_t> img(n);
        for (std::size_t i = 0; i < n; ++i)
            img[i] = static_cast<point_t>(idx.at((cg.elements[i] * h).image()));
        out.emplace_back(std::move(img));
    }
    return out;
}

inline void suite_spectral(Report& rep, const SuiteOptions& o)
{
    detail::guarded(rep, "spectral.agree", [&] {
        Rng rng(o.seed * 13 + 1);
        std::vector<std::pair<std::string, SparseGraph>> graphs;
        graphs.emplace_back("schreier_1_2", SparseGraph::from_permutations(build_SN(1, 2).permutations()));
        graphs.emplace_back("schreier_1_3", SparseGraph::from_permutations(build_SN(1, 3).permutations()));
        for (std::size_t n : {100u, 500u, 1200u, 2000u})
            graphs.emplace_back("random2_" + std::to_string(n),
                                SparseGraph::from_permutations({random_permutation(n, rng), random_permutation(n, rng)}));
        for (const auto& [label, gr] : graphs) {
            const double d = spectral_gap_dense(gr).lambda1;
            const double p = spectral_gap_power(gr, 1e-12, o.seed).lambda1;
            const double l = spectral_gap_lanczos(gr, 1e-10, o.seed).lambda1;
            const double err = std::max(std::abs(p - d), std::abs(l - d));
            rep.add("spectral.agree_" + label, "matrix-free gap matches the dense gap",
                    {{"dense", d}, {"power", p}, {"lanczos", l}, {"vertices", gr.size()}}, 1e-6, verdict_of(err <= 1e-6));
        }
    });
    detail::guarded(rep, "spectral.schreier_1_6", [&] {
        const auto lb = LineBlockGraph::from_set(build_SN(1, 6));
        const auto a = spectral_gap_lanczos(lb, 1e-8, o.seed);
        const auto b = spectral_gap_lanczos(lb, 1e-8, o.seed + 1);
        rep.add("spectral.schreier_1_6_gap", "gap on 7^6 points is positive and seed independent",
                {{"seed_a", a.lambda1}, {"seed_b", b.lambda1}}, 1e-6,
                verdict_of(a.lambda1 > 0 && std::abs(a.lambda1 - b.lambda1) <= 1e-6));
        rep.add("spectral.schreier_1_6_value", "lambda1 of the normalized Schreier graph", a.lambda1, nullptr,
                Verdict::reported_only);
    });
    auto cyc = [](std::size_t n) {
        std::vector<point_t> c(n);
        for (std::size_t i = 0; i < n; ++i)
            c[i] = static_cast<point_t>(i);
        return Permutation::from_cycles(n, {c});
    };
    std::vector<std::pair<std::string, std::vector<Permutation>>> groups{
        {"Z2", {cyc(2)}},
        {"Z6", {cyc(6)}},
        {"Z60", {cyc(60)}},
        {"S3", {cyc(3), Permutation::from_cycles(3, {{0, 1}})}},
        {"D10", {cyc(10), Permutation::from_cycles(10, {{1, 9}, {2, 8}, {3, 7}, {4, 6}})}},
        {"A4", {Permutation::from_cycles(4, {{0, 1, 2}}), Permutation::from_cycles(4, {{0, 1}, {2, 3}})}},
        {"S4", {cyc(4), Permutation::from_cycles(4, {{0, 1}})}},
        {"A5", {Permutation::from_cycles(5, {{0, 1, 2}}), cyc(5)}},
    };
    for (const auto& [label, gens] : groups) {
        const std::string name = "kazhdan.full_set_" + label;
        detail::guarded(rep, name, [&] {
            const auto reg = regular_representation(gens);
            const std::size_t n = reg.size();
            // Exactly: every vertex sees every vertex twice, so A = J/n and lambda1 = 1.
            bool uniform = true;
            const auto gr = SparseGraph::from_permutations(reg);
            for (std::size_t v = 0; v < n && uniform; ++v) {
                std::vector<unsigned> seen(n, 0);
                gr.for_each_neighbor(v, [&](std::size_t u, unsigned mult) { seen[u] += mult; });
                uniform = std::all_of(seen.begin(), seen.end(), [](unsigned c) { return c == 2; });
            }
            const auto r = spectral_gap_dense(gr);
            const auto br = kazhdan_bracket(r.lambda1, max_displacement(reg, r.eigenvector));
            rep.add(name, "Kazhdan lower bound with S = G is sqrt 2", {{"order", n}, {"lower", br.lower}, {"upper", br.upper}},
                    std::sqrt(2.0), verdict_of(uniform && std::abs(br.lower - std::sqrt(2.0)) <= 1e-12 && br.lower <= br.upper + 1e-12));
        });
    }
}

inline void suite_blocks(Report& rep, const SuiteOptions& o)
{
    detail::guarded(rep, "blocks.alt50_m10", [&] {
        const auto L = block_layout(50, 10);
        Rng rng(o.seed * 19 + 1);
        std::size_t longest = 0, wrong = 0;
        for (std::size_t t = 0; t < o.block_trials; ++t) {
            const auto g = random_even_permutation(50, rng);
            const auto fs = block_factor(g, L);
            longest = std::max(longest, fs.size());
            auto prod = Permutation::identity(50);
            bool ok = true;
            for (const auto& f : fs) {
                std::vector<bool> in(50, false);
                for (auto x : L.windows.at(f.window))
                    in[x] = true;
                for (point_t x = 0; x < 50; ++x)
                    ok = ok && (in[x] || f.perm(x) == x);
                ok = ok && f.perm.is_even();
                prod = prod * f.perm;
            }
            wrong += !(ok && prod == g);
        }
        rep.add("blocks.alt50_m10", "random even permutations of 50 points are products of <= 18 window factors",
                {{"trials", o.block_trials}, {"longest", longest}, {"mismatches", wrong}}, L.bound(),
                verdict_of(wrong == 0 && longest <= 18 && L.bound() == 18));
    });
}

inline const std::vector<std::string>& suite_names()
{
    static const std::vector<std::string> names{"blocks", "certify", "characters", "gem",
                                                "generation", "spectral", "walk", "words"};
    return names;
}

/// Runs one named suite, or all of them for "all".  Unknown names throw.
inline void run_suite(Report& rep, const std::string& suite, const SuiteOptions& o)
{
    if (suite == "all") {
        for (const auto& s : suite_names())
            run_suite(rep, s, o);
        return;
    }
    if (suite == "certify")
        suite_certify(rep);
    else if (suite == "generation")
        suite_generation(rep);
    else if (suite == "gem")
        suite_gem(rep, o);
    else if (suite == "words")
        suite_words(rep, o);
    else if (suite == "walk")
        suite_walk(rep, o);
    else if (suite == "characters")
        suite_characters(rep);
    else if (suite == "spectral")
        suite_spectral(rep, o);
    else if (suite == "blocks")
        suite_blocks(rep, o);
    else
        throw std::invalid_argument("unknown suite: " + suite);
}

} // namespace altexp
