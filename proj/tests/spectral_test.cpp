#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <set>
#include <sstream>

#include <altexp/random_perm.hpp>
#include <altexp/schreier_sims.hpp>
#include <altexp/spectral.hpp>

using namespace altexp;

namespace {

Permutation shift(std::size_t n, std::size_t k)
{
    std::vector<point_t> img(n);
    for (std::size_t x = 0; x < n; ++x)
        img[x] = static_cast<point_t>((x + k) % n);
    return Permutation(std::move(img));
}

SparseGraph cycle_graph(std::size_t n) { return SparseGraph::from_permutations({shift(n, 1)}); }

SparseGraph complete_graph(std::size_t m)
{
    std::vector<Permutation> gens;
    for (std::size_t k = 1; k < m; ++k)
        gens.push_back(shift(m, k));
    return SparseGraph::from_permutations(gens);
}

std::vector<Permutation> relabel(const std::vector<Permutation>& gens, const Permutation& r)
{
    std::vector<Permutation> out;
    for (const auto& g : gens)
        out.push_back(conjugate(g, r));
    return out;
}

} // namespace

TEST(SchreierGraph, SmallCases)
{
    auto c7 = cycle_graph(7);
    EXPECT_EQ(c7.size(), 7u);
    EXPECT_EQ(c7.degree(), 2u);
    EXPECT_TRUE(is_connected(c7));

    auto set = build_SN(1, 2);
    auto lb = LineBlockGraph::from_set(set);
    EXPECT_TRUE(is_connected(lb));
    EXPECT_TRUE(is_connected(SparseGraph::from_permutations(set.permutations())));

    auto two = SparseGraph::from_permutations({Permutation::from_cycles(6, {{0, 1, 2}, {3, 4, 5}})});
    EXPECT_EQ(component_count(two), 2u);
}

TEST(SchreierGraph, FullCubeConnected)
{
    auto lb = LineBlockGraph::from_set(build_SN(1, 6));
    EXPECT_EQ(lb.size(), 117649u);
    EXPECT_TRUE(is_connected(lb));
}

TEST(SchreierGraph, LineBlockMatchesExplicit)
{
    auto set = build_SN(1, 3);
    auto lb = LineBlockGraph::from_set(set);
    auto sp = SparseGraph::from_permutations(set.permutations());
    ASSERT_EQ(lb.degree(), sp.degree());
    Rng rng(3);
    std::vector<double> x(lb.size()), y1, y2;
    for (auto& v : x)
        v = rng.uniform();
    lb.apply(x, y1);
    sp.apply(x, y2);
    for (std::size_t i = 0; i < x.size(); ++i)
        EXPECT_NEAR(y1[i], y2[i], 1e-12);
}

TEST(CayleyGraph, Basics)
{
    auto z5 = cayley_graph({shift(5, 1)});
    EXPECT_EQ(z5.elements.size(), 5u);
    EXPECT_TRUE(is_connected(z5.graph));

    std::vector<Permutation> alt5{Permutation::from_cycles(5, {{0, 1, 2}}), Permutation::from_cycles(5, {{0, 1, 2, 3, 4}})};
    auto a5 = cayley_graph(alt5);
    EXPECT_EQ(a5.elements.size(), 60u);
    EXPECT_EQ(bigint(a5.elements.size()), group_order(alt5));
    EXPECT_TRUE(is_connected(a5.graph));

    EXPECT_THROW(cayley_graph(alt5, 30), limit_exceeded);
}

TEST(SpectralGap, AnalyticCases)
{
    for (std::size_t m : {3u, 5u, 8u}) {
        auto r = spectral_gap_dense(complete_graph(m));
        EXPECT_NEAR(r.lambda1, static_cast<double>(m) / (m - 1), 1e-12);
    }
    // n-cycle: second eigenvalue cos(2 pi / n).
    auto r = spectral_gap_dense(cycle_graph(9));
    EXPECT_NEAR(r.lambda1, 1 - std::cos(2 * M_PI / 9), 1e-12);

    auto two = SparseGraph::from_permutations({Permutation::from_cycles(6, {{0, 1, 2}, {3, 4, 5}})});
    EXPECT_NEAR(spectral_gap_dense(two).lambda1, 0.0, 1e-12);
    EXPECT_NEAR(spectral_gap_power(two).lambda1, 0.0, 1e-8);
    EXPECT_NEAR(spectral_gap_lanczos(two).lambda1, 0.0, 1e-8);
}

TEST(SpectralGap, MatrixFreeAgreesWithDense)
{
    Rng rng(5);
    std::vector<SparseGraph> graphs{cycle_graph(50), complete_graph(12),
                                    SparseGraph::from_permutations(build_SN(1, 2).permutations())};
    for (int t = 0; t < 6; ++t) {
        const std::size_t n = 20 + rng.below(1500);
        graphs.push_back(SparseGraph::from_permutations({random_permutation(n, rng), random_permutation(n, rng)}));
    }
    for (const auto& g : graphs) {
        const auto d = spectral_gap_dense(g);
        EXPECT_NEAR(spectral_gap_power(g, 1e-12).lambda1, d.lambda1, 1e-6) << g.size();
        EXPECT_NEAR(spectral_gap_lanczos(g, 1e-10).lambda1, d.lambda1, 1e-6) << g.size();
    }
}

TEST(SpectralGap, RelabelingInvariant)
{
    Rng rng(6);
    std::vector<Permutation> gens{random_permutation(200, rng), random_permutation(200, rng)};
    const auto base = spectral_gap_dense(SparseGraph::from_permutations(gens)).lambda1;
    for (int t = 0; t < 3; ++t) {
        auto r = random_permutation(200, rng);
        EXPECT_NEAR(spectral_gap_dense(SparseGraph::from_permutations(relabel(gens, r))).lambda1, base, 1e-10);
    }
}

TEST(SpectralGap, CheegerSandwich)
{
    Rng rng(7);
    for (int t = 0; t < 10; ++t) {
        const std::size_t n = 10 + rng.below(300);
        auto g = SparseGraph::from_permutations({random_permutation(n, rng), random_permutation(n, rng)});
        auto r = spectral_gap_dense(g);
        const double h = cheeger_sweep(g, r.eigenvector);
        EXPECT_LE(r.lambda1 / 2, h + 1e-12);
        EXPECT_LE(h, std::sqrt(2 * r.lambda1) + 1e-12);
    }
}

TEST(Expansion, ExactSmallGraphs)
{
    // Independent oracle: recursive enumeration of subsets.
    auto oracle = [](const SparseGraph& g) {
        const std::size_t n = g.size();
        double best = 1e9;
        std::vector<int> in(n, 0);
        std::function<void(std::size_t, std::size_t)> rec = [&](std::size_t i, std::size_t size) {
            if (i == n) {
                if (size == 0 || 2 * size > n)
                    return;
                std::set<std::size_t> bd;
                for (std::size_t v = 0; v < n; ++v)
                    if (in[v])
                        for (std::size_t k = 0; k < g.degree(); ++k)
                            if (!in[g.neighbors(v)[k]])
                                bd.insert(g.neighbors(v)[k]);
                best = std::min(best, static_cast<double>(bd.size()) / static_cast<double>(size));
                return;
            }
            in[i] = 0;
            rec(i + 1, size);
            in[i] = 1;
            rec(i + 1, size + 1);
        };
        rec(0, 0);
        return best;
    };
    EXPECT_DOUBLE_EQ(expansion_exact(cycle_graph(4)).value(), 1.0);
    EXPECT_DOUBLE_EQ(expansion_exact(complete_graph(4)).value(), oracle(complete_graph(4)));
    auto two = SparseGraph::from_permutations({Permutation::from_cycles(6, {{0, 1, 2}, {3, 4, 5}})});
    EXPECT_DOUBLE_EQ(expansion_exact(two).value(), 0.0);
    Rng rng(8);
    for (int t = 0; t < 10; ++t) {
        auto g = SparseGraph::from_permutations({random_permutation(4 + rng.below(12), rng)});
        EXPECT_DOUBLE_EQ(expansion_exact(g).value(), oracle(g));
    }
}

TEST(Kazhdan, RegularRepresentationOfWholeGroup)
{
    // S = G in the regular representation: lambda1 = 1, lower = sqrt 2.
    std::vector<Permutation> alt5{Permutation::from_cycles(5, {{0, 1, 2}}), Permutation::from_cycles(5, {{0, 1, 2, 3, 4}})};
    for (const auto& gens : {std::vector<Permutation>{shift(6, 1)}, alt5}) {
        auto cg = cayley_graph(gens);
        const std::size_t n = cg.elements.size();
        std::map<std::vector<point_t>, std::size_t> idx;
        for (std::size_t i = 0; i < n; ++i)
            idx[cg.elements[i].image()] = i;
        // Right multiplication by each element, via the element index.
        std::vector<Permutation> regular;
        for (const auto& h : cg.elements) {
            std::vector<point_t> img(n);
            for (std::size_t i = 0; i < n; ++i)
                img[i] = static_cast<point_t>(idx.at((cg.elements[i] * h).image()));
            regular.push_back(Permutation(std::move(img)));
        }
        auto r = spectral_gap_dense(SparseGraph::from_permutations(regular));
        auto br = kazhdan_bracket(r.lambda1, max_displacement(regular, r.eigenvector));
        EXPECT_NEAR(r.lambda1, 1.0, 1e-12);
        EXPECT_NEAR(br.lower, std::sqrt(2.0), 1e-12);
        EXPECT_LE(br.lower, br.upper + 1e-12);
        EXPECT_LE(br.upper, 2.0 + 1e-12);
    }
}

TEST(Kazhdan, CyclicThree)
{
    auto g = SparseGraph::from_permutations({shift(3, 1), shift(3, 2)});
    auto r = spectral_gap_dense(g);
    auto br = kazhdan_bracket(r.lambda1, max_displacement({shift(3, 1), shift(3, 2)}, r.eigenvector));
    EXPECT_NEAR(br.lower, std::sqrt(3.0), 1e-9);
    EXPECT_NEAR(br.upper, std::sqrt(3.0), 1e-9);
}

TEST(EdgeList, Format)
{
    std::ostringstream os;
    write_edge_list(os, cycle_graph(3));
    EXPECT_EQ(os.str(), "# vertices 3 degree 2\n0 1\n0 2\n1 2\n1 0\n2 0\n2 1\n");
}

TEST(SpectralGap, FullCubeReproducibleAcrossSeeds)
{
    auto lb = LineBlockGraph::from_set(build_SN(1, 6));
    const auto r1 = spectral_gap_lanczos(lb, 1e-8, 1);
    const auto r2 = spectral_gap_lanczos(lb, 1e-8, 2);
    EXPECT_GT(r1.lambda1, 0.0);
    EXPECT_NEAR(r1.lambda1, r2.lambda1, 1e-6);
    RecordProperty("lambda1", std::to_string(r1.lambda1));
}
