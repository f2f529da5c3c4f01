// altgen: command-line front end.  Exit status 0 when every check passes,
// 1 when some check fails, 2 on a configuration error.

#include <CLI11.hpp>

#include <altexp/altexp.hpp>

#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>

using namespace altexp;
using nlohmann::json;

namespace {

struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Options {
    unsigned s = 1, d = 6;
    std::size_t n = 0, h = 0;
    std::size_t base_m = 49, m = 10;
    std::uint64_t seed = 1;
    std::size_t samples = 0, trials = 0;
    double tol = 0;
    std::size_t limit = 2000000;
    std::string out = "-";
    std::string suite = "all";
    std::string method = "auto";
    std::string mode = "points";
    bool no_timing = false;
};

/// Writes to --out, or stdout for "-".
class Output {
public:
    explicit Output(const std::string& path)
    {
        if (path != "-") {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_)
                throw config_error("cannot open " + path + " for writing");
        }
    }
    std::ostream& os() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

void emit(const Options& o, const json& j)
{
    Output out(o.out);
    out.os() << j.dump(2) << '\n';
}

json config_echo(const Options& o, const std::string& cmd)
{
    return {{"command", cmd}, {"s", o.s}, {"d", o.d}, {"n", o.n}, {"h", o.h}, {"seed", o.seed},
            {"samples", o.samples}, {"tol", o.tol}, {"limit", o.limit}, {"suite", o.suite}};
}

void require_materialized(const GeneratingSet& set, const Options& o)
{
    if (!set.materialized)
        throw config_error("the cube for s=" + std::to_string(o.s) + ", d=" + std::to_string(o.d) +
                           " is too large to materialize");
    if (set.geometry.points() > o.limit)
        throw config_error("cube has " + std::to_string(set.geometry.points()) + " points, above --limit");
}

// ---------------------------------------------------------------------------

int cmd_construct(const Options& o)
{
    const auto set = build_SN(o.s, o.d);
    json j{{"schema_version", Report::schema_version},
           {"config", config_echo(o, "construct")},
           {"K", set.geometry.side()},
           {"points", set.geometry.point_count_big().str()},
           {"model", set.model},
           {"regime", set.regime},
           {"ring_t", set.ring_t},
           {"size", set.size()},
           {"materialized", set.materialized}};
    if (3 * o.s <= FieldModel::max_table_bits)
        j["field_generator"] = FieldModel(o.s).generator().hex_rows();
    json gens = json::array();
    for (const auto& g : set.generators)
        gens.push_back({{"label", g.label}, {"axis", g.axis}, {"source", g.source}});
    j["generators"] = gens;
    if (set.materialized) {
        // Components of the ring elements named in the sources, one bit-matrix per line.
        const std::size_t m = set.geometry.lines_per_axis();
        std::vector<std::pair<std::string, RingElement>> ring{{"1", RingElement::one(o.s, m)}};
        const auto rg = ring_generators(o.s, m);
        ring.emplace_back("alpha", rg.at(0));
        ring.emplace_back("beta", rg.at(1));
        for (std::size_t k = 2; k < rg.size(); ++k)
            ring.emplace_back("gamma" + std::to_string(k - 1), rg[k]);
        json rj = json::object();
        for (const auto& [name, r] : ring) {
            json comps = json::array();
            for (const auto& c : r.components()) {
                std::string row;
                for (const auto& x : c.hex_rows())
                    row += (row.empty() ? "" : ":") + x;
                comps.push_back(row);
            }
            rj[name] = comps;
        }
        j["ring"] = rj;
    }
    emit(o, j);
    return 0;
}

int cmd_construct_general(const Options& o)
{
    if (o.n == 0)
        throw config_error("construct-general needs --n");
    const auto fn = build_Fn(o.n, alt_base(o.base_m));
    json j{{"schema_version", Report::schema_version},
           {"config", config_echo(o, "construct-general")},
           {"base_m", o.base_m},
           {"degree", fn.degree},
           {"size", fn.size()}};
    if (o.n > o.base_m) {
        const auto L = block_layout(o.n, o.base_m);
        j["windows"] = L.windows.size();
        j["rows"] = L.b;
        j["row_length"] = L.a;
        j["factor_bound"] = L.bound();
    } else {
        j["windows"] = 1;
        j["factor_bound"] = 1;
    }
    json gens = json::array();
    for (std::size_t k = 0; k < fn.size(); ++k)
        gens.push_back({{"label", fn.labels[k]}, {"cycles", to_string(fn.perms[k])}});
    j["generators"] = gens;
    emit(o, j);
    return 0;
}

int cmd_schreier(const Options& o)
{
    const auto set = build_SN(o.s, o.d);
    require_materialized(set, o);
    const auto g = LineBlockGraph::from_set(set);
    Output out(o.out);
    write_edge_list(out.os(), g);
    std::cerr << "vertices " << g.size() << " degree " << g.degree() << " components " << component_count(g) << '\n';
    return 0;
}

int cmd_spectral(const Options& o)
{
    const auto set = build_SN(o.s, o.d);
    require_materialized(set, o);
    const auto g = LineBlockGraph::from_set(set);
    const double tol = o.tol > 0 ? o.tol : 1e-9;
    std::string method = o.method;
    if (method == "auto")
        method = g.size() <= 2000 ? "dense" : "lanczos";
    SpectralReport r;
    if (method == "dense")
        r = spectral_gap_dense(g);
    else if (method == "power")
        r = spectral_gap_power(g, tol, o.seed);
    else if (method == "lanczos")
        r = spectral_gap_lanczos(g, tol, o.seed);
    else
        throw config_error("unknown --method " + o.method);
    std::vector<LineAction> acts;
    for (const auto& gen : set.generators)
        acts.push_back(*gen.action);
    const auto br = kazhdan_bracket(r.lambda1, max_displacement(set.geometry, acts, r.eigenvector));
    json j{{"schema_version", Report::schema_version},
           {"config", config_echo(o, "spectral")},
           {"vertices", g.size()},
           {"degree", g.degree()},
           {"lambda1", r.lambda1},
           {"lambda2", r.lambda2},
           {"method", r.method},
           {"iterations", r.iterations},
           {"residual", r.residual},
           {"cheeger_sweep", cheeger_sweep(g, r.eigenvector)},
           {"kazhdan", {{"lower", br.lower}, {"upper", br.upper}}}};
    emit(o, j);
    return 0;
}

int cmd_mixing(const Options& o)
{
    const auto set = build_SN(o.s, o.d);
    const double tol = o.tol > 0 ? o.tol : 0.25;
    MixingReport r;
    if (o.mode == "sweeps") {
        if (!set.geometry.materializable() || set.geometry.points() > o.limit)
            throw config_error("cube too large for --limit");
        r = mixing_time_sweeps(set.geometry, tol);
    } else if (o.mode == "points") {
        require_materialized(set, o);
        r = mixing_time_points(LineBlockGraph::from_set(set), tol);
    } else {
        throw config_error("unknown --mode " + o.mode);
    }
    emit(o, {{"schema_version", Report::schema_version},
             {"config", config_echo(o, "mixing")},
             {"mode", o.mode},
             {"steps", r.steps},
             {"tv", r.tv}});
    return 0;
}

int cmd_characters(const Options& o)
{
    if (o.n == 0)
        throw config_error("characters needs --n");
    Output out(o.out);
    if (o.n <= 12) {
        CharacterTable(static_cast<unsigned>(o.n)).write_csv(out.os());
        return 0;
    }
    // Beyond full tables: the one-cycle classes only.
    out.os() << "partition,class,value\n";
    for (const auto& p : partitions(static_cast<unsigned>(o.n)))
        for (unsigned L = 1; L <= o.n; ++L) {
            Partition cls{L};
            cls.resize(o.n - L + 1, 1);
            out.os() << to_string(p) << ',' << to_string(cls) << ',' << mn_character(p, L) << '\n';
        }
    return 0;
}

int cmd_certify(const Options& o)
{
    const auto D = derive_constants(false);
    json j = D.to_json();
    j["schema_version"] = Report::schema_version;
    j["all_hold"] = D.all_hold();
    emit(o, j);
    return D.all_hold() ? 0 : 1;
}

// ---------------------------------------------------------------------------

int cmd_factor_gem(const Options& o)
{
    const std::size_t m = o.n ? o.n : 1, samples = o.samples ? o.samples : 1;
    Rng rng(o.seed);
    Report rep(config_echo(o, "factor gem"));
    json words = json::array();
    for (std::size_t t = 0; t < samples; ++t) {
        const auto g = random_el3(o.s, m, rng);
        const auto w = gem_factor(g, o.seed + t);
        bool exact = w.value(o.s, m) == g;
        json letters = json::array();
        for (const auto& l : w.letters) {
            exact = exact && is_gem(l);
            json comps = json::array();
            for (const auto& c : l.components())
                comps.push_back(c.hex_rows());
            letters.push_back(comps);
        }
        words.push_back({{"length", w.size()}, {"letters", letters}});
        rep.add("gem." + std::to_string(t), "product of at most 17 GEM letters equal to g", w.size(), 17,
                verdict_of(exact && w.size() <= 17));
    }
    json j = rep.to_json(!o.no_timing);
    j["words"] = words;
    emit(o, j);
    return rep.any_fail() ? 1 : 0;
}

int cmd_factor_butterfly(const Options& o)
{
    const std::size_t rows = o.n ? o.n : 7, cols = o.m;
    const std::size_t samples = o.samples ? o.samples : 1;
    Rng rng(o.seed);
    Report rep(config_echo(o, "factor butterfly"));
    for (std::size_t t = 0; t < samples; ++t) {
        const auto g = random_permutation(rows * cols, rng);
        const auto f = butterfly_factor(g, rows, cols);
        const bool ok = f.a * f.b * f.c == g && preserves_rows(f.a, cols) && preserves_columns(f.b, cols) &&
                        preserves_rows(f.c, cols);
        rep.add("butterfly." + std::to_string(t), "g = a b c with a, c row-preserving and b column-preserving",
                ok, true, verdict_of(ok));
    }
    emit(o, rep.to_json(!o.no_timing));
    return rep.any_fail() ? 1 : 0;
}

int cmd_factor_blocks(const Options& o)
{
    const std::size_t n = o.n ? o.n : 50, samples = o.samples ? o.samples : 1;
    const auto L = block_layout(n, o.m);
    Rng rng(o.seed);
    Report rep(config_echo(o, "factor blocks"));
    json out = json::array();
    for (std::size_t t = 0; t < samples; ++t) {
        const auto g = random_even_permutation(n, rng);
        const auto fs = block_factor(g, L);
        json factors = json::array();
        for (const auto& f : fs)
            factors.push_back({{"window", f.window}, {"cycles", to_string(f.perm)}});
        out.push_back({{"element", to_string(g)}, {"factors", factors}});
        rep.add("blocks." + std::to_string(t), "window factors within 3 ceil(n/m) + 3", fs.size(), L.bound(),
                verdict_of(fs.size() <= L.bound()));
    }
    json j = rep.to_json(!o.no_timing);
    j["factorizations"] = out;
    emit(o, j);
    return rep.any_fail() ? 1 : 0;
}

int cmd_factor_word47(const Options& o)
{
    const auto g = CubeGeometry::from_side(7, 6);
    const auto c0 = cycle_word(g, 479);
    const std::size_t samples = o.samples ? o.samples : 1;
    Rng rng(o.seed);
    Report rep(config_echo(o, "factor word47"));
    std::size_t ok = 0;
    for (std::size_t t = 0; t < samples; ++t) {
        const auto c = random_cycle(g.points(), c0.cycle.size(), rng);
        const auto w = conjugacy_word47(g, c, c0);
        const std::string name = "word47." + std::to_string(t);
        if (!w) {
            rep.add(name, "two-letter move into the face failed", false, nullptr, Verdict::reported_only);
            continue;
        }
        ++ok;
        rep.add(name, "word of at most 47 letters equal to the cycle", w->size(), 47,
                verdict_of(w->size() <= 47 && w->materialize(g) == c));
    }
    rep.add("word47.success_rate", "fraction of cycles handled", static_cast<double>(ok) / samples, nullptr,
            Verdict::reported_only);
    emit(o, rep.to_json(!o.no_timing));
    return rep.any_fail() ? 1 : 0;
}

int cmd_verify(const Options& o)
{
    SuiteOptions so;
    so.seed = o.seed;
    if (o.samples)
        so.hit_samples = o.samples;
    if (o.trials)
        so.cycle_trials = o.trials;
    const auto& names = suite_names();
    if (o.suite != "all" && std::find(names.begin(), names.end(), o.suite) == names.end())
        throw config_error("unknown --suite " + o.suite);
    Report rep(config_echo(o, "verify"));
    const auto t0 = std::chrono::steady_clock::now();
    run_suite(rep, o.suite, so);
    rep.set_total_seconds(std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    emit(o, rep.to_json(!o.no_timing));
    std::cerr << rep.count(Verdict::pass) << " pass, " << rep.count(Verdict::fail) << " fail, "
              << rep.count(Verdict::reported_only) << " reported-only\n";
    return rep.any_fail() ? 1 : 0;
}

} // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Explicit generators, words and certificates for alternating groups"};
    app.set_help_flag("--help", "print help and exit");
    app.require_subcommand(1);
    Options o;

    auto cube = [&](CLI::App* c) {
        c->add_option("--s", o.s, "field degree: K = 2^{3s} - 1")->check(CLI::Range(1u, 20u));
        c->add_option("--d", o.d, "cube dimension")->check(CLI::Range(2u, 12u));
    };
    auto common = [&](CLI::App* c) {
        c->add_option("--seed", o.seed, "random seed");
        c->add_option("--out", o.out, "output file, - for stdout");
        c->add_option("--limit", o.limit, "largest point set to materialize");
    };

    auto* construct = app.add_subcommand("construct", "generating set S_N as gens.json");
    cube(construct);
    common(construct);

    auto* general = app.add_subcommand("construct-general", "window generators for Alt(n)");
    general->add_option("--n", o.n, "degree")->required();
    general->add_option("--base-m", o.base_m, "base degree m")->check(CLI::Range(std::size_t{3}, std::size_t{1} << 20));
    common(general);

    auto* schreier = app.add_subcommand("schreier", "Schreier graph edge list");
    cube(schreier);
    common(schreier);

    auto* spectral = app.add_subcommand("spectral", "spectral gap and Kazhdan bracket");
    cube(spectral);
    common(spectral);
    spectral->add_option("--tol", o.tol, "eigenvalue tolerance");
    spectral->add_option("--method", o.method, "auto, dense, power or lanczos");

    auto* mixing = app.add_subcommand("mixing", "lazy walk mixing time");
    cube(mixing);
    common(mixing);
    mixing->add_option("--tol", o.tol, "total variation threshold");
    mixing->add_option("--mode", o.mode, "points (graph walk) or sweeps (U_1 ... U_d)");

    auto* chars = app.add_subcommand("characters", "character values as CSV");
    chars->add_option("--n", o.n, "symmetric group degree")->required()->check(CLI::Range(std::size_t{1}, std::size_t{40}));
    common(chars);

    auto* certify = app.add_subcommand("certify", "derivation tree of the constants");
    common(certify);

    auto* factor = app.add_subcommand("factor", "factor random elements");
    factor->require_subcommand(1);
    auto* fgem = factor->add_subcommand("gem", "EL3 elements into GEM letters");
    fgem->add_option("--s", o.s, "matrix size")->check(CLI::Range(1u, 3u));
    fgem->add_option("--n", o.n, "number of ring components m");
    auto* fbut = factor->add_subcommand("butterfly", "grid permutations into row, column, row");
    fbut->add_option("--n", o.n, "rows");
    fbut->add_option("--m", o.m, "columns");
    auto* fblk = factor->add_subcommand("blocks", "even permutations into window factors");
    fblk->add_option("--n", o.n, "degree");
    fblk->add_option("--m", o.m, "window size")->check(CLI::Range(std::size_t{3}, std::size_t{1} << 20));
    auto* fw47 = factor->add_subcommand("word47", "2875-cycles of the 7^6 cube as words in E");
    for (auto* c : {fgem, fbut, fblk, fw47}) {
        common(c);
        c->add_option("--samples", o.samples, "number of random elements");
        c->add_flag("--no-timing", o.no_timing, "omit timing from the report");
    }

    auto* verify = app.add_subcommand("verify", "run check suites into one report");
    common(verify);
    verify->add_option("--suite", o.suite, "all, blocks, certify, characters, gem, generation, spectral, walk or words");
    verify->add_option("--samples", o.samples, "Monte Carlo samples for the hitting estimate");
    verify->add_option("--trials", o.trials, "random cycles for the words suite");
    verify->add_option("--h", o.h, "tuple size (the walk suite uses the desk value 9)");
    verify->add_flag("--no-timing", o.no_timing, "omit timing from the report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }

    try {
        if (*construct)
            return cmd_construct(o);
        if (*general)
            return cmd_construct_general(o);
        if (*schreier)
            return cmd_schreier(o);
        if (*spectral)
            return cmd_spectral(o);
        if (*mixing)
            return cmd_mixing(o);
        if (*chars)
            return cmd_characters(o);
        if (*certify)
            return cmd_certify(o);
        if (*fgem)
            return cmd_factor_gem(o);
        if (*fbut)
            return cmd_factor_butterfly(o);
        if (*fblk)
            return cmd_factor_blocks(o);
        if (*fw47)
            return cmd_factor_word47(o);
        if (*verify)
            return cmd_verify(o);
    } catch (const config_error& e) {
        std::cerr << "altgen: " << e.what() << '\n';
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "altgen: " << e.what() << '\n';
        return 2;
    } catch (const limit_exceeded& e) {
        std::cerr << "altgen: " << e.what() << '\n';
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "altgen: " << e.what() << '\n';
        return 1;
    }
    return 2;
}
