#pragma once

#include <json.hpp>

#include <stdexcept>
#include <string>
#include <vector>

#include "interval.hpp"

namespace altexp {

enum class Rule { axiom, full_set, kcball, kcrel, relTconst, composition };

inline const char* rule_name(Rule r)
{
    switch (r) {
    case Rule::axiom: return "axiom";
    case Rule::full_set: return "full-set";
    case Rule::kcball: return "KCball";
    case Rule::kcrel: return "KCrel";
    case Rule::relTconst: return "relTconst";
    case Rule::composition: return "composition";
    }
    return "?";
}

// Rules, applied verbatim (no clamping to 2).

/// K(G;S) >= K(G;S') / k when S' lies in the k-th ball of S.
inline Interval rule_kcball(const Interval& s_prime, const rational& k)
{
    if (k < 1)
        throw std::invalid_argument("rule_kcball: need k >= 1");
    return s_prime / Interval(k);
}

/// K(G;S) >= 1/2 K(G,H;S) K(G;S u H).
inline Interval rule_kcrel(const Interval& rel, const Interval& uni)
{
    const Interval zero(0L), two(2L);
    if (!rel.certainly_gt(zero) || !uni.certainly_gt(zero) || rel.hi() > 2 || uni.hi() > 2)
        throw std::invalid_argument("rule_kcrel: inputs must lie in (0, 2]");
    return Interval(rational(1, 2)) * rel * uni;
}

/// Relative constant for the elementary subgroups: 1 / (sqrt 18 (sqrt t + 3)).
inline Interval rule_reltconst(const rational& t)
{
    if (t <= 0)
        throw std::invalid_argument("rule_reltconst: need t > 0");
    return Interval(1L) / (sqrt(Interval(rational(18))) * (sqrt(Interval(t)) + Interval(3L)));
}

/// K(G;G) >= sqrt 2 (taken as an axiom).
inline Interval rule_full_set() { return sqrt(Interval(rational(2))); }

struct DerivationNode {
    std::string id;
    Rule rule;
    std::string statement;
    std::vector<std::size_t> inputs;
    rational param = 1; // k for KCball, t for relTconst, factor for composition
    Interval value;
};

struct Check {
    std::string id, statement;
    Interval lhs;
    std::string relation; // ">", ">=", "<", "<=", "in", "same"
    Interval rhs, rhs2;
    bool holds = false;
};

inline bool evaluate(const Check& c)
{
    if (c.relation == ">")
        return c.lhs.certainly_gt(c.rhs);
    if (c.relation == ">=")
        return c.lhs.certainly_ge(c.rhs);
    if (c.relation == "<")
        return c.lhs.certainly_lt(c.rhs);
    if (c.relation == "<=")
        return c.lhs.certainly_le(c.rhs);
    if (c.relation == "in")
        return c.lhs.certainly_gt(c.rhs) && c.lhs.certainly_lt(c.rhs2);
    if (c.relation == "same") {
        // Two enclosures of one number: they overlap and are both tight.
        const rational tight(1, bigint(1) << 200);
        return c.lhs.lo() <= c.rhs.hi() && c.rhs.lo() <= c.lhs.hi() && c.lhs.width() < tight && c.rhs.width() < tight;
    }
    throw std::invalid_argument("Check: unknown relation " + c.relation);
}

class Derivation {
public:
    std::size_t add(DerivationNode n)
    {
        for (auto i : n.inputs)
            if (i >= nodes_.size())
                throw std::invalid_argument("Derivation: input refers to a later node");
        n.value = recompute(n);
        nodes_.push_back(std::move(n));
        return nodes_.size() - 1;
    }

    std::size_t axiom(std::string id, std::string statement, Interval v)
    {
        return add({std::move(id), Rule::axiom, std::move(statement), {}, 1, std::move(v)});
    }

    void check(std::string id, std::string statement, Interval lhs, std::string rel, Interval rhs, Interval rhs2 = {})
    {
        Check c{std::move(id), std::move(statement), std::move(lhs), std::move(rel), std::move(rhs), std::move(rhs2), false};
        c.holds = evaluate(c);
        checks_.push_back(std::move(c));
    }

    const DerivationNode& node(std::size_t i) const { return nodes_.at(i); }
    const DerivationNode& node(const std::string& id) const
    {
        for (const auto& n : nodes_)
            if (n.id == id)
                return n;
        throw std::out_of_range("Derivation: no node " + id);
    }
    const std::vector<DerivationNode>& nodes() const noexcept { return nodes_; }
    const std::vector<Check>& checks() const noexcept { return checks_; }

    bool all_hold() const
    {
        for (const auto& c : checks_)
            if (!c.holds)
                return false;
        return true;
    }

    /// Recomputes every node from its stored inputs and rule.
    bool revalidate() const
    {
        for (const auto& n : nodes_) {
            const auto v = recompute(n);
            if (v.lo() != n.value.lo() || v.hi() != n.value.hi())
                return false;
        }
        for (const auto& c : checks_)
            if (evaluate(c) != c.holds)
                return false;
        return true;
    }

    nlohmann::json to_json() const
    {
        auto j = nlohmann::json::object();
        j["nodes"] = nlohmann::json::array();
        for (const auto& n : nodes_) {
            nlohmann::json in = nlohmann::json::array();
            for (auto i : n.inputs)
                in.push_back(nodes_[i].id);
            j["nodes"].push_back({{"id", n.id},
                                  {"rule", rule_name(n.rule)},
                                  {"citation", n.statement},
                                  {"inputs", in},
                                  {"param", n.param.str()},
                                  {"interval", {n.value.lo().str(), n.value.hi().str()}},
                                  {"approx", static_cast<double>(n.value.lo())},
                                  {"verdict", "computed"}});
        }
        j["checks"] = nlohmann::json::array();
        for (const auto& c : checks_)
            j["checks"].push_back({{"id", c.id},
                                   {"citation", c.statement},
                                   {"relation", c.relation},
                                   {"lhs", {c.lhs.lo().str(), c.lhs.hi().str()}},
                                   {"lhs_approx", static_cast<double>(c.lhs.lo())},
                                   {"rhs", {c.rhs.lo().str(), c.rhs.hi().str()}},
                                   {"verdict", c.holds ? "pass" : "fail"}});
        return j;
    }

private:
    Interval recompute(const DerivationNode& n) const
    {
        auto in = [&](std::size_t k) -> const Interval& { return nodes_.at(n.inputs.at(k)).value; };
        switch (n.rule) {
        case Rule::axiom: return n.value;
        case Rule::full_set: return rule_full_set();
        case Rule::kcball: return rule_kcball(in(0), n.param);
        case Rule::kcrel: return rule_kcrel(in(0), in(1));
        case Rule::relTconst: return rule_reltconst(n.param);
        case Rule::composition: {
            Interval v(n.param);
            for (std::size_t k = 0; k < n.inputs.size(); ++k)
                v = v * in(k);
            return v;
        }
        }
        throw std::logic_error("Derivation: unknown rule");
    }

    std::vector<DerivationNode> nodes_;
    std::vector<Check> checks_;
};

// ---------------------------------------------------------------------------

/// Bound on ||v|| for the cube generators with per-generator displacement
/// eps: the L-cycle part 47 eps + 0.02 + e^-3, the tuple part 16 eps.
inline void add_decay_chain(Derivation& D, const rational& eps)
{
    if (eps < 0)
        throw std::invalid_argument("derive_decay_chain: need eps >= 0");
    const Interval e(eps);
    const Interval em3 = exp(rational(-3));
    D.check("e^-3 below 0.05", "0.02 + e^-3 < 0.07", Interval(rational(2, 100)) + em3, "<", Interval(rational(7, 100)));
    const Interval v1 = Interval(47L) * e + Interval(rational(2, 100)) + em3;
    D.check("v1 bound", "||v1|| <= 47 eps + 0.02 + e^-3 < 47 eps + 0.07", v1, "<",
            Interval(47L) * e + Interval(rational(7, 100)));
    const Interval total = Interval(63L) * e + Interval(rational(7, 100));
    D.check("invariant vector", "||v - v0|| <= 63 eps + 0.07 < 1", total, "<", Interval(1L));
}

/// x^{1/2} / (24 ln x) (1 - 3 (x + 4) x^{1-d} ln x) >= 3.
inline Interval decay_exponent(const rational& K, unsigned d)
{
    const Interval lnK = log(K);
    const Interval corr = Interval(1L) - Interval(3L) * Interval(K + 4) * lnK / pow(Interval(K), d - 1);
    return sqrt(Interval(K)) / (Interval(24L) * lnK) * corr;
}

inline void add_exponent_checks(Derivation& D, unsigned d = 6)
{
    const rational K0 = rational(1000000) + 1;
    D.check("exponent at 10^6+1", "exponent factor >= 3 at K = 10^6 + 1", decay_exponent(K0, d), ">=", Interval(3L));
    // Sampled at every decade up to 10^18.
    bool ok = true;
    rational K = K0;
    for (int j = 0; j <= 12; ++j, K *= 10)
        ok = ok && decay_exponent(K, d).certainly_ge(Interval(3L));
    D.check("exponent sampled", "exponent factor >= 3 on sampled K in [10^6+1, 10^18]", Interval(ok ? 1L : 0L), ">=",
            Interval(1L));
}

inline Derivation derive_decay_chain(const rational& eps, unsigned d = 6)
{
    Derivation D;
    add_decay_chain(D, eps);
    add_exponent_checks(D, d);
    return D;
}

/// The constant tree: relative property (T) constant, elementary-matrix
/// bound, the Delta bound 1/550, combination with 1/70, the Alt(n) chain
/// and the Sym(n) factor.  Throws when any inequality fails (a transcription
/// error, not a runtime condition).
inline Derivation derive_constants(bool strict = true)
{
    Derivation D;
    const auto full = D.add({"K(G;G)", Rule::full_set, "K(G;G) >= sqrt 2 when S is all of G", {}, 1, {}});
    const auto gem = D.add({"K(Delta;GEM)", Rule::kcball, "every element is a product of 17 GEM letters", {full}, 17, {}});
    const auto relt = D.add({"K(Delta,H;S) t=5", Rule::relTconst, "relative constant 1/(sqrt 18 (sqrt t + 3))", {}, 5, {}});
    const auto relkc = D.add({"prefactor", Rule::composition, "half the relative constant", {relt}, rational(1, 2), {}});
    const Interval closed = Interval(1L) / (Interval(6L) * sqrt(Interval(rational(2))) * (Interval(3L) + sqrt(Interval(rational(5)))));
    D.check("prefactor closed form", "1/2 * 1/(sqrt 18 (sqrt 5 + 3)) = 1/(6 sqrt 2 (3 + sqrt 5))", D.node(relkc).value, "same", closed);

    const auto delta = D.add({"K(Delta;S)", Rule::kcrel, "1/2 K(Delta,H;S) K(Delta;GEM)", {relt, gem}, 1, {}});
    const Interval chain = Interval(1L) / (Interval(102L) * (Interval(3L) + sqrt(Interval(rational(5)))));
    D.check("Delta closed form", "value is 1/(6 (3 + sqrt 5) 17)", D.node(delta).value, "same", chain);
    D.check("Delta window", "1/535 < K(Delta;S) < 1/534", D.node(delta).value, "in", Interval(rational(1, 535)),
            Interval(rational(1, 534)));
    D.check("Delta > 1/550", "K(Delta;S) > 1/550", D.node(delta).value, ">", Interval(rational(1, 550)));
    const auto d550 = D.axiom("K(Delta;S) >= 1/550", "rounded Delta bound", Interval(rational(1, 550)));

    add_decay_chain(D, rational(1, 70));
    const auto alt70 = D.axiom("K(Alt(N);E) >= 1/70", "cube generators, from the invariant-vector chain", Interval(rational(1, 70)));
    const auto alt = D.add({"K(Alt(N);S)", Rule::kcrel, "1/2 K(Alt(N);E) K(Delta,Gamma;S)", {alt70, d550}, 1, {}});
    D.check("1/77000", "1/2 (1/70)(1/550) = 1/77000", D.node(alt).value, "same", Interval(rational(1, 77000)));
    D.check("> 1e-5", "K(Alt(N);S) > 10^-5", D.node(alt).value, ">", Interval(rational(1, 100000)));

    // Alt(n) for large n from copies of Alt(n_s): at most P < 10^6 window factors.
    const rational P = 1000000;
    const auto stated = D.add({"K(Alt(n);F) stated", Rule::composition, "sqrt 2 / P * K(Alt(n_s);F)", {full, alt}, 1 / P, {}});
    D.check("> 1e-12", "sqrt 2 (1/77000) / 10^6 > 10^-12", D.node(stated).value, ">", Interval(rational(1, bigint("1000000000000"))));
    const auto windows = D.add({"K(Alt(n);copies)", Rule::kcball, "every element is a product of P window elements", {full}, P, {}});
    const auto viarule = D.add({"K(Alt(n);F) rule", Rule::kcrel, "1/2 K(Alt(n);copies) K(Alt(n_s);F)", {windows, alt}, 1, {}});
    D.check("> 1e-12 via rule", "with the 1/2 of the combination rule kept", D.node(viarule).value, ">",
            Interval(rational(1, bigint("1000000000000"))));

    // Sym(n): add one odd t; Alt(n) u {t} reaches everything in 2 steps.
    const auto sym2 = D.add({"K(Sym;Alt u t)", Rule::kcball, "every element is a product of two", {full}, 2, {}});
    const auto unit = D.axiom("K(Alt(n);F) unit", "normalised Alt constant", Interval(1L));
    const auto symf = D.add({"K(Sym;F u t) factor", Rule::kcrel, "1/2 K(Alt;F) K(Sym;Alt u t)", {unit, sym2}, 1, {}});
    D.check("sqrt2/4 closed form", "factor is sqrt 2 / 4", D.node(symf).value, "same",
            sqrt(Interval(rational(2))) / Interval(4L));
    D.check("sqrt2/4 >= 1/3", "sqrt 2 / 4 >= 1/3", D.node(symf).value, ">=", Interval(rational(1, 3)));

    if (strict && !D.all_hold())
        for (const auto& c : D.checks())
            if (!c.holds)
                throw std::logic_error("derive_constants: inequality failed: " + c.id);
    return D;
}

} // namespace altexp
