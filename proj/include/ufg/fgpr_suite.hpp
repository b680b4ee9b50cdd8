#pragma once

#include <functional>
#include <future>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ufg/circuit.hpp"
#include "ufg/core.hpp"
#include "ufg/csp_chain.hpp"
#include "ufg/double_gap.hpp"
#include "ufg/eksat.hpp"
#include "ufg/formula2graph.hpp"
#include "ufg/io.hpp"
#include "ufg/oracle.hpp"
#include "ufg/random.hpp"
#include "ufg/universal_poly.hpp"

namespace ufg {

/// Shape of the random factor graph a pass is tested on.
struct SuiteInput {
    Kind kind = Kind::Sat;
    std::uint32_t n = 4;
    std::uint32_t m = 4;
    std::uint32_t width = 3;  // every clause has this many distinct variables
};

/// A registered reduction. `fingerprint` renders the polarity-free part of the output;
/// `complete` gets an input with a satisfying assignment and says whether the output keeps the promise.
struct SuitePass {
    std::string name;
    SuiteInput input;
    std::function<std::string(const CnfFormula&)> fingerprint;
    std::function<bool(const CnfFormula&, const Bits&)> complete;
};

struct TrialReport {
    std::size_t index = 0;
    bool input_satisfiable = false;
    bool same_structure = true;    // fingerprint equals trial 0's
    std::optional<bool> complete;  // only when the input was satisfiable
    std::string error;
};

struct SuiteReport {
    std::string pass;
    std::size_t trials = 0;
    std::uint64_t seed = 0;
    std::vector<TrialReport> rows;

    bool structure_ok() const {
        for (const auto& r : rows)
            if (!r.same_structure || !r.error.empty()) return false;
        return true;
    }
    bool completeness_ok() const {
        for (const auto& r : rows)
            if (r.complete && !*r.complete) return false;
        return true;
    }
    std::size_t satisfiable_inputs() const {
        std::size_t c = 0;
        for (const auto& r : rows) c += r.input_satisfiable;
        return c;
    }
    bool passed() const { return !rows.empty() && structure_ok() && completeness_ok(); }

    std::string text() const {
        std::string out = "suite " + pass + " trials=" + std::to_string(trials) + " seed=" + std::to_string(seed) + "\n";
        for (const auto& r : rows) {
            out += "  trial " + std::to_string(r.index) + ": structure " + (r.same_structure ? "equal" : "DIFFERS");
            out += ", input " + std::string(r.input_satisfiable ? "sat" : "unsat");
            if (r.complete) out += ", completeness " + std::string(*r.complete ? "ok" : "VIOLATED");
            if (!r.error.empty()) out += ", error: " + r.error;
            out += "\n";
        }
        out += std::string(passed() ? "PASS" : "FAIL") + " " + pass + "\n";
        return out;
    }
};

/// Random factor graph for a pass: clause variables are distinct, drawn from the pass's own stream.
inline FactorGraph suite_graph(const SuiteInput& in, std::uint64_t seed) {
    if (in.width == 0 || in.width > in.n) throw Error("suite clause width must lie in [1, n]");
    Rng rng(seed);
    FactorGraph g;
    g.n = in.n;
    g.kind = in.kind;
    for (std::uint32_t c = 0; c < in.m; ++c) {
        std::vector<std::uint32_t> vars(in.n);
        for (std::uint32_t v = 0; v < in.n; ++v) vars[v] = v + 1;
        rng.shuffle(vars);
        vars.resize(in.width);
        g.slots.push_back(vars);
        g.weights.push_back(1);
    }
    return g;
}

/// Trial polarities. Even trials plant a random assignment: each clause it violates gets one slot flipped.
inline PolarityTemplate suite_template(const FactorGraph& g, std::uint64_t seed, bool plant) {
    Rng rng(seed);
    PolarityTemplate t;
    for (std::size_t i = 0; i < g.slot_count(); ++i) t.bits.push_back(rng.coin());
    if (!plant) return t;
    Bits a(g.n);
    for (auto& b : a) b = rng.coin();
    std::size_t at = 0;
    auto f = apply_polarities(g, t);
    for (std::size_t c = 0; c < g.slots.size(); ++c) {
        if (!clause_satisfied(g.kind, f.clauses[c], a)) {
            const std::size_t slots = g.slots[c].size();
            std::size_t pick = slots == 1 ? 0 : rng.below(slots);
            if (g.kind == Kind::Lin) pick = 0;
            t.bits[at + pick] ^= 1U;
        }
        at += g.slots[c].size();
    }
    return t;
}

/// Runs every trial (concurrently), then compares against trial 0 in index order.
inline SuiteReport run_fgpr_suite(const SuitePass& pass, std::size_t trials, std::uint64_t seed) {
    SuiteReport rep;
    rep.pass = pass.name;
    rep.trials = trials;
    rep.seed = seed;
    const FactorGraph g = suite_graph(pass.input, derive_seed("suite:" + pass.name, seed));
    struct Outcome {
        TrialReport row;
        std::string fp;
    };
    auto trial = [&](std::size_t i) {
        Outcome o;
        o.row.index = i;
        try {
            auto phi = apply_polarities(g, suite_template(g, derive_seed(derive_seed("suite-trial", seed), i), i % 2 == 0));
            auto witness = find_satisfying(phi);
            o.row.input_satisfiable = witness.has_value();
            o.fp = pass.fingerprint(phi);
            if (witness) o.row.complete = pass.complete(phi, *witness);
        } catch (const std::exception& ex) {
            o.row.error = ex.what();
        }
        return o;
    };
    std::vector<std::future<Outcome>> jobs;
    for (std::size_t i = 0; i < trials; ++i) jobs.push_back(std::async(std::launch::async, trial, i));
    std::string first;
    for (std::size_t i = 0; i < trials; ++i) {
        auto o = jobs[i].get();
        if (i == 0) first = o.fp;
        o.row.same_structure = o.row.error.empty() && o.fp == first;
        rep.rows.push_back(std::move(o.row));
    }
    return rep;
}

/// The polarity-free part of a hypergraph: structure plus every polynomial with its constant cleared.
inline std::string hypergraph_fingerprint(ConstraintHypergraph h) {
    for (auto& e : h.edges)
        for (auto& p : e.polys) p.set_constant(false);
    return hypergraph_to_json(h).dump();
}

inline std::string formula_fingerprint(const CnfFormula& f) { return emit_fgraph(factor_graph_of(f)); }

/// Parameters of the double_gap pass as the suite runs it.
inline FgprParams suite_fgpr_params() {
    FgprParams p;
    p.d = 3;
    p.t = 1;
    p.exhaustive = false;
    p.walk_samples = 32;
    p.tuple_samples = 32;
    p.seed = 2024;
    p.measure = false;
    return p;
}

inline std::vector<SuitePass> suite_registry() {
    std::vector<SuitePass> out;

    out.push_back({"formula2graph", {Kind::Sat, 5, 6, 3},
                   [](const CnfFormula& f) { return hypergraph_fingerprint(to_constraint_graph(f)); },
                   [](const CnfFormula& f, const Bits& a) { return satisfied_by(to_constraint_graph(f), lift_formula2graph(f, a)); }});

    out.push_back({"double_gap", {Kind::Sat, 3, 2, 3},
                   [](const CnfFormula& f) { return formula_fingerprint(double_gap(f, suite_fgpr_params())); },
                   [](const CnfFormula& f, const Bits& a) {
                       auto r = double_gap_trace(f, suite_fgpr_params());
                       return r.formula.formula.satisfied_by(lift_double_gap(f, r, a));
                   }});

    auto eksat_lift = [](const EkSatResult& r, const Bits& a) {
        Bits out(a);
        out.resize(r.formula.n, 0);
        for (std::uint32_t j = 1; j <= r.q; ++j) out[r.y(j) - 1] = 1;
        return out;
    };
    out.push_back({"eksat", {Kind::Sat, 5, 4, 3},
                   [](const CnfFormula& f) { return formula_fingerprint(eksat_reduce(f, EkSatParams{}).formula); },
                   [eksat_lift](const CnfFormula& f, const Bits& a) {
                       auto r = eksat_reduce(f, EkSatParams{});
                       return r.formula.satisfied_by(eksat_lift(r, a));
                   }});

    out.push_back({"eksat-unweighted", {Kind::Sat, 5, 8, 3},
                   [](const CnfFormula& f) {
                       return formula_fingerprint(unweight(eksat_reduce(f, EkSatParams{}), make_rational(1, 8)).formula);
                   },
                   [](const CnfFormula& f, const Bits& a) {
                       auto r = eksat_reduce(f, EkSatParams{});
                       auto u = unweight(r, make_rational(1, 8));
                       Bits out(a);
                       out.resize(u.formula.n, 0);
                       for (std::uint32_t j = 1; j <= r.q; ++j) out[r.y(j) - 1] = 1;
                       return u.formula.satisfied_by(out);
                   }});

    out.push_back({"sat3_to_nae4", {Kind::Sat, 5, 6, 3},
                   [](const CnfFormula& f) { return formula_fingerprint(sat3_to_nae4(f)); },
                   [](const CnfFormula& f, const Bits& a) {
                       Bits out(a);
                       out.push_back(0);
                       return sat3_to_nae4(f).satisfied_by(out);
                   }});

    out.push_back({"nae4_to_nae3", {Kind::Nae, 6, 5, 4},
                   [](const CnfFormula& f) { return formula_fingerprint(nae4_to_nae3(f)); },
                   [](const CnfFormula& f, const Bits& a) {
                       Bits out(a);
                       for (const auto& c : f.clauses) {
                           if (c.slots.size() != 4) continue;
                           bool x = c.slots[0].value(a[c.slots[0].var - 1]);
                           bool y = c.slots[1].value(a[c.slots[1].var - 1]);
                           bool z = c.slots[2].value(a[c.slots[2].var - 1]);
                           // v must break ties on the side whose two literals agree
                           out.push_back(x == y ? !x : z);
                       }
                       return nae4_to_nae3(f).satisfied_by(out);
                   }});

    // A satisfied NAE triple leaves exactly one of its three equations false.
    out.push_back({"nae3_to_lin2", {Kind::Nae, 5, 5, 3},
                   [](const CnfFormula& f) { return formula_fingerprint(nae3_to_lin2(f)); },
                   [](const CnfFormula& f, const Bits& a) {
                       auto g = nae3_to_lin2(f);
                       return g.unsatisfied_weight(a) * 3 == g.total_weight();
                   }});

    auto poly = std::make_shared<PolyUniversal>(build_poly_universal(3));
    out.push_back({"poly-universal", {Kind::Sat, 3, 3, 3},
                   [poly](const CnfFormula& f) { return formula_fingerprint(apply_polarities(poly->fg, embed_poly(*poly, f))); },
                   [poly](const CnfFormula& f, const Bits&) {
                       return is_satisfiable(apply_polarities(poly->fg, embed_poly(*poly, f)));
                   }});

    auto circuit = std::make_shared<Circuit>(build_consistency_circuit(3, 2));
    auto tmpl = std::make_shared<CircuitTemplate>(circuit_to_3cnf(*circuit));
    out.push_back({"universal-circuit", {Kind::Sat, 3, 2, 3},
                   [tmpl](const CnfFormula& f) { return formula_fingerprint(instantiate(*tmpl, f)); },
                   [circuit, tmpl](const CnfFormula& f, const Bits& a) {
                       auto lifted = lift_to_template(*circuit, *tmpl, f, a);
                       return lifted && instantiate(*tmpl, f).satisfied_by(*lifted);
                   }});

    // Negative control: the fingerprint keeps the constant terms, so polarity leaks into "structure".
    out.push_back({"broken-leak", {Kind::Sat, 5, 6, 3},
                   [](const CnfFormula& f) { return hypergraph_to_json(to_constraint_graph(f)).dump(); },
                   [](const CnfFormula& f, const Bits& a) { return satisfied_by(to_constraint_graph(f), lift_formula2graph(f, a)); }});
    return out;
}

inline std::optional<SuitePass> find_pass(const std::string& name) {
    for (auto& p : suite_registry())
        if (p.name == name) return p;
    return std::nullopt;
}

}  // namespace ufg
