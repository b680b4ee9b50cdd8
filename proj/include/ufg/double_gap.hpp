#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ufg/alphabet_reduction.hpp"
#include "ufg/core.hpp"
#include "ufg/error.hpp"
#include "ufg/formula2graph.hpp"
#include "ufg/gap_amplification.hpp"
#include "ufg/hypergraph2formula.hpp"
#include "ufg/oracle.hpp"
#include "ufg/random.hpp"

namespace ufg {

struct FgprParams {
    std::uint32_t d = 3;  // base expander degree
    std::uint32_t t = 1;  // powering parameter
    bool exhaustive = false;
    std::uint64_t walk_samples = 64;
    std::uint64_t tuple_samples = 64;
    std::uint64_t seed = 0;
    bool measure = true;  // brute-force UNSAT where the oracle cap allows
};

/// Every intermediate of one round, kept for lifting assignments and for the manifest.
struct RoundTrace {
    ConstraintHypergraph graph;  // Formula2Graph output
    RegularizeResult regular;
    ExpanderizeResult expanded;
    PowerResult powered;
    AlphabetResult reduced;
    Hypergraph2FormulaResult formula;
    std::uint64_t seed_regularize = 0, seed_expander = 0, seed_walks = 0, seed_tuples = 0;
    std::optional<Rational> unsat_in, unsat_out;
};

struct SizeRow {
    std::string stage;
    std::size_t vertices = 0;
    std::size_t constraints = 0;
};

inline std::vector<SizeRow> stage_sizes(const CnfFormula& in, const RoundTrace& r) {
    auto row = [](std::string s, const ConstraintHypergraph& g) { return SizeRow{std::move(s), g.vertex_count, g.edges.size()}; };
    return {SizeRow{"input", in.n, in.clauses.size()},
            row("formula2graph", r.graph),
            row("regularize", r.regular.graph),
            row("expanderize", r.expanded.graph),
            row("power", r.powered.graph),
            row("alphabet", r.reduced.graph),
            SizeRow{"output", r.formula.formula.n, r.formula.formula.clauses.size()}};
}

/// One gap-doubling round: Formula2Graph, regularize, expanderize, power, alphabet reduction, back to 3CNF.
/// All randomness is drawn from per-pass streams of params.seed and never looks at polarities.
inline RoundTrace double_gap_trace(const CnfFormula& phi, const FgprParams& p) {
    RoundTrace r;
    r.seed_regularize = derive_seed("regularize", p.seed);
    r.seed_expander = derive_seed("expanderize", p.seed);
    r.seed_walks = derive_seed("power", p.seed);
    r.seed_tuples = derive_seed("alphabet", p.seed);
    r.graph = to_constraint_graph(phi);
    r.regular = regularize(r.graph, r.seed_regularize, p.d);
    r.expanded = expanderize(r.regular.graph, r.seed_expander, p.d);
    PowerMode pm;
    pm.exhaustive = p.exhaustive;
    pm.samples = p.walk_samples;
    pm.seed = r.seed_walks;
    r.powered = power_graph(r.expanded.graph, p.t, pm);
    AlphabetMode am;
    am.exhaustive = p.exhaustive;
    am.samples = p.tuple_samples;
    am.seed = r.seed_tuples;
    r.reduced = alphabet_reduce(r.powered.graph, am);
    r.formula = hypergraph_to_3sat(r.reduced.graph);
    if (p.measure) {
        const std::uint64_t cap = oracle_cap();
        auto fits = [&](std::uint32_t n) { return n < 63 && (std::uint64_t{1} << n) <= cap; };
        if (fits(phi.n)) r.unsat_in = brute_force_unsat(phi, cap);
        if (fits(r.formula.formula.n)) r.unsat_out = brute_force_unsat(r.formula.formula, cap);
    }
    return r;
}

inline CnfFormula double_gap(const CnfFormula& phi, const FgprParams& p) { return double_gap_trace(phi, p).formula.formula; }

/// Carries an assignment of the round's input through every pass.
inline Bits lift_double_gap(const CnfFormula& phi, const RoundTrace& r, const Bits& a) {
    WordAssignment w = lift_formula2graph(phi, a);
    w = lift_regularize(r.regular, w);  // expanderize keeps vertices and words
    w = lift_power(r.powered, w);
    w = lift_alphabet(r.reduced, w);
    return lift_hypergraph2formula(r.reduced.graph, r.formula, w);
}

struct AmplifyResult {
    CnfFormula output;
    std::vector<RoundTrace> rounds;
    std::vector<std::uint64_t> round_seeds;
};

/// `rounds` iterations of double_gap, round i seeded by derive_seed(seed, i).
inline AmplifyResult amplify(const CnfFormula& phi, std::uint32_t rounds, FgprParams p) {
    AmplifyResult res;
    res.output = phi;
    const std::uint64_t base = p.seed;
    for (std::uint32_t i = 0; i < rounds; ++i) {
        p.seed = derive_seed(base, i);
        res.round_seeds.push_back(p.seed);
        res.rounds.push_back(double_gap_trace(res.output, p));
        res.output = res.rounds.back().formula.formula;
    }
    return res;
}

}  // namespace ufg
