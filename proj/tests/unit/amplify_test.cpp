#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace ufg;
using namespace testing_support;

namespace {

CnfFormula single_clause(bool neg2) {
    CnfFormula f;
    f.n = 3;
    f.add({pos(1), Literal{2, neg2}, pos(3)});
    return f;
}

/// Small rank-2 graph over F_2 with equality / inequality edges and one product edge.
ConstraintHypergraph small_graph(std::mt19937_64& rng, std::uint32_t n, std::uint32_t edges) {
    ConstraintHypergraph g;
    g.vertex_count = n;
    g.k = 1;
    for (std::uint32_t v = 0; v < n; ++v) {  // a cycle keeps every vertex covered
        std::uint32_t w = (v + 1) % n;
        GF2Poly p = GF2Poly::var({v, 0}) + GF2Poly::var({w, 0});
        p.set_constant(rng() & 1U);
        g.add_edge({v, w}, {p});
    }
    for (std::uint32_t e = n; e < edges; ++e) {
        std::uint32_t x = rng() % n, y = rng() % n;
        g.add_edge({x, y}, {GF2Poly::product({x, 0}, {y, 0})});
    }
    return g;
}

/// Positive 3-expander on 6 vertices (3 matchings plus 3 self loops each) carrying equality constraints,
/// with `flipped` of them turned into inequalities.
ConstraintHypergraph positive_g2(std::uint64_t seed, int flipped) {
    auto x = make_expander(6, seed, 3, true);
    ConstraintHypergraph g;
    g.vertex_count = 6;
    g.k = 1;
    int left = flipped;
    for (auto [p, q] : x.edges) {
        if (p == q) {
            g.add_edge({p, q}, {});
            continue;
        }
        GF2Poly poly = GF2Poly::var({p, 0}) + GF2Poly::var({q, 0});
        poly.set_constant(left-- > 0);
        g.add_edge({p, q}, {poly});
    }
    return g;
}

}  // namespace

TEST(Formula2Graph, SingleClauseShape) {
    auto h = to_constraint_graph(single_clause(false));
    EXPECT_EQ(h.vertex_count, 5U);
    EXPECT_EQ(h.edges.size(), 4U);
    EXPECT_EQ(h.k, 3U);
    EXPECT_LE(h.restriction(), 2U);
    for (std::size_t e = 1; e < 4; ++e) EXPECT_FALSE(h.edges[e].polys[0].constant());
    auto g = to_constraint_graph(single_clause(true));
    EXPECT_TRUE(is_close(h, g));
    std::size_t flipped = 0;
    for (std::size_t e = 0; e < 4; ++e)
        for (std::size_t p = 0; p < h.edges[e].polys.size(); ++p)
            flipped += h.edges[e].polys[p].constant() != g.edges[e].polys[p].constant();
    EXPECT_EQ(flipped, 1U);
    EXPECT_TRUE(g.edges[2].polys[0].constant());
}

TEST(Formula2Graph, SizeBoundAndCloseness) {
    std::mt19937_64 rng(30);
    for (int rep = 0; rep < 100; ++rep) {
        auto f = random_formula(rng, 5, 1 + rng() % 8, 1 + rng() % 3);
        auto h = to_constraint_graph(f);
        EXPECT_LE(h.size(), 6 * (f.n + f.clauses.size()));
        EXPECT_TRUE(is_close(h, to_constraint_graph(repolarize(f, rng))));
    }
}

TEST(Formula2Graph, SatisfiabilityAndUnsatBound) {
    std::mt19937_64 rng(31);
    for (int rep = 0; rep < 20; ++rep) {
        auto f = random_formula(rng, 3, 1 + rng() % 2, 1 + rng() % 3);
        auto h = to_constraint_graph(f);
        const Rational uf = naive_unsat(f), uh = brute_force_unsat(h);
        EXPECT_EQ(uf == 0, uh == 0);
        EXPECT_LE(uf, 4 * uh);
        for (std::uint64_t a = 0; a < 8; ++a)
            if (f.satisfied_by(bits_of(a, 3))) EXPECT_TRUE(satisfied_by(h, lift_formula2graph(f, bits_of(a, 3))));
    }
}

TEST(Expander, SmallSizesHaveExactCertificates) {
    for (std::uint32_t n = 2; n <= 16; ++n) {
        auto x = make_expander(n, 1000 + n, 3);
        EXPECT_EQ(x.certificate, "exact");
        EXPECT_GT(x.eta, 0);
        EXPECT_EQ(x.eta, exact_edge_expansion(n, x.edges));
        for (auto deg : degrees(n, x.edges)) EXPECT_EQ(deg, 3U);
    }
}

TEST(Expander, IndependentCutCheck) {
    auto x = make_expander(8, 1, 3);
    Rational best = 100;
    for (std::uint32_t s = 1; s < 256; ++s) {
        if (std::popcount(s) > 4) continue;
        std::uint32_t cut = 0;
        for (auto [p, q] : x.edges) cut += (((s >> p) & 1U) != ((s >> q) & 1U));
        best = std::min(best, make_rational(cut, std::popcount(s)));
    }
    EXPECT_EQ(best, x.eta);
}

TEST(Expander, DeterministicAndPositive) {
    auto a = make_expander(12, 5, 3, true), b = make_expander(12, 5, 3, true);
    EXPECT_EQ(a.edges, b.edges);
    for (std::uint32_t v = 0; v < 12; ++v) EXPECT_GE(self_loops_at(v, a.edges), 3U);
    auto one = make_expander(1, 0, 3);
    EXPECT_EQ(one.certificate, "vacuous");
    auto big = make_expander(40, 3, 3);
    EXPECT_EQ(big.certificate, "spectral");
    EXPECT_TRUE(connected(40, big.edges));
}

TEST(Regularize, RegularCopiesAndCompleteness) {
    std::mt19937_64 rng(32);
    for (int rep = 0; rep < 10; ++rep) {
        auto g = small_graph(rng, 4, 6);
        auto r = regularize(g, rng(), 3);
        EXPECT_EQ(regular_degree(r.graph), 4U);  // one external edge plus expander degree
        EXPECT_EQ(r.graph.vertex_count, r.origin.size());
        const Rational u0 = naive_unsat(g);
        const Rational u1 = brute_force_unsat(r.graph);
        EXPECT_EQ(u0 == 0, u1 == 0);
        if (u0 > 0) EXPECT_GT(u1, 0);
        for (std::uint64_t a = 0; a < 16; ++a) {
            auto w = bits_of(a, 4);
            if (satisfied_by(g, w)) EXPECT_TRUE(satisfied_by(r.graph, lift_regularize(r, w)));
        }
    }
}

TEST(Regularize, DegreeOneVertexGetsSingletonCloud) {
    ConstraintHypergraph g;
    g.vertex_count = 2;
    g.k = 1;
    g.add_edge({0, 1}, {GF2Poly::var({0, 0}) + GF2Poly::var({1, 0})});
    auto r = regularize(g, 1, 3);
    EXPECT_EQ(r.graph.vertex_count, 2U);
}

TEST(Expanderize, PositiveRegularAndAlwaysTrueAdditions) {
    std::mt19937_64 rng(33);
    auto g = small_graph(rng, 4, 6);
    auto r1 = regularize(g, 1, 3);
    auto r2 = expanderize(r1.graph, 2, 3);
    const std::uint32_t d0 = regular_degree(r1.graph);
    EXPECT_EQ(regular_degree(r2.graph), 2 * (3 + d0));
    for (std::uint32_t v = 0; v < r2.graph.vertex_count; ++v)
        EXPECT_GE(self_loop_count(r2.graph, v), (3 + d0));
    for (std::size_t e = r1.graph.edges.size(); e < r2.graph.edges.size(); ++e) EXPECT_TRUE(r2.graph.edges[e].polys.empty());
    EXPECT_EQ(brute_force_unsat(r1.graph) * r1.graph.total_weight() / r2.graph.total_weight(), brute_force_unsat(r2.graph));
}

TEST(PowerGraph, ExhaustiveCompletenessAndGap) {
    std::mt19937_64 rng(34);
    for (int rep = 0; rep < 6; ++rep) {
        auto g = positive_g2(rng(), rep % 2 == 1 ? 2 : 0);
        PowerMode pm;
        auto p = power_graph(g, 1, pm);
        EXPECT_EQ(p.graph.k, p.base_k * p.max_ball);
        EXPECT_LE(p.max_ball, 4U);
        const bool before = naive_unsat(g) == 0;
        EXPECT_EQ(before, is_satisfiable(p.graph));
        for (std::uint64_t a = 0; a < 64; ++a) {
            auto w = bits_of(a, 6);
            if (satisfied_by(g, w)) EXPECT_TRUE(satisfied_by(p.graph, lift_power(p, w)));
        }
    }
}

TEST(PowerGraph, SampleModeIsDeterministic) {
    std::mt19937_64 rng(35);
    auto g = small_graph(rng, 4, 5);
    auto r = expanderize(regularize(g, 1, 3).graph, 2, 3).graph;
    PowerMode pm{false, 50, 77};
    auto a = power_graph(r, 2, pm), b = power_graph(r, 2, pm);
    EXPECT_EQ(a.graph, b.graph);
    EXPECT_EQ(a.graph.edges.size(), 50U);
}

TEST(AlphabetReduction, ExhaustiveCountsForK1) {
    std::mt19937_64 rng(36);
    auto g = small_graph(rng, 3, 4);
    auto r = alphabet_reduce(g, AlphabetMode{});
    const std::uint32_t k = 1;
    const std::size_t expect_v = (1U << k) * g.vertex_count + ((1U << (2 * k)) + (1U << (k * (2 * k - 1)))) * g.edges.size();
    EXPECT_EQ(r.graph.vertex_count, expect_v);
    const std::size_t mcap = g.restriction();
    EXPECT_EQ(r.graph.edges.size(), 7 * g.edges.size() * (std::size_t{1} << (mcap + 6 * k + 2 * k * (2 * k - 1))));
    EXPECT_LE(r.graph.rank(), 4U);
    EXPECT_EQ(r.graph.k, 1U);
    EXPECT_LE(r.graph.restriction(), 1U);
}

TEST(AlphabetReduction, HonestEncodingSatisfiesEverything) {
    std::mt19937_64 rng(37);
    for (int rep = 0; rep < 5; ++rep) {
        auto g = small_graph(rng, 3, 4);
        auto r = alphabet_reduce(g, AlphabetMode{});
        for (std::uint64_t a = 0; a < 8; ++a) {
            auto w = bits_of(a, 3);
            if (satisfied_by(g, w)) EXPECT_TRUE(satisfied_by(r.graph, lift_alphabet(r, w)));
        }
    }
}

TEST(AlphabetReduction, CloseInputsDifferOnlyInTypeSevenConstants) {
    std::mt19937_64 rng(38);
    auto g = small_graph(rng, 3, 3);
    auto h = g;
    for (auto& e : h.edges)
        for (auto& p : e.polys) p.set_constant(!p.constant());
    auto a = alphabet_reduce(g, AlphabetMode{}), b = alphabet_reduce(h, AlphabetMode{});
    EXPECT_TRUE(is_close(a.graph, b.graph));
    for (std::size_t e = 0; e < a.graph.edges.size(); ++e) {
        if (a.graph.edges[e].polys == b.graph.edges[e].polys) continue;
        EXPECT_EQ(e % 7, 6U);  // seventh constraint of its tuple
    }
}

TEST(Hypergraph2Formula, SmallestCaseAndBound) {
    ConstraintHypergraph h;
    h.vertex_count = 2;
    h.k = 1;
    h.add_edge({0, 1}, {GF2Poly::product({0, 0}, {1, 0})});
    auto r = hypergraph_to_3sat(h);
    EXPECT_LE(r.formula.n + r.formula.clauses.size(), (4 + 1) * h.size());
    EXPECT_EQ(r.formula.clauses.back().slots, (std::vector<Literal>{neg(3)}));
    EXPECT_EQ(brute_force_unsat(r.formula) == 0, brute_force_unsat(h) == 0);
}

TEST(Hypergraph2Formula, FlippingConstantFlipsOnlyTheUnitClause) {
    std::mt19937_64 rng(39);
    for (int rep = 0; rep < 20; ++rep) {
        ConstraintHypergraph h;
        h.vertex_count = 4;
        h.k = 1;
        for (int e = 0; e < 3; ++e) {
            std::vector<std::uint32_t> vs{0, 1, 2, 3};
            std::shuffle(vs.begin(), vs.end(), rng);
            vs.resize(1 + rng() % 4);
            GF2Poly p;
            for (std::size_t i = 0; i + 1 < vs.size(); ++i) p += GF2Poly::product({vs[i], 0}, {vs[i + 1], 0});
            p += GF2Poly::var({vs[0], 0});
            h.add_edge(vs, {p});
        }
        auto r = hypergraph_to_3sat(h);
        EXPECT_LE(r.formula.n + r.formula.clauses.size(), ((1U << h.rank()) + 1) * h.size());
        EXPECT_EQ(naive_unsat(r.formula) == 0, naive_unsat(h) == 0);
        auto h2 = h;
        const std::size_t which = rng() % 3;
        h2.edges[which].polys[0].set_constant(true);
        auto r2 = hypergraph_to_3sat(h2);
        EXPECT_EQ(factor_graph_of(r.formula), factor_graph_of(r2.formula));
        std::size_t diff = 0;
        for (std::size_t c = 0; c < r.formula.clauses.size(); ++c) {
            if (r.formula.clauses[c] == r2.formula.clauses[c]) continue;
            ++diff;
            EXPECT_EQ(r.formula.clauses[c].slots.size(), 1U);
        }
        EXPECT_EQ(diff, 1U);
        for (std::uint64_t a = 0; a < 16; ++a) {
            auto w = bits_of(a, 4);
            if (satisfied_by(h, w)) EXPECT_TRUE(r.formula.satisfied_by(lift_hypergraph2formula(h, r, w)));
        }
    }
}

TEST(DoubleGap, CompletenessAndStructure) {
    std::mt19937_64 rng(40);
    FgprParams p;
    p.walk_samples = p.tuple_samples = 24;
    p.seed = 5;
    p.measure = false;
    auto f = random_formula(rng, 3, 2);
    auto r = double_gap_trace(f, p);
    for (std::uint64_t a = 0; a < 8; ++a) {
        auto bits = bits_of(a, 3);
        if (f.satisfied_by(bits)) EXPECT_TRUE(r.formula.formula.satisfied_by(lift_double_gap(f, r, bits)));
    }
    auto g = repolarize(f, rng);
    EXPECT_EQ(factor_graph_of(double_gap(f, p)), factor_graph_of(double_gap(g, p)));
    EXPECT_EQ(double_gap(f, p), double_gap(f, p));
    auto sizes = stage_sizes(f, r);
    EXPECT_EQ(sizes.size(), 7U);
}

// Sampled alphabet reduction keeps only a few tuples, so the end formula may be satisfiable;
// the gap must survive up to powering, where brute force still fits.
TEST(DoubleGap, UnsatisfiableInputKeepsAGapThroughPowering) {
    CnfFormula f;
    f.n = 1;
    f.add({pos(1)});
    f.add({neg(1)});
    FgprParams p;
    p.walk_samples = p.tuple_samples = 64;
    p.seed = 9;
    auto r = double_gap_trace(f, p);
    EXPECT_GT(brute_force_unsat(r.graph), 0);
    EXPECT_GT(brute_force_unsat(r.expanded.graph), 0);
    EXPECT_GT(brute_force_unsat(r.powered.graph), 0);
}

TEST(Amplify, RoundSeedsFollowTheGlobalSeed) {
    CnfFormula f;
    f.n = 2;
    f.add({pos(1), pos(2)});
    FgprParams p;
    p.walk_samples = p.tuple_samples = 8;
    p.seed = 3;
    p.measure = false;
    auto a = amplify(f, 2, p);
    EXPECT_EQ(a.rounds.size(), 2U);
    EXPECT_EQ(a.round_seeds[0], derive_seed(std::uint64_t{3}, std::uint64_t{0}));
    EXPECT_EQ(a.round_seeds[1], derive_seed(std::uint64_t{3}, std::uint64_t{1}));
    EXPECT_TRUE(is_satisfiable(a.output));
}
