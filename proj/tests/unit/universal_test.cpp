#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace ufg;
using namespace testing_support;

TEST(PolyUniversal, CountsForSmallN) {
    for (std::uint32_t n : {1U, 2U, 3U}) {
        auto u = build_poly_universal(n);
        EXPECT_EQ(u.fg.n, n + n * n * n);
        EXPECT_EQ(u.fg.slots.size(), 2 * n * n * n);
        for (const auto& s : u.fg.slots) EXPECT_EQ(s.size(), 3U);
    }
    EXPECT_THROW(build_poly_universal(0), Error);
    EXPECT_THROW(build_poly_universal(100, 1000), CapExceeded);
}

namespace {

/// One clause per variable set, so every clause finds a free tuple.
CnfFormula distinct_clauses(const CnfFormula& f) {
    CnfFormula out;
    out.n = f.n;
    std::set<std::vector<std::uint32_t>> seen;
    for (const auto& c : f.clauses) {
        std::vector<std::uint32_t> key;
        for (auto l : c.slots) key.push_back(l.var);
        std::sort(key.begin(), key.end());
        if (seen.insert(key).second) out.add(c.slots, c.weight);
    }
    return out;
}

}  // namespace

TEST(PolyUniversal, EmbeddingIsEquisatisfiable) {
    std::mt19937_64 rng(20);
    auto u = build_poly_universal(3);
    for (int rep = 0; rep < 60; ++rep) {
        auto f = distinct_clauses(random_formula(rng, 3, 1 + rng() % 5, 1 + rng() % 3));
        auto g = apply_polarities(u.fg, embed_poly(u, f));
        EXPECT_EQ(is_satisfiable(g), naive_sat(f)) << emit_cnf(f);
    }
}

TEST(PolyUniversal, DuplicateTriplesUseAnotherOrdering) {
    auto u = build_poly_universal(2);
    CnfFormula f;
    f.n = 2;
    f.add({pos(1), pos(2)});
    f.add({neg(1), neg(2)});
    auto g = apply_polarities(u.fg, embed_poly(u, f));
    EXPECT_EQ(is_satisfiable(g), naive_sat(f));
    CnfFormula too_many;
    too_many.n = 1;
    for (int i = 0; i < 2; ++i) too_many.add({pos(1)});
    auto u1 = build_poly_universal(1);
    EXPECT_THROW(embed_poly(u1, too_many), Error);
}

TEST(SortingNetwork, ZeroOnePrinciple) {
    for (std::uint32_t m = 1; m <= 10; ++m) {
        auto net = batcher_network(m);
        for (auto [i, j] : net) {
            EXPECT_LT(i, j);
            EXPECT_LT(j, m);
        }
        for (std::uint32_t mask = 0; mask < (1U << m); ++mask) {
            std::vector<int> keys(m);
            for (std::uint32_t i = 0; i < m; ++i) keys[i] = (mask >> i) & 1U;
            apply_network(net, keys);
            EXPECT_TRUE(std::is_sorted(keys.begin(), keys.end())) << "m=" << m << " mask=" << mask;
        }
    }
}

namespace {

/// Literal picked by the selector bits, or nothing when they alias past the clause.
Literal picked(const CnfFormula& f, std::uint32_t clause, std::uint32_t sel) {
    auto cl = padded_clauses(f)[clause];
    return cl[std::min<std::uint32_t>(sel, 2)];
}

}  // namespace

TEST(Circuit, OutputIsConsistencyOfPickedLiterals) {
    std::mt19937_64 rng(21);
    for (std::uint32_t m = 1; m <= 3; ++m) {
        auto c = build_consistency_circuit(3, m);
        for (int rep = 0; rep < 20; ++rep) {
            auto f = random_formula(rng, 3, m, 1 + rng() % 3);
            auto rep_bits = representation_bits(circuit_to_3cnf(c), f);
            for (std::uint32_t sel = 0; sel < (1U << (2 * m)); ++sel) {
                std::vector<std::uint8_t> in(rep_bits.begin(), rep_bits.end());
                std::vector<Literal> chosen;
                for (std::uint32_t cl = 0; cl < m; ++cl) {
                    std::uint32_t s = (sel >> (2 * cl)) & 3U;
                    in.push_back(s & 1U);
                    in.push_back(s >> 1);
                    chosen.push_back(picked(f, cl, s));
                }
                bool consistent = true;
                for (auto a : chosen)
                    for (auto b : chosen)
                        if (a.var == b.var && a.negated != b.negated) consistent = false;
                EXPECT_EQ(evaluate(c, in)[c.output] != 0, consistent);
            }
        }
    }
}

TEST(Circuit, TemplateIsEquisatisfiableAndFactorGraphFixed) {
    std::mt19937_64 rng(22);
    auto c = build_consistency_circuit(3, 2);
    auto t = circuit_to_3cnf(c);
    std::optional<FactorGraph> first;
    for (int rep = 0; rep < 40; ++rep) {
        auto f = random_formula(rng, 3, 2, 1 + rng() % 3);
        auto g = instantiate(t, f);
        if (!first) first = factor_graph_of(g);
        EXPECT_EQ(factor_graph_of(g), *first);
        EXPECT_EQ(is_satisfiable(g), naive_sat(f));
        for (std::uint64_t a = 0; a < 8; ++a) {
            auto bits = bits_of(a, 3);
            if (!f.satisfied_by(bits)) continue;
            auto lifted = lift_to_template(c, t, f, bits);
            ASSERT_TRUE(lifted.has_value());
            EXPECT_TRUE(g.satisfied_by(*lifted));
        }
    }
    CnfFormula wrong;
    wrong.n = 3;
    wrong.add({pos(1), pos(2), pos(3)});
    EXPECT_THROW(instantiate(t, wrong), Error);
}

TEST(Circuit, PolarityFlipTouchesOneRepresentationBit) {
    auto t = circuit_to_3cnf(build_consistency_circuit(3, 2));
    CnfFormula f;
    f.n = 3;
    f.add({pos(1), pos(2), pos(3)});
    f.add({neg(1), pos(2), neg(3)});
    auto g = f;
    g.clauses[0].slots[1].negated = true;
    auto a = instantiate(t, f), b = instantiate(t, g);
    std::size_t diff = 0;
    for (std::size_t i = 0; i < a.clauses.size(); ++i) diff += !(a.clauses[i] == b.clauses[i]);
    EXPECT_EQ(diff, 1U);
}

TEST(Sparsify, AlphaSatisfiesItsDefiningInequality) {
    for (std::uint32_t n : {5U, 10U, 40U}) {
        auto a = sparsify_alpha(n, make_rational(3, 10));
        const double rhs = 48.0 * std::pow(double(n), 0.3);
        EXPECT_GT(double(a) / std::log2(4.0 * a), rhs);
        EXPECT_LE(double(a - 1) / std::log2(4.0 * (a - 1)), rhs);
    }
}

TEST(Sparsify, DisjunctionIsEquisatisfiableUnderAggressiveThresholds) {
    std::mt19937_64 rng(23);
    for (int rep = 0; rep < 40; ++rep) {
        auto f = random_formula(rng, 6, 8 + rng() % 20, 2 + rng() % 2);
        SparsifyParams p;
        p.theta = {3, 2};
        auto r = sparsify(f, p);
        EXPECT_LE(r.branches.size(), 64U);
        bool any = false;
        for (const auto& b : r.branches) {
            any = any || naive_sat(b);
            // every branch implies the input
            for (std::uint64_t a = 0; a < 64; ++a)
                if (b.satisfied_by(bits_of(a, 6))) EXPECT_TRUE(f.satisfied_by(bits_of(a, 6)));
        }
        EXPECT_EQ(any, naive_sat(f));
    }
}

TEST(Sparsify, RejectsBadInput) {
    CnfFormula f;
    f.n = 4;
    f.add({pos(1), pos(2), pos(3), pos(4)});
    EXPECT_THROW(sparsify(f, {}), Error);
    SparsifyParams p;
    p.epsilon = 0;
    CnfFormula g;
    g.n = 1;
    g.add({pos(1)});
    EXPECT_THROW(sparsify(g, p), Error);
}
