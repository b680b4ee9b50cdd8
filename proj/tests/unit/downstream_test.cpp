#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace ufg;
using namespace testing_support;

TEST(EkSat, WeightAlgebra) {
    std::mt19937_64 rng(60);
    for (auto [k, g] : std::vector<std::pair<std::uint32_t, Rational>>{{4, make_rational(1, 16)}, {5, make_rational(1, 32)}, {6, make_rational(1, 9)}}) {
        auto f = random_formula(rng, 5, 4);
        EkSatParams p;
        p.k = k;
        p.gamma = g;
        auto r = eksat_reduce(f, p);
        const Rational expect = Rational((1 << (k - 3)) - 1) + 1 / (8 * g);
        EXPECT_EQ(r.formula.total_weight(), expect);
        EXPECT_EQ(eksat_total_weight(k, g), expect);
        EXPECT_TRUE(is_exact(r.formula, k));
        EXPECT_EQ(r.formula.clauses.size(), f.clauses.size() + 8 * ((1U << (k - 3)) - 1));
    }
}

TEST(EkSat, K4Example) {
    CnfFormula f;
    f.n = 3;
    f.add({pos(1), pos(2), pos(3)});
    auto r = eksat_reduce(f, EkSatParams{});
    EXPECT_EQ(r.formula.clauses.size(), 9U);
    EXPECT_EQ(r.formula.clauses[0].weight, 2);
    EXPECT_EQ(r.formula.clauses[0].slots.back(), neg(r.y(1)));
    for (std::size_t i = 1; i < 9; ++i) EXPECT_EQ(r.formula.clauses[i].slots[0], pos(r.y(1)));
}

TEST(EkSat, SatisfiabilityAndSoundness) {
    std::mt19937_64 rng(61);
    for (int rep = 0; rep < 30; ++rep) {
        auto f = random_formula(rng, 4, 2 + rng() % 5);
        auto r = eksat_reduce(f, EkSatParams{});
        EXPECT_EQ(naive_sat(r.formula), naive_sat(f));
        const Rational uf = naive_unsat(f);
        if (uf >= make_rational(1, 16)) EXPECT_GE(naive_unsat(r.formula) * r.formula.total_weight(), make_rational(1, 8));
    }
}

TEST(EkSat, RejectsBadParameters) {
    CnfFormula f;
    f.n = 3;
    f.add({pos(1), pos(2), pos(3)});
    EkSatParams p;
    p.gamma = make_rational(1, 8);
    EXPECT_THROW(eksat_reduce(f, p), Error);
    p = {};
    p.k = 3;
    EXPECT_THROW(eksat_reduce(f, p), Error);
    p = {};
    p.require_tight = true;
    p.epsilon = make_rational(1, 100);
    EXPECT_THROW(eksat_reduce(f, p), Error);
    CnfFormula g;
    g.n = 3;
    g.add({pos(1), pos(1), pos(3)});
    EXPECT_THROW(eksat_reduce(g, EkSatParams{}), Error);
}

TEST(EkSat, FactorGraphIgnoresInputPolarities) {
    std::mt19937_64 rng(62);
    auto f = random_formula(rng, 5, 5);
    auto base = factor_graph_of(eksat_reduce(f, EkSatParams{}).formula);
    for (int rep = 0; rep < 16; ++rep) EXPECT_EQ(factor_graph_of(eksat_reduce(repolarize(f, rng), EkSatParams{}).formula), base);
}

TEST(Unweight, DuplicatesWithFreshTriples) {
    std::mt19937_64 rng(63);
    auto f = random_formula(rng, 4, 8);
    auto r = eksat_reduce(f, EkSatParams{});
    auto u = unweight(r, make_rational(1, 8));
    EXPECT_EQ(u.copies, 1U);
    EXPECT_EQ(u.gamma_used, make_rational(1, 8));
    EXPECT_EQ(u.formula.clauses.size(), 8U + 8U);
    EXPECT_TRUE(is_exact(u.formula, 4));
    for (const auto& c : u.formula.clauses) EXPECT_EQ(c.weight, 1);
    EXPECT_EQ(naive_sat(u.formula), naive_sat(f));
    EXPECT_THROW(unweight(r, make_rational(3, 25)), Error);  // 24/25 rounds down to nothing
    EXPECT_THROW(unweight(r, make_rational(1, 5)), Error);
    EXPECT_THROW(unweight(r, make_rational(1, 16)), Error);
    auto f12 = random_formula(rng, 4, 12);
    auto v = unweight(eksat_reduce(f12, EkSatParams{}), make_rational(1, 9));  // 12/9 rounds down to one copy
    EXPECT_EQ(v.copies, 1U);
    EXPECT_EQ(v.gamma_used, make_rational(1, 12));
}

TEST(Unweight, SingleCopyKeepsTheLiterals) {
    std::mt19937_64 rng(64);
    for (int rep = 0; rep < 10; ++rep) {
        auto f = random_formula(rng, 4, 8);
        auto r = eksat_reduce(f, EkSatParams{});
        auto u = unweight(r, make_rational(1, 8));
        ASSERT_EQ(u.formula.clauses.size(), r.formula.clauses.size());
        EXPECT_EQ(u.formula.n, r.formula.n);
        for (std::size_t i = 0; i < r.formula.clauses.size(); ++i) EXPECT_EQ(u.formula.clauses[i].slots, r.formula.clauses[i].slots);
    }
    auto f = random_formula(rng, 4, 16);
    auto r = eksat_reduce(f, EkSatParams{});
    auto u = unweight(r, make_rational(1, 8));
    EXPECT_EQ(u.copies, 2U);
    EXPECT_EQ(u.formula.n, 4U + 1U + 6U);
    EXPECT_EQ(u.formula.clauses.size(), 16U + 16U);
    EXPECT_EQ(naive_sat(u.formula), naive_sat(f));
}

TEST(Chain, GadgetTruthTables) {
    // NAE(a,b,c,d) is equivalent to exists v: NAE(a,b,v) and NAE(c,d,~v).
    for (std::uint32_t x = 0; x < 16; ++x) {
        auto bit = [&](int i) { return (x >> i) & 1U; };
        bool nae4 = !(bit(0) == bit(1) && bit(1) == bit(2) && bit(2) == bit(3));
        bool split = false;
        for (std::uint32_t v = 0; v < 2; ++v) {
            bool l = !(bit(0) == bit(1) && bit(1) == v);
            bool r = !(bit(2) == bit(3) && bit(3) == !v);
            split = split || (l && r);
        }
        EXPECT_EQ(nae4, split);
    }
    // OR(a,b,c) is NAE(a,b,c,w) at w = 0; at w = 1 it is OR of the complements.
    for (std::uint32_t x = 0; x < 8; ++x) {
        const bool any = x != 0;
        CnfFormula f;
        f.n = 3;
        f.add({pos(1), pos(2), pos(3)});
        auto g = sat3_to_nae4(f);
        EXPECT_EQ(g.satisfied_by(bits_of(x, 4)), any);
    }
    // NAE(a,b,c): exactly two of the three equations hold, otherwise none.
    CnfFormula nae;
    nae.n = 3;
    nae.kind = Kind::Nae;
    nae.add({pos(1), pos(2), pos(3)});
    auto lin = nae3_to_lin2(nae);
    for (std::uint64_t x = 0; x < 8; ++x) {
        std::size_t held = 0;
        for (const auto& c : lin.clauses) held += naive_clause(Kind::Lin, c, x);
        EXPECT_EQ(held, naive_clause(Kind::Nae, nae.clauses[0], x) ? 2U : 0U);
    }
}

TEST(Chain, SatisfiabilityRelations) {
    std::mt19937_64 rng(65);
    for (int rep = 0; rep < 40; ++rep) {
        auto f = random_formula(rng, 4, 2 + rng() % 8, 1 + rng() % 3);
        auto g = sat3_to_nae4(f);
        EXPECT_EQ(naive_sat(g), naive_sat(f));
        auto h = nae4_to_nae3(g);
        EXPECT_EQ(naive_sat(h), naive_sat(g));
        auto l = nae3_to_lin2(h);
        // every NAE-satisfying assignment leaves exactly a third of the 2LIN weight unsatisfied
        const bool sat = naive_sat(h);
        bool two_thirds = false;
        for (std::uint64_t a = 0; a < (std::uint64_t{1} << l.n); ++a)
            if (l.unsatisfied_weight(bits_of(a, l.n)) * 3 == l.total_weight()) two_thirds = true;
        bool all_triples = std::all_of(h.clauses.begin(), h.clauses.end(), [](const Clause& c) { return c.slots.size() == 3; });
        if (all_triples) EXPECT_EQ(sat, two_thirds);
        EXPECT_EQ(run_chain(f, {"3sat", "nae4", "nae3", "lin2"}), l);
    }
    EXPECT_THROW(run_chain(CnfFormula{}, {"3sat", "nae3"}), Error);
    EXPECT_THROW(nae4_to_nae3(CnfFormula{}), Error);
}
