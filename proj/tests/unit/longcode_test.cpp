#include <gtest/gtest.h>

#include "helpers.hpp"

using namespace ufg;
using namespace testing_support;

namespace {

/// Fraction of (f, g) with B_f + B_g != B_{f+g}, counted directly.
Rational direct_failure(const std::vector<std::uint8_t>& b) {
    std::size_t bad = 0;
    for (std::size_t f = 0; f < b.size(); ++f)
        for (std::size_t g = 0; g < b.size(); ++g) bad += (b[f] ^ b[g]) != b[f ^ g];
    return Rational(BigInt(bad), BigInt(b.size() * b.size()));
}

}  // namespace

TEST(LongCode, EncodingReadsTheFunctionAtThePoint) {
    for (std::uint32_t n = 1; n <= 3; ++n)
        for (std::uint32_t x = 0; x < point_count(n); ++x) {
            auto w = encode_long_code(n, x);
            ASSERT_EQ(w.table.size(), function_count(n));
            for (std::uint32_t f = 0; f < function_count(n); ++f) EXPECT_EQ(w.table[f], (f >> x) & 1U);
        }
    EXPECT_THROW(function_count(5), CapExceeded);
    EXPECT_THROW(encode_long_code(2, 4), Error);
}

TEST(Folding, IdentitiesOverRandomBases) {
    std::mt19937_64 rng(50);
    for (std::uint32_t n = 1; n <= 3; ++n)
        for (int rep = 0; rep < 30; ++rep) {
            FoldingBasis basis{n, {{all_ones(n), static_cast<std::uint8_t>(rng() & 1U)}}};
            for (int extra = 0; extra < 2; ++extra) {
                std::uint32_t h = rng() % function_count(n);
                basis.pairs.emplace_back(h, rng() & 1U);
                try {
                    Folding probe(basis);
                } catch (const Error&) {
                    basis.pairs.pop_back();
                }
            }
            Folding folding(basis);
            std::vector<std::uint8_t> stored(function_count(n));
            for (auto& s : stored) s = rng() & 1U;
            auto B = fold_table(stored, folding);
            for (std::uint32_t f = 0; f < function_count(n); ++f) {
                for (auto [h, b] : basis.pairs) EXPECT_EQ(B[f ^ h], B[f] ^ b);
                EXPECT_LE(folding.mu(f), f);
                EXPECT_TRUE(folding.is_representative(folding.mu(f)));
            }
            EXPECT_EQ(folding.representatives().size(), function_count(n) >> basis.pairs.size());
        }
}

TEST(Folding, DependentBasisThrows) {
    FoldingBasis b{2, {{3, 0}, {5, 0}, {6, 1}}};
    EXPECT_THROW(Folding{b}, Error);
    EXPECT_THROW(Folding(FoldingBasis{2, {{0, 0}}}), Error);
}

TEST(Folding, LongCodeOfSatisfyingPointIsUnchanged) {
    // (h, b) with h(x) = b fixes LC(x); folding over true always fixes it.
    for (std::uint32_t x = 0; x < 4; ++x)
        for (std::uint32_t h = 1; h < 16; ++h) {
            if (h == all_ones(2)) continue;
            const std::uint8_t b = (h >> x) & 1U;
            Folding folding(FoldingBasis{2, {{all_ones(2), 1}, {h, b}}});
            auto lc = encode_long_code(2, x).table;
            EXPECT_EQ(fold_table(lc, folding), lc);
        }
}

TEST(Folding, ViolatingPointIsHalfFar) {
    for (std::uint32_t h = 1; h < 15; ++h)
        for (std::uint8_t b = 0; b < 2; ++b) {
            Folding folding(FoldingBasis{2, {{all_ones(2), 1}, {h, b}}});
            auto reps = folding.representatives();
            for (std::uint32_t mask = 0; mask < (1U << reps.size()); ++mask) {
                std::vector<std::uint8_t> stored(16, 0);
                for (std::size_t i = 0; i < reps.size(); ++i) stored[reps[i]] = (mask >> i) & 1U;
                auto B = fold_table(stored, folding);
                for (std::uint32_t x = 0; x < 4; ++x)
                    if (((h >> x) & 1U) != b) EXPECT_GE(distance(B, encode_long_code(2, x).table), make_rational(1, 2));
            }
        }
}

TEST(Delta, BreakpointAndShape) {
    EXPECT_EQ(delta_lower_bound(make_rational(5, 16)), make_rational(45, 128));
    EXPECT_EQ(delta_lower_bound(0), 0);
    EXPECT_EQ(delta_lower_bound(make_rational(1, 2)), make_rational(1, 2));
    EXPECT_EQ(delta_lower_bound(make_rational(1, 4)), make_rational(3, 8));
    EXPECT_THROW(delta_lower_bound(make_rational(-1, 8)), Error);
    // Continuity at both breakpoints.
    EXPECT_EQ(3 * make_rational(5, 16) - 6 * make_rational(25, 256), make_rational(45, 128));
    EXPECT_EQ(delta_lower_bound(make_rational(45, 128)), make_rational(45, 128));
}

TEST(Linearity, SpectralFormulaMatchesDirectCount) {
    std::mt19937_64 rng(51);
    for (std::uint32_t n = 1; n <= 3; ++n)
        for (int rep = 0; rep < 20; ++rep) {
            std::vector<std::uint8_t> b(function_count(n));
            for (auto& v : b) v = rng() & 1U;
            EXPECT_EQ(linearity_failure(b), direct_failure(b));
        }
    for (std::uint32_t S = 0; S < 16; ++S) EXPECT_EQ(linearity_failure(character(2, S)), 0);
}

TEST(Linearity, CodesAndDistances) {
    auto code = folded_affine_code(2);
    EXPECT_EQ(code.size(), 16U);  // 8 odd subsets, each with its complement
    for (const auto& c : code) {
        Folding folding(FoldingBasis{2, {{all_ones(2), 1}}});
        EXPECT_EQ(fold_table(c, folding), c);
    }
    auto lc = encode_long_code(2, 1).table;
    auto [near, d] = nearest_in_code(lc, code);
    EXPECT_EQ(d, 0);
    EXPECT_EQ(near, lc);
    EXPECT_EQ(long_codes_within(lc, 2, 0), 1U);
    EXPECT_EQ(long_codes_within(lc, 2, 1), 4U);
    EXPECT_THROW(distance({1, 0}, {1}), Error);
}

TEST(ObliviousSplit, PolarityMovesOnlyIntoEqualities) {
    Clause c{{pos(1), neg(2), pos(3)}, 1};
    auto s = oblivious_split(c, 3);
    Clause d{{neg(1), pos(2), pos(3)}, 1};
    auto t = oblivious_split(d, 3);
    EXPECT_EQ(s.shadow, t.shadow);
    for (std::size_t i = 0; i < 3; ++i) {
        EXPECT_EQ(s.equalities[i].y, t.equalities[i].y);
        EXPECT_EQ(s.equalities[i].x, t.equalities[i].x);
    }
    // Projected onto x, the split is satisfiable exactly where the clause is.
    for (std::uint64_t a = 0; a < 8; ++a) {
        bool any = false;
        for (std::uint64_t y = 0; y < 8; ++y) {
            Bits bits = bits_of(a | (y << 3), 6);
            any = any || s.satisfied_by(bits);
        }
        EXPECT_EQ(any, clause_satisfied(Kind::Sat, c, bits_of(a, 3)));
    }
}

TEST(Solidity, HonestTablesAreSolid) {
    DomainConstraint c{2, 0b0110, true};  // x0 xor x1 = 1
    for (std::uint32_t x = 0; x < 4; ++x) {
        auto A = encode_long_code(2, x).table;
        for (std::uint32_t bit = 0; bit < 2; ++bit) {
            auto D = encode_long_code(1, (x >> bit) & 1U).table;
            EXPECT_EQ(is_solid(A, D, c, bit, make_rational(1, 4)), constraint_holds(c, x));
        }
    }
}

TEST(Verifier, ClauseListsAcceptHonestAnswers) {
    for (std::uint32_t x = 0; x < 4; ++x) {
        auto lc = encode_long_code(2, x).table;
        Bits a(16);
        for (std::uint32_t f = 0; f < 16; ++f) a[f] = lc[f];
        auto A = [](std::uint32_t f) { return pos(f + 1); };
        for (std::uint32_t f = 0; f < 16; ++f)
            for (std::uint32_t g = 0; g < 16; ++g) {
                for (const auto& cl : linearity_test(A, f, g)) EXPECT_TRUE(clause_satisfied(Kind::Sat, cl, a));
                for (std::uint32_t h = 0; h < 16; h += 5)
                    for (const auto& cl : product_test(A, f, g, h)) EXPECT_TRUE(clause_satisfied(Kind::Sat, cl, a));
            }
    }
}

TEST(Verifier, HonestProversSatisfyTheFormula) {
    ConstraintHypergraph h;
    h.vertex_count = 3;
    h.k = 1;
    GF2Poly p = GF2Poly::var({0, 0}) + GF2Poly::var({1, 0});
    p.set_constant(true);
    h.add_edge({0, 1}, {p});
    h.add_edge({1, 2}, {GF2Poly::product({1, 0}, {2, 0})});
    VerifierParams vp;
    auto r = build_verifier_formula(h, vp);
    EXPECT_EQ(r.sampled, (std::vector<std::uint8_t>{0, 0}));
    for (std::uint64_t a = 0; a < 8; ++a) {
        auto w = bits_of(a, 3);
        if (satisfied_by(h, w)) EXPECT_TRUE(r.formula.satisfied_by(lift_verifier(r, w)));
    }
    EXPECT_EQ(r.formula.total_weight(), 1);
}

TEST(Verifier, StructureIgnoresConstants) {
    ConstraintHypergraph h;
    h.vertex_count = 4;
    h.k = 1;
    GF2Poly p = GF2Poly::product({0, 0}, {1, 0}) + GF2Poly::var({2, 0}) + GF2Poly::var({3, 0});
    h.add_edge({0, 1, 2, 3}, {p});
    auto g = h;
    g.edges[0].polys[0].set_constant(true);
    VerifierParams vp;
    vp.seed = 4;
    auto a = build_verifier_formula(h, vp), b = build_verifier_formula(g, vp);
    EXPECT_EQ(factor_graph_of(a.formula), factor_graph_of(b.formula));
    EXPECT_EQ(a.sampled[0], 1U);
    auto wide = h;
    wide.k = 2;
    wide.vertex_count = 2;
    EXPECT_THROW(build_verifier_formula(wide, vp), Error);
}
