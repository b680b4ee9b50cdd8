#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include "ufg/core.hpp"
#include "ufg/error.hpp"
#include "ufg/hypergraph.hpp"
#include "ufg/longcode.hpp"
#include "ufg/random.hpp"
#include "ufg/rational.hpp"

namespace ufg {

using ClauseQuad = std::array<Clause, 4>;

/// Maps a function to the literal that reads its folded value; its negation reads the complement.
template <typename Reader>
ClauseQuad linearity_test(Reader&& A, std::uint32_t f, std::uint32_t g) {
    Literal a = A(f), b = A(g), c = A(f ^ g);
    return {Clause{{~a, ~b, ~c}}, Clause{{~a, b, c}}, Clause{{a, ~b, c}}, Clause{{a, b, ~c}}};
}

template <typename Reader>
ClauseQuad product_test(Reader&& A, std::uint32_t f, std::uint32_t g, std::uint32_t h) {
    Literal af = A(f), ah = A(h), x = A((f & g) ^ h), y = A((f & g) ^ g ^ h);
    return {Clause{{af, ~x, ah}}, Clause{{af, x, ~ah}}, Clause{{~af, ~y, ah}}, Clause{{~af, y, ~ah}}};
}

/// g is g' lifted to the constraint domain; d reads D_{g'}.
template <typename Reader>
ClauseQuad consistency_test(Reader&& A, std::uint32_t f, std::uint32_t g, Literal d) {
    Literal af = A(f), ag = A(g ^ f);
    return {Clause{{~af, ~ag, ~d}}, Clause{{~af, ag, d}}, Clause{{af, ~ag, d}}, Clause{{af, ag, ~d}}};
}

/// g'(x_bit) as a function on n domain bits.
inline std::uint32_t lift_bit_function(std::uint32_t n, std::uint32_t bit, std::uint32_t g1) {
    std::uint32_t g = 0;
    for (std::uint32_t x = 0; x < point_count(n); ++x)
        if (eval_function(g1, (x >> bit) & 1U)) g |= 1U << x;
    return g;
}

struct VerifierParams {
    std::uint64_t seed = 0;
    std::uint32_t samples = 8;  // instances per test per constraint (per bit for test 3) when the domain has 3 or 4 bits
    Rational n1 = make_rational(3, 10);
    Rational n2 = make_rational(4, 10);
    Rational n3 = make_rational(3, 10);
};

/// Variable of the verifier formula: a representative A entry of constraint `owner` (kind 0)
/// or the D entry of vertex `owner` at g' in F_1 (kind 1).
struct VerifierVar {
    std::uint8_t kind = 0;
    std::uint32_t owner = 0;
    std::uint32_t fn = 0;

    friend auto operator<=>(const VerifierVar&, const VerifierVar&) = default;
};

struct VerifierResult {
    CnfFormula formula;
    std::vector<VerifierVar> vars;
    std::vector<std::vector<std::uint32_t>> domains;  // per constraint, its distinct vertices
    std::vector<std::uint8_t> dependent;              // basis {1, h_c} dependent: placeholders emitted
    std::vector<std::uint8_t> sampled;
    std::array<std::size_t, 3> test_counts{};
};

inline DomainConstraint domain_constraint(const HyperEdge& e, const std::vector<std::uint32_t>& domain) {
    DomainConstraint c;
    c.n = static_cast<std::uint32_t>(domain.size());
    GF2Poly p = e.polys.empty() ? GF2Poly() : e.polys.front();
    c.b = p.constant();
    p.set_constant(false);
    for (std::uint32_t x = 0; x < point_count(c.n); ++x) {
        bool v = p.evaluate([&](Coord co) {
            for (std::uint32_t i = 0; i < c.n; ++i)
                if (domain[i] == co.vertex) return ((x >> i) & 1U) != 0;
            return false;
        });
        if (v) c.h |= 1U << x;
    }
    return c;
}

/// Inner-verifier formula for the u = 1 game on a rank <= 4, 1-restricted hypergraph over F_2.
/// A for constraint c is folded over (1, h_c), (1, b_c), D is the unfolded F_1 table of each vertex.
/// Variable positions depend only on the homogeneous parts h_c; the constants b_c land in polarities.
inline VerifierResult build_verifier_formula(const ConstraintHypergraph& h, const VerifierParams& p) {
    h.validate();
    if (!h.restricted() || h.k != 1 || h.restriction() > 1) throw Error("verifier needs a 1-restricted hypergraph over F_2");
    if (h.rank() > kLongCodeCap) throw CapExceeded("verifier domains are capped at 4 bits");
    VerifierResult r;
    r.formula.kind = Kind::Sat;
    const Rational total = h.total_weight();
    if (total <= 0) throw Error("verifier needs positive total weight");
    std::map<VerifierVar, std::uint32_t> ids;
    auto var = [&](VerifierVar v) {
        auto [it, fresh] = ids.try_emplace(v, static_cast<std::uint32_t>(r.vars.size() + 1));
        if (fresh) r.vars.push_back(v);
        return it->second;
    };
    for (std::uint32_t ci = 0; ci < h.edges.size(); ++ci) {
        const auto& e = h.edges[ci];
        std::vector<std::uint32_t> domain;
        for (auto v : e.verts)
            if (std::find(domain.begin(), domain.end(), v) == domain.end()) domain.push_back(v);
        if (domain.empty()) throw Error("constraint " + std::to_string(ci) + " has no vertices");
        r.domains.push_back(domain);
        const auto dc = domain_constraint(e, domain);
        const std::uint32_t n = dc.n, count = function_count(n);
        const bool dependent = dc.h == 0;  // h_c in span{1}: homogeneous parts never equal the constant 1
        r.dependent.push_back(dependent);
        FoldingBasis basis{n, {{all_ones(n), 1}}};
        if (!dependent) basis.pairs.emplace_back(dc.h, dc.b);
        const Folding folding(basis);
        auto A = [&](std::uint32_t f) {
            return Literal{var({0, ci, folding.mu(f)}), folding.shift(f)};
        };
        const bool sampled = n > 2;
        r.sampled.push_back(sampled);
        Rng rng(derive_seed(ci, p.seed));
        const Rational omega = e.weight / total;
        auto push = [&](const ClauseQuad& q, const Rational& w, std::size_t test) {
            for (auto c : q) {
                if (dependent) c.slots = {c.slots[0], ~c.slots[0], c.slots[2]};  // always satisfied, same shape
                c.weight = w / 4;
                r.formula.clauses.push_back(std::move(c));
            }
            ++r.test_counts[test];
        };
        // test 1
        {
            std::vector<std::pair<std::uint32_t, std::uint32_t>> inst;
            if (sampled)
                for (std::uint32_t s = 0; s < p.samples; ++s) {
                    auto f = static_cast<std::uint32_t>(rng.below(count));
                    inst.emplace_back(f, static_cast<std::uint32_t>(rng.below(count)));
                }
            else
                for (std::uint32_t f = 0; f < count; ++f)
                    for (std::uint32_t g = 0; g < count; ++g) inst.emplace_back(f, g);
            const Rational w = omega * p.n1 / inst.size();
            for (auto [f, g] : inst) push(linearity_test(A, f, g), w, 0);
        }
        // test 2
        {
            std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> inst;
            if (sampled)
                for (std::uint32_t s = 0; s < p.samples; ++s) {
                    auto f = static_cast<std::uint32_t>(rng.below(count));
                    auto g = static_cast<std::uint32_t>(rng.below(count));
                    inst.emplace_back(f, g, static_cast<std::uint32_t>(rng.below(count)));
                }
            else
                for (std::uint32_t f = 0; f < count; ++f)
                    for (std::uint32_t g = 0; g < count; ++g)
                        for (std::uint32_t hh = 0; hh < count; ++hh) inst.emplace_back(f, g, hh);
            const Rational w = omega * p.n2 / inst.size();
            for (auto [f, g, hh] : inst) push(product_test(A, f, g, hh), w, 1);
        }
        // test 3, one block per bit of the constraint
        for (std::uint32_t bit = 0; bit < n; ++bit) {
            std::vector<std::pair<std::uint32_t, std::uint32_t>> inst;
            if (sampled)
                for (std::uint32_t s = 0; s < p.samples; ++s) {
                    auto f = static_cast<std::uint32_t>(rng.below(count));
                    inst.emplace_back(f, static_cast<std::uint32_t>(rng.below(function_count(1))));
                }
            else
                for (std::uint32_t f = 0; f < count; ++f)
                    for (std::uint32_t g1 = 0; g1 < function_count(1); ++g1) inst.emplace_back(f, g1);
            const Rational w = omega * p.n3 / n / inst.size();
            for (auto [f, g1] : inst) {
                Literal d{var({1, domain[bit], g1}), false};
                push(consistency_test(A, f, lift_bit_function(n, bit, g1), d), w, 2);
            }
        }
    }
    r.formula.n = static_cast<std::uint32_t>(r.vars.size());
    return r;
}

/// Honest provers: A is the long code of each constraint's restriction, D the long code of each vertex bit.
inline Bits lift_verifier(const VerifierResult& r, const WordAssignment& a) {
    Bits out(r.vars.size(), 0);
    for (std::size_t i = 0; i < r.vars.size(); ++i) {
        const auto& v = r.vars[i];
        if (v.kind == 0) {
            std::uint32_t x = 0;
            const auto& dom = r.domains[v.owner];
            for (std::uint32_t j = 0; j < dom.size(); ++j)
                if (a[dom[j]]) x |= 1U << j;
            out[i] = eval_function(v.fn, x);
        } else {
            out[i] = eval_function(v.fn, a[v.owner] ? 1 : 0);
        }
    }
    return out;
}

}  // namespace ufg
