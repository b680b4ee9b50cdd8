#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ufg/core.hpp"
#include "ufg/error.hpp"
#include "ufg/hypergraph.hpp"

namespace ufg {

/// Auxiliary variable definition: value = a AND b, or a XOR b (1-based variable ids).
struct AuxDef {
    bool is_and = true;
    std::uint32_t a = 0;
    std::uint32_t b = 0;
};

struct Hypergraph2FormulaResult {
    CnfFormula formula;
    std::uint32_t vertex_count = 0;
    std::uint32_t edge_count = 0;
    std::vector<AuxDef> aux;  // variable vertex_count + edge_count + 1 + i
    std::size_t rank = 0;
};

/// 1-restricted hypergraph over F_2 to 3CNF. Vertex v is variable v+1, edge e owns w_e = |V|+1+e.
/// Each edge gets a clause block forcing P_hom + w_e = 0 and then the unit clause w_e (b = 1) or its negation.
/// Blocks over at most two vertices are truth tables; wider ones go through AND and XOR auxiliaries.
inline Hypergraph2FormulaResult hypergraph_to_3sat(const ConstraintHypergraph& h) {
    h.validate();
    if (!h.restricted() || h.k != 1) throw Error("Hypergraph2Formula needs a 1-restricted hypergraph over F_2");
    Hypergraph2FormulaResult r;
    r.vertex_count = h.vertex_count;
    r.edge_count = static_cast<std::uint32_t>(h.edges.size());
    r.rank = h.rank();
    CnfFormula& f = r.formula;
    f.n = h.vertex_count + r.edge_count;
    auto var_of = [](Coord c) { return c.vertex + 1; };
    auto fresh = [&](AuxDef d) {
        r.aux.push_back(d);
        return ++f.n;
    };
    auto lit = [](std::uint32_t v, bool value_forbidden) { return Literal{v, value_forbidden}; };
    auto xor3_zero = [&](std::uint32_t a, std::uint32_t b, std::uint32_t c, const Rational& wt) {
        f.add({neg(a), pos(b), pos(c)}, wt);
        f.add({pos(a), neg(b), pos(c)}, wt);
        f.add({pos(a), pos(b), neg(c)}, wt);
        f.add({neg(a), neg(b), neg(c)}, wt);
    };
    for (std::uint32_t e = 0; e < r.edge_count; ++e) {
        const auto& edge = h.edges[e];
        if (edge.polys.size() > 1) throw Error("edge " + std::to_string(e) + " carries more than one polynomial");
        GF2Poly p = edge.polys.empty() ? GF2Poly() : edge.polys.front();
        const bool b = p.constant();
        p.set_constant(false);
        const std::uint32_t w = h.vertex_count + 1 + e;
        const Rational& wt = edge.weight;
        auto coords = p.coords();
        if (coords.size() <= 2) {
            // forbid every (S, w) pattern with w != P_hom(S)
            for (std::uint32_t s = 0; s < (1U << coords.size()); ++s) {
                auto bit = [&](Coord c) {
                    for (std::size_t i = 0; i < coords.size(); ++i)
                        if (coords[i] == c) return ((s >> i) & 1U) != 0;
                    return false;
                };
                bool val = p.evaluate(bit);
                std::vector<Literal> cl;
                for (std::size_t i = 0; i < coords.size(); ++i) cl.push_back(lit(var_of(coords[i]), (s >> i) & 1U));
                cl.push_back(Literal{w, !val});
                f.add(std::move(cl), wt);
            }
        } else {
            std::vector<std::uint32_t> terms;
            for (const auto& mono : p.monomials()) {
                if (mono.linear()) {
                    terms.push_back(var_of(mono.lo));
                    continue;
                }
                std::uint32_t x = var_of(mono.lo), y = var_of(mono.hi);
                std::uint32_t g = fresh({true, x, y});
                f.add({neg(g), pos(x)}, wt);
                f.add({neg(g), pos(y)}, wt);
                f.add({pos(g), neg(x), neg(y)}, wt);
                terms.push_back(g);
            }
            if (terms.size() == 1) {
                f.add({neg(terms[0]), pos(w)}, wt);
                f.add({pos(terms[0]), neg(w)}, wt);
            } else {
                std::uint32_t acc = terms[0];
                for (std::size_t i = 1; i + 1 < terms.size(); ++i) {
                    std::uint32_t s = fresh({false, acc, terms[i]});
                    xor3_zero(acc, terms[i], s, wt);
                    acc = s;
                }
                xor3_zero(acc, terms.back(), w, wt);
            }
        }
        f.add({Literal{w, !b}}, wt);
    }
    const std::size_t bound = ((std::size_t{1} << r.rank) + 1) * h.size();
    if (f.n + f.clauses.size() > bound) throw Error("Hypergraph2Formula exceeded its (2^h + 1)|H| size bound");
    return r;
}

/// Same vertex values, w_e = P_hom(u), auxiliaries by their definitions.
inline Bits lift_hypergraph2formula(const ConstraintHypergraph& h, const Hypergraph2FormulaResult& r,
                                    const WordAssignment& a) {
    Bits out(r.formula.n, 0);
    for (std::uint32_t v = 0; v < r.vertex_count; ++v) out[v] = a[v];
    for (std::uint32_t e = 0; e < r.edge_count; ++e) {
        const auto& edge = h.edges[e];
        if (edge.polys.empty()) continue;
        GF2Poly p = edge.polys.front();
        p.set_constant(false);
        out[r.vertex_count + e] = p.evaluate([&](Coord c) { return a[c.vertex] != 0; });
    }
    const std::uint32_t base = r.vertex_count + r.edge_count;
    for (std::size_t i = 0; i < r.aux.size(); ++i) {
        const auto& d = r.aux[i];
        bool x = out[d.a - 1], y = out[d.b - 1];
        out[base + i] = d.is_and ? (x && y) : (x != y);
    }
    return out;
}

}  // namespace ufg
