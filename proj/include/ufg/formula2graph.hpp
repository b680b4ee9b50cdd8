#pragma once

#include <cstdint>
#include <vector>

#include "ufg/core.hpp"
#include "ufg/error.hpp"
#include "ufg/hypergraph.hpp"

namespace ufg {

/// 3CNF to a 2-restricted constraint graph over F_2^3. Bit value 0 means "literal true".
/// Vertices: w_i per variable, then per clause u_ij,u_k (3 literals) or u_i,u_j (2 literals).
inline ConstraintHypergraph to_constraint_graph(const CnfFormula& phi) {
    if (phi.kind != Kind::Sat) throw Error("Formula2Graph needs a SAT-kind formula");
    phi.validate();
    ConstraintHypergraph h;
    h.k = 3;
    h.vertex_count = phi.n;
    auto A = [](std::uint32_t v, std::uint32_t bit) { return GF2Poly::var({v, bit}); };
    auto w = [](Literal l) { return l.var - 1; };
    auto b = [](Literal l) { return GF2Poly(l.negated); };
    for (std::size_t ci = 0; ci < phi.clauses.size(); ++ci) {
        const auto& c = phi.clauses[ci];
        const auto& s = c.slots;
        switch (s.size()) {
            case 3: {
                std::uint32_t uij = h.add_vertex(), uk = h.add_vertex();
                h.add_edge({uij, uk}, {A(uij, 2) + GF2Poly::product({uij, 0}, {uij, 1}), GF2Poly::product({uij, 2}, {uk, 0})},
                           c.weight);
                h.add_edge({uij, w(s[0])}, {A(uij, 0) + A(w(s[0]), 0) + b(s[0])}, c.weight);
                h.add_edge({uij, w(s[1])}, {A(uij, 1) + A(w(s[1]), 0) + b(s[1])}, c.weight);
                h.add_edge({uk, w(s[2])}, {A(uk, 0) + A(w(s[2]), 0) + b(s[2])}, c.weight);
                break;
            }
            case 2: {
                std::uint32_t ui = h.add_vertex(), uj = h.add_vertex();
                h.add_edge({ui, uj}, {GF2Poly::product({ui, 0}, {uj, 0})}, c.weight);
                h.add_edge({ui, w(s[0])}, {A(ui, 0) + A(w(s[0]), 0) + b(s[0])}, c.weight);
                h.add_edge({uj, w(s[1])}, {A(uj, 0) + A(w(s[1]), 0) + b(s[1])}, c.weight);
                break;
            }
            case 1: h.add_edge({w(s[0]), w(s[0])}, {A(w(s[0]), 0) + b(s[0])}, c.weight); break;
            default: throw Error("clause " + std::to_string(ci) + " has more than 3 literals");
        }
    }
    return h;
}

/// Honest encoding of a Boolean assignment into the constraint graph built from phi.
inline WordAssignment lift_formula2graph(const CnfFormula& phi, const Bits& a) {
    const std::uint32_t k = 3;
    std::uint32_t vc = phi.n;
    for (const auto& c : phi.clauses) vc += c.slots.size() >= 2 ? 2 : 0;
    WordAssignment out(std::size_t(vc) * k, 0);
    auto falsity = [&](Literal l) -> std::uint8_t { return l.value(a[l.var - 1]) ? 0 : 1; };
    for (std::uint32_t v = 0; v < phi.n; ++v) out[std::size_t(v) * k] = a[v] ? 0 : 1;
    std::uint32_t next = phi.n;
    for (const auto& c : phi.clauses) {
        const auto& s = c.slots;
        if (s.size() == 3) {
            std::uint32_t uij = next++, uk = next++;
            out[uij * k + 0] = falsity(s[0]);
            out[uij * k + 1] = falsity(s[1]);
            out[uij * k + 2] = falsity(s[0]) & falsity(s[1]);
            out[uk * k + 0] = falsity(s[2]);
        } else if (s.size() == 2) {
            std::uint32_t ui = next++, uj = next++;
            out[ui * k] = falsity(s[0]);
            out[uj * k] = falsity(s[1]);
        }
    }
    return out;
}

}  // namespace ufg
