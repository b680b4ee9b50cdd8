#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <vector>

#include "ufg/core.hpp"
#include "ufg/error.hpp"

namespace ufg {

/// Universal factor graph for all 3CNF formulas on n variables: one auxiliary z per ordered triple.
/// Triple i = (a,b,c) in lexicographic order owns z = n+1+i and clauses 2i = (a,b,z), 2i+1 = (c,z,z).
struct PolyUniversal {
    std::uint32_t n = 0;
    FactorGraph fg;

    std::uint64_t tuple_count() const { return std::uint64_t(n) * n * n; }

    std::uint64_t tuple_index(std::uint32_t a, std::uint32_t b, std::uint32_t c) const {
        return (std::uint64_t(a - 1) * n + (b - 1)) * n + (c - 1);
    }

    std::uint32_t z_of(std::uint64_t tuple) const { return n + 1 + static_cast<std::uint32_t>(tuple); }
};

inline PolyUniversal build_poly_universal(std::uint32_t n, std::uint64_t max_clauses = std::uint64_t{1} << 24) {
    if (n == 0) throw Error("universal graph needs n >= 1");
    const std::uint64_t t = std::uint64_t(n) * n * n;
    if (2 * t > max_clauses) throw CapExceeded("n^3 tuples exceed the clause cap");
    PolyUniversal u;
    u.n = n;
    u.fg.n = static_cast<std::uint32_t>(n + t);
    u.fg.kind = Kind::Sat;
    u.fg.slots.reserve(2 * t);
    for (std::uint32_t a = 1; a <= n; ++a)
        for (std::uint32_t b = 1; b <= n; ++b)
            for (std::uint32_t c = 1; c <= n; ++c) {
                std::uint32_t z = u.z_of(u.tuple_index(a, b, c));
                u.fg.slots.push_back({a, b, z});
                u.fg.slots.push_back({c, z, z});
            }
    u.fg.weights.assign(2 * t, Rational(1));
    return u;
}

/// Polarity template that turns the universal graph into an instance equisatisfiable with f.
/// Clauses narrower than 3 repeat their last literal; a clause whose triple is taken tries the other orderings.
inline PolarityTemplate embed_poly(const PolyUniversal& u, const CnfFormula& f) {
    if (f.n > u.n) throw Error("formula has more variables than the universal graph");
    if (f.kind != Kind::Sat) throw Error("embedding needs a SAT-kind formula");
    f.validate();
    PolarityTemplate t;
    t.bits.assign(u.fg.slot_count(), 0);
    std::set<std::uint64_t> used;
    for (std::size_t ci = 0; ci < f.clauses.size(); ++ci) {
        const auto& cl = f.clauses[ci].slots;
        if (cl.empty() || cl.size() > 3) throw Error("clause " + std::to_string(ci) + " is not a 3CNF clause");
        std::array<Literal, 3> lits{cl[0], cl[std::min<std::size_t>(1, cl.size() - 1)], cl[cl.size() - 1]};
        static constexpr std::array<std::array<int, 3>, 6> perms{
            {{0, 1, 2}, {0, 2, 1}, {1, 0, 2}, {1, 2, 0}, {2, 0, 1}, {2, 1, 0}}};
        bool placed = false;
        for (const auto& p : perms) {
            Literal x = lits[p[0]], y = lits[p[1]], z = lits[p[2]];
            std::uint64_t ti = u.tuple_index(x.var, y.var, z.var);
            if (used.count(ti)) continue;
            used.insert(ti);
            // (x ∨ y ∨ ~z_i) and (z ∨ z_i ∨ z_i)
            std::size_t base = ti * 6;
            t.bits[base + 0] = x.negated;
            t.bits[base + 1] = y.negated;
            t.bits[base + 2] = 1;
            t.bits[base + 3] = z.negated;
            placed = true;
            break;
        }
        if (!placed) throw Error("all orderings of clause " + std::to_string(ci) + " are already taken");
    }
    return t;
}

}  // namespace ufg
