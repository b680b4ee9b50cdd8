#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "ufg/ufg.hpp"

namespace testing_support {

using namespace ufg;

/// Clause truth written out directly, independent of the library's evaluator.
inline bool naive_clause(Kind kind, const Clause& c, std::uint64_t a) {
    int trues = 0;
    for (const auto& l : c.slots) {
        bool v = (a >> (l.var - 1)) & 1U;
        if (l.negated) v = !v;
        trues += v;
    }
    const int width = static_cast<int>(c.slots.size());
    if (kind == Kind::Sat) return trues > 0;
    if (kind == Kind::Nae) return trues > 0 && trues < width;
    return trues % 2 == 1;
}

/// Minimum unsatisfied weight fraction over all 2^n assignments.
inline Rational naive_unsat(const CnfFormula& f) {
    Rational total = 0;
    for (const auto& c : f.clauses) total += c.weight;
    if (total == 0) return 0;
    Rational best = total;
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << f.n); ++a) {
        Rational u = 0;
        for (const auto& c : f.clauses)
            if (!naive_clause(f.kind, c, a)) u += c.weight;
        if (u < best) best = u;
    }
    return best / total;
}

inline bool naive_sat(const CnfFormula& f) {
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << f.n); ++a) {
        bool ok = true;
        for (const auto& c : f.clauses)
            if (!naive_clause(f.kind, c, a)) {
                ok = false;
                break;
            }
        if (ok) return true;
    }
    return false;
}

inline Bits bits_of(std::uint64_t a, std::uint32_t n) {
    Bits b(n);
    for (std::uint32_t i = 0; i < n; ++i) b[i] = (a >> i) & 1U;
    return b;
}

/// Random formula with `width` distinct variables per clause.
inline CnfFormula random_formula(std::mt19937_64& rng, std::uint32_t n, std::uint32_t m, std::uint32_t width = 3,
                                 Kind kind = Kind::Sat) {
    CnfFormula f;
    f.n = n;
    f.kind = kind;
    for (std::uint32_t c = 0; c < m; ++c) {
        std::vector<std::uint32_t> vars(n);
        for (std::uint32_t v = 0; v < n; ++v) vars[v] = v + 1;
        std::shuffle(vars.begin(), vars.end(), rng);
        std::vector<Literal> lits;
        for (std::uint32_t j = 0; j < width; ++j) lits.push_back({vars[j], static_cast<bool>(rng() & 1U)});
        f.add(lits);
    }
    return f;
}

/// Same factor graph, fresh polarities.
inline CnfFormula repolarize(const CnfFormula& f, std::mt19937_64& rng) {
    CnfFormula g = f;
    for (auto& c : g.clauses)
        for (auto& l : c.slots) l.negated = rng() & 1U;
    return g;
}

/// Exact UNSAT of a small hypergraph, enumerating every vertex word.
inline Rational naive_unsat(const ConstraintHypergraph& h) {
    const std::size_t bits = std::size_t(h.vertex_count) * h.k;
    Rational total = h.total_weight();
    if (total == 0) return 0;
    Rational best = total;
    for (std::uint64_t a = 0; a < (std::uint64_t{1} << bits); ++a) {
        WordAssignment w(bits);
        for (std::size_t i = 0; i < bits; ++i) w[i] = (a >> i) & 1U;
        Rational u = 0;
        for (const auto& e : h.edges) {
            bool sat = true;
            for (const auto& p : e.polys) {
                bool v = p.constant();
                for (const auto& mono : p.monomials()) {
                    bool x = w[std::size_t(mono.lo.vertex) * h.k + mono.lo.bit];
                    bool y = w[std::size_t(mono.hi.vertex) * h.k + mono.hi.bit];
                    v ^= mono.linear() ? x : (x && y);
                }
                if (v) sat = false;
            }
            if (!sat) u += e.weight;
        }
        if (u < best) best = u;
    }
    return best / total;
}

}  // namespace testing_support
