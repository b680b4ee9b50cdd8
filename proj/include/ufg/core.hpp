#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "ufg/error.hpp"
#include "ufg/rational.hpp"

namespace ufg {

/// Evaluation semantics of every clause in a formula.
enum class Kind : std::uint8_t { Sat, Nae, Lin };

inline std::string to_string(Kind k) {
    switch (k) {
        case Kind::Sat: return "sat";
        case Kind::Nae: return "nae";
        case Kind::Lin: return "lin";
    }
    return "?";
}

inline Kind parse_kind(const std::string& s) {
    if (s == "sat") return Kind::Sat;
    if (s == "nae") return Kind::Nae;
    if (s == "lin") return Kind::Lin;
    throw ParseError("unknown formula kind '" + s + "'");
}

/// A variable (1-based) or its negation.
struct Literal {
    std::uint32_t var = 1;
    bool negated = false;

    friend auto operator<=>(const Literal&, const Literal&) = default;

    Literal operator~() const { return {var, !negated}; }
    bool value(bool var_value) const { return var_value != negated; }
    /// DIMACS integer form.
    std::int64_t dimacs() const { return negated ? -std::int64_t(var) : std::int64_t(var); }
};

inline Literal pos(std::uint32_t v) { return {v, false}; }
inline Literal neg(std::uint32_t v) { return {v, true}; }

/// Ordered tuple of literals; slot order is significant and repeated variables are allowed.
struct Clause {
    std::vector<Literal> slots;
    Rational weight = 1;

    friend bool operator==(const Clause&, const Clause&) = default;
};

/// Boolean assignment; bits[v-1] is the value of variable v.
using Bits = std::vector<std::uint8_t>;

inline bool clause_satisfied(Kind kind, const Clause& c, const Bits& a) {
    switch (kind) {
        case Kind::Sat:
            return std::any_of(c.slots.begin(), c.slots.end(),
                               [&](Literal l) { return l.value(a[l.var - 1]); });
        case Kind::Nae: {
            bool any_true = false, any_false = false;
            for (Literal l : c.slots) (l.value(a[l.var - 1]) ? any_true : any_false) = true;
            return any_true && any_false;
        }
        case Kind::Lin: {
            bool parity = false;
            for (Literal l : c.slots) parity ^= l.value(a[l.var - 1]);
            return parity;
        }
    }
    return false;
}

struct CnfFormula {
    std::uint32_t n = 0;
    std::vector<Clause> clauses;
    Kind kind = Kind::Sat;

    friend bool operator==(const CnfFormula&, const CnfFormula&) = default;

    std::size_t slot_count() const {
        std::size_t s = 0;
        for (const auto& c : clauses) s += c.slots.size();
        return s;
    }

    Rational total_weight() const {
        Rational w = 0;
        for (const auto& c : clauses) w += c.weight;
        return w;
    }

    std::size_t max_width() const {
        std::size_t w = 0;
        for (const auto& c : clauses) w = std::max(w, c.slots.size());
        return w;
    }

    void add(std::vector<Literal> lits, Rational weight = 1) {
        clauses.push_back(Clause{std::move(lits), std::move(weight)});
    }

    /// Throws unless every literal is in range, every clause is nonempty and weights are nonnegative.
    void validate() const {
        for (std::size_t i = 0; i < clauses.size(); ++i) {
            const auto& c = clauses[i];
            if (c.slots.empty()) throw Error("clause " + std::to_string(i) + " is empty");
            if (c.weight < 0) throw Error("clause " + std::to_string(i) + " has negative weight");
            for (Literal l : c.slots)
                if (l.var < 1 || l.var > n)
                    throw Error("literal " + std::to_string(l.dimacs()) + " out of range in clause " +
                                std::to_string(i));
        }
    }

    bool satisfied_by(const Bits& a) const {
        return std::all_of(clauses.begin(), clauses.end(),
                           [&](const Clause& c) { return clause_satisfied(kind, c, a); });
    }

    Rational unsatisfied_weight(const Bits& a) const {
        Rational w = 0;
        for (const auto& c : clauses)
            if (!clause_satisfied(kind, c, a)) w += c.weight;
        return w;
    }
};

/// A formula with its polarity bits stripped.
struct FactorGraph {
    std::uint32_t n = 0;
    std::vector<std::vector<std::uint32_t>> slots;
    std::vector<Rational> weights;
    Kind kind = Kind::Sat;

    friend bool operator==(const FactorGraph&, const FactorGraph&) = default;

    std::size_t clause_count() const { return slots.size(); }
    std::size_t slot_count() const {
        std::size_t s = 0;
        for (const auto& c : slots) s += c.size();
        return s;
    }
};

/// One polarity bit per (clause, slot) position in clause-major order; 1 = negated.
struct PolarityTemplate {
    std::vector<std::uint8_t> bits;

    friend bool operator==(const PolarityTemplate&, const PolarityTemplate&) = default;
};

inline FactorGraph factor_graph_of(const CnfFormula& f) {
    FactorGraph g;
    g.n = f.n;
    g.kind = f.kind;
    g.slots.reserve(f.clauses.size());
    g.weights.reserve(f.clauses.size());
    for (const auto& c : f.clauses) {
        std::vector<std::uint32_t> vars;
        vars.reserve(c.slots.size());
        for (Literal l : c.slots) vars.push_back(l.var);
        g.slots.push_back(std::move(vars));
        g.weights.push_back(c.weight);
    }
    return g;
}

inline PolarityTemplate polarities_of(const CnfFormula& f) {
    PolarityTemplate t;
    t.bits.reserve(f.slot_count());
    for (const auto& c : f.clauses)
        for (Literal l : c.slots) t.bits.push_back(l.negated ? 1 : 0);
    return t;
}

inline CnfFormula apply_polarities(const FactorGraph& g, const PolarityTemplate& t) {
    if (t.bits.size() != g.slot_count())
        throw Error("polarity template has " + std::to_string(t.bits.size()) + " bits, factor graph has " +
                    std::to_string(g.slot_count()) + " slots");
    CnfFormula f;
    f.n = g.n;
    f.kind = g.kind;
    f.clauses.reserve(g.slots.size());
    std::size_t pos = 0;
    for (std::size_t i = 0; i < g.slots.size(); ++i) {
        Clause c;
        c.weight = g.weights[i];
        c.slots.reserve(g.slots[i].size());
        for (std::uint32_t v : g.slots[i]) c.slots.push_back({v, t.bits[pos++] != 0});
        f.clauses.push_back(std::move(c));
    }
    return f;
}

/// Reads variable v (1-based) from a packed assignment index.
inline bool bit_of(std::uint64_t assignment, std::uint32_t var) { return (assignment >> (var - 1)) & 1U; }

inline Bits bits_from_index(std::uint64_t assignment, std::uint32_t n) {
    Bits b(n);
    for (std::uint32_t v = 1; v <= n; ++v) b[v - 1] = bit_of(assignment, v);
    return b;
}

}  // namespace ufg
