#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ufg/core.hpp"
#include "ufg/error.hpp"
#include "ufg/sorting_network.hpp"

namespace ufg {

enum class GateKind : std::uint8_t { Nand, And, Or, Xor, Not, Mux2, Mux3, Const };

inline std::string to_string(GateKind g) {
    switch (g) {
        case GateKind::Nand: return "NAND";
        case GateKind::And: return "AND";
        case GateKind::Or: return "OR";
        case GateKind::Xor: return "XOR";
        case GateKind::Not: return "NOT";
        case GateKind::Mux2: return "MUX2";
        case GateKind::Mux3: return "MUX3";
        case GateKind::Const: return "CONST";
    }
    return "?";
}

/// Input order: MUX2 (s, a, b) gives s ? b : a. MUX3 (s1, s0, a, b, c) picks by 2*s1+s0, with 3 aliasing to c.
/// CONST has no inputs; its value is `value`.
struct Gate {
    GateKind kind;
    std::vector<std::uint32_t> in;
    std::uint32_t out;
    bool value = false;
};

/// Wires: 3m*w literal-encoding bits (clause-major, slot, LSB first), then 2m selector bits
/// (clause c: s0 = 2c, s1 = 2c+1), then one wire per gate in topological order.
struct Circuit {
    std::uint32_t n = 0, m = 0, w = 0;
    std::uint32_t wire_count = 0;
    std::vector<Gate> gates;
    std::uint32_t output = 0;

    std::uint32_t rep_wire(std::uint32_t clause, std::uint32_t slot, std::uint32_t bit) const {
        return (clause * 3 + slot) * w + bit;
    }
    std::uint32_t selector_wire(std::uint32_t clause, std::uint32_t which) const { return 3 * m * w + 2 * clause + which; }
    std::uint32_t input_count() const { return 3 * m * w + 2 * m; }
};

/// Bits per literal: variable index (0-based) in the upper bits, negation flag in the LSB.
inline std::uint32_t literal_width(std::uint32_t n) {
    std::uint32_t b = 0;
    while ((std::uint64_t{1} << b) < n) ++b;
    return b + 1;
}

inline std::uint64_t encode_literal(Literal l) { return (std::uint64_t(l.var - 1) << 1) | (l.negated ? 1U : 0U); }

/// Gate-level evaluation; `inputs` covers the input wires in order.
inline std::vector<std::uint8_t> evaluate(const Circuit& c, const std::vector<std::uint8_t>& inputs) {
    if (inputs.size() != c.input_count()) throw Error("circuit input length mismatch");
    std::vector<std::uint8_t> v(c.wire_count, 0);
    std::copy(inputs.begin(), inputs.end(), v.begin());
    for (const auto& g : c.gates) {
        auto x = [&](std::size_t i) { return v[g.in[i]] != 0; };
        bool r = false;
        switch (g.kind) {
            case GateKind::Nand: r = !(x(0) && x(1)); break;
            case GateKind::And: r = x(0) && x(1); break;
            case GateKind::Or: r = x(0) || x(1); break;
            case GateKind::Xor: r = x(0) != x(1); break;
            case GateKind::Not: r = !x(0); break;
            case GateKind::Mux2: r = x(0) ? x(2) : x(1); break;
            case GateKind::Mux3: r = x(0) ? x(4) : (x(1) ? x(3) : x(2)); break;
            case GateKind::Const: r = g.value; break;
        }
        v[g.out] = r;
    }
    return v;
}

namespace detail {

class CircuitBuilder {
public:
    explicit CircuitBuilder(Circuit& c) : c_(c) {}

    std::uint32_t gate(GateKind k, std::vector<std::uint32_t> in, bool value = false) {
        std::uint32_t out = c_.wire_count++;
        c_.gates.push_back(Gate{k, std::move(in), out, value});
        return out;
    }
    std::uint32_t one() {
        if (!one_) one_ = gate(GateKind::Const, {}, true);
        return *one_;
    }
    std::uint32_t g_not(std::uint32_t a) { return gate(GateKind::Not, {a}); }
    std::uint32_t g_and(std::uint32_t a, std::uint32_t b) { return gate(GateKind::And, {a, b}); }
    std::uint32_t g_or(std::uint32_t a, std::uint32_t b) { return gate(GateKind::Or, {a, b}); }
    std::uint32_t g_xor(std::uint32_t a, std::uint32_t b) { return gate(GateKind::Xor, {a, b}); }
    std::uint32_t mux2(std::uint32_t s, std::uint32_t a, std::uint32_t b) { return gate(GateKind::Mux2, {s, a, b}); }

private:
    Circuit& c_;
    std::optional<std::uint32_t> one_;
};

}  // namespace detail

/// Nondeterministic consistency checker: selectors pick one literal per clause, a comparator network sorts
/// the picks, and the output is 1 iff no two neighbours after sorting are complementary.
inline Circuit build_consistency_circuit(std::uint32_t n, std::uint32_t m,
                                         const NetworkGenerator& network = batcher_network) {
    if (n == 0 || m == 0) throw Error("consistency circuit needs n, m >= 1");
    Circuit c;
    c.n = n;
    c.m = m;
    c.w = literal_width(n);
    c.wire_count = c.input_count();
    detail::CircuitBuilder b(c);
    if (m == 1) {
        c.output = b.one();
        return c;
    }
    std::vector<std::vector<std::uint32_t>> keys(m);
    for (std::uint32_t cl = 0; cl < m; ++cl)
        for (std::uint32_t bit = 0; bit < c.w; ++bit)
            keys[cl].push_back(b.gate(GateKind::Mux3, {c.selector_wire(cl, 1), c.selector_wire(cl, 0),
                                                       c.rep_wire(cl, 0, bit), c.rep_wire(cl, 1, bit),
                                                       c.rep_wire(cl, 2, bit)}));
    for (auto [i, j] : network(m)) {
        const auto& x = keys[i];
        const auto& y = keys[j];
        // Carry out of y + ~x + 1 is set iff y >= x.
        std::uint32_t carry = b.one();
        for (std::uint32_t bit = 0; bit < c.w; ++bit) {
            std::uint32_t nx = b.g_not(x[bit]);
            std::uint32_t t = b.g_xor(y[bit], nx);
            carry = b.g_or(b.g_and(y[bit], nx), b.g_and(carry, t));
        }
        std::uint32_t swap = b.g_not(carry);
        std::vector<std::uint32_t> lo, hi;
        for (std::uint32_t bit = 0; bit < c.w; ++bit) {
            lo.push_back(b.mux2(swap, x[bit], y[bit]));
            hi.push_back(b.mux2(swap, y[bit], x[bit]));
        }
        keys[i] = std::move(lo);
        keys[j] = std::move(hi);
    }
    std::optional<std::uint32_t> any;
    for (std::uint32_t p = 0; p + 1 < m; ++p) {
        const auto& x = keys[p];
        const auto& y = keys[p + 1];
        std::optional<std::uint32_t> eq;
        for (std::uint32_t bit = 1; bit < c.w; ++bit) {
            std::uint32_t same = b.g_not(b.g_xor(x[bit], y[bit]));
            eq = eq ? b.g_and(*eq, same) : same;
        }
        std::uint32_t conflict = b.g_and(eq ? *eq : b.one(), b.g_xor(x[0], y[0]));
        any = any ? b.g_or(*any, conflict) : conflict;
    }
    c.output = b.g_not(*any);
    return c;
}

/// Circuit compiled to 3CNF. Only the polarities of `input_clause` unit clauses depend on the source formula.
struct CircuitTemplate {
    std::uint32_t n = 0, m = 0, w = 0;
    FactorGraph fg;
    PolarityTemplate base;
    std::vector<std::uint32_t> input_clause;  // per representation bit, the index of its unit clause
    std::vector<std::uint32_t> wire_var;      // per wire, its CNF variable
};

inline CircuitTemplate circuit_to_3cnf(const Circuit& c) {
    CircuitTemplate t;
    t.n = c.n;
    t.m = c.m;
    t.w = c.w;
    t.wire_var.assign(c.wire_count, 0);
    std::vector<std::uint32_t> aux(c.gates.size(), 0);
    std::uint32_t next = 1;
    for (std::uint32_t i = 0; i < c.input_count(); ++i) t.wire_var[i] = next++;
    for (std::size_t g = 0; g < c.gates.size(); ++g) {
        if (c.gates[g].kind == GateKind::Mux3) aux[g] = next++;
        t.wire_var[c.gates[g].out] = next++;
    }
    CnfFormula f;
    f.n = next - 1;
    auto L = [&](std::uint32_t var, bool negated) { return Literal{var, negated}; };
    auto mux2 = [&](std::uint32_t s, std::uint32_t a, std::uint32_t b, std::uint32_t z) {
        f.add({L(s, false), L(a, true), L(z, false)});
        f.add({L(s, false), L(a, false), L(z, true)});
        f.add({L(s, true), L(b, true), L(z, false)});
        f.add({L(s, true), L(b, false), L(z, true)});
    };
    for (std::size_t g = 0; g < c.gates.size(); ++g) {
        const auto& gate = c.gates[g];
        auto in = [&](std::size_t i) { return t.wire_var[gate.in[i]]; };
        std::uint32_t z = t.wire_var[gate.out];
        switch (gate.kind) {
            case GateKind::Nand:
                f.add({L(in(0), true), L(in(1), true), L(z, true)});
                f.add({L(in(0), true), L(in(1), false), L(z, false)});
                f.add({L(in(0), false), L(in(1), false), L(z, false)});
                f.add({L(in(0), false), L(in(1), true), L(z, false)});
                break;
            case GateKind::And:
                f.add({L(in(0), true), L(in(1), true), L(z, false)});
                f.add({L(in(0), false), L(in(1), false), L(z, true)});
                f.add({L(in(0), false), L(in(1), true), L(z, true)});
                f.add({L(in(0), true), L(in(1), false), L(z, true)});
                break;
            case GateKind::Or:
                f.add({L(in(0), false), L(in(1), false), L(z, true)});
                f.add({L(in(0), true), L(in(1), true), L(z, false)});
                f.add({L(in(0), true), L(in(1), false), L(z, false)});
                f.add({L(in(0), false), L(in(1), true), L(z, false)});
                break;
            case GateKind::Xor:
                f.add({L(in(0), true), L(in(1), true), L(z, true)});
                f.add({L(in(0), false), L(in(1), false), L(z, true)});
                f.add({L(in(0), false), L(in(1), true), L(z, false)});
                f.add({L(in(0), true), L(in(1), false), L(z, false)});
                break;
            case GateKind::Not:
                f.add({L(in(0), false), L(z, false)});
                f.add({L(in(0), true), L(z, true)});
                break;
            case GateKind::Mux2: mux2(in(0), in(1), in(2), z); break;
            case GateKind::Mux3:
                mux2(in(1), in(2), in(3), aux[g]);
                mux2(in(0), aux[g], in(4), z);
                break;
            case GateKind::Const: f.add({L(z, !gate.value)}); break;
        }
    }
    f.add({L(t.wire_var[c.output], false)});
    for (std::uint32_t i = 0; i < 3 * c.m * c.w; ++i) {
        t.input_clause.push_back(static_cast<std::uint32_t>(f.clauses.size()));
        f.add({L(t.wire_var[i], false)});
    }
    t.fg = factor_graph_of(f);
    t.base = polarities_of(f);
    return t;
}

/// Clause list of a formula as 3 literals each (narrower clauses repeat their last literal).
inline std::vector<std::array<Literal, 3>> padded_clauses(const CnfFormula& phi) {
    std::vector<std::array<Literal, 3>> out;
    for (std::size_t i = 0; i < phi.clauses.size(); ++i) {
        const auto& s = phi.clauses[i].slots;
        if (s.empty() || s.size() > 3) throw Error("clause " + std::to_string(i) + " is not a 3CNF clause");
        out.push_back({s[0], s[std::min<std::size_t>(1, s.size() - 1)], s.back()});
    }
    return out;
}

/// Representation bits of phi in input-wire order.
inline std::vector<std::uint8_t> representation_bits(const CircuitTemplate& t, const CnfFormula& phi) {
    if (phi.n > t.n || phi.clauses.size() != t.m)
        throw Error("formula dimensions (n=" + std::to_string(phi.n) + ", m=" + std::to_string(phi.clauses.size()) +
                    ") do not match the template (n=" + std::to_string(t.n) + ", m=" + std::to_string(t.m) + ")");
    if (phi.kind != Kind::Sat) throw Error("instantiate needs a SAT-kind formula");
    phi.validate();
    std::vector<std::uint8_t> bits;
    for (const auto& cl : padded_clauses(phi))
        for (Literal l : cl) {
            auto code = encode_literal(l);
            for (std::uint32_t b = 0; b < t.w; ++b) bits.push_back((code >> b) & 1U);
        }
    return bits;
}

inline CnfFormula instantiate(const CircuitTemplate& t, const CnfFormula& phi) {
    auto bits = representation_bits(t, phi);
    PolarityTemplate p = t.base;
    std::vector<std::size_t> offset(t.fg.slots.size() + 1, 0);
    for (std::size_t i = 0; i < t.fg.slots.size(); ++i) offset[i + 1] = offset[i] + t.fg.slots[i].size();
    for (std::size_t j = 0; j < bits.size(); ++j) p.bits[offset[t.input_clause[j]]] = bits[j] ? 0 : 1;
    return apply_polarities(t.fg, p);
}

/// Satisfying assignment of the instantiated template from one of phi: pick the first true literal per clause.
inline std::optional<Bits> lift_to_template(const Circuit& c, const CircuitTemplate& t, const CnfFormula& phi,
                                            const Bits& a) {
    auto rep = representation_bits(t, phi);
    std::vector<std::uint8_t> in(rep.begin(), rep.end());
    auto cls = padded_clauses(phi);
    for (std::uint32_t cl = 0; cl < c.m; ++cl) {
        int pick = -1;
        for (int s = 0; s < 3 && pick < 0; ++s)
            if (cls[cl][s].value(a[cls[cl][s].var - 1])) pick = s;
        if (pick < 0) return std::nullopt;
        in.push_back(pick & 1);
        in.push_back(pick >> 1);
    }
    auto v = evaluate(c, in);
    Bits out(t.fg.n, 0);
    for (std::uint32_t wv = 0; wv < c.wire_count; ++wv) out[t.wire_var[wv] - 1] = v[wv];
    for (const auto& g : c.gates)
        if (g.kind == GateKind::Mux3) {
            std::uint32_t aux = t.wire_var[g.out] - 1;  // aux sits right before the output variable
            out[aux - 1] = v[g.in[1]] ? v[g.in[3]] : v[g.in[2]];
        }
    return out;
}

}  // namespace ufg
