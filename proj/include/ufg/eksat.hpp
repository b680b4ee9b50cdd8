#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "ufg/core.hpp"
#include "ufg/error.hpp"
#include "ufg/rational.hpp"

namespace ufg {

struct EkSatParams {
    std::uint32_t k = 4;
    Rational gamma = make_rational(1, 16);
    Rational epsilon = make_rational(1, 2);
    bool require_tight = false;  // enforce 2^q >= (1-eps)/eps * (1/(8 gamma) - 1)
};

struct EkSatResult {
    CnfFormula formula;
    std::uint32_t n = 0;  // source variables
    std::uint32_t q = 0;
    std::uint32_t m = 0;  // source clauses
    Rational gamma;

    std::uint32_t y(std::uint32_t j) const { return n + j; }          // j in 1..q
    std::uint32_t z(std::uint32_t j) const { return n + q + j; }      // j in 1..3
};

inline bool is_exact(const CnfFormula& f, std::size_t width) {
    for (const auto& c : f.clauses) {
        if (c.slots.size() != width) return false;
        std::set<std::uint32_t> vars;
        for (auto l : c.slots) vars.insert(l.var);
        if (vars.size() != width) return false;
    }
    return true;
}

inline Rational eksat_total_weight(std::uint32_t k, const Rational& gamma) {
    return Rational(BigInt(1) << (k - 3)) - 1 + 1 / (8 * gamma);
}

/// psi_0 is phi_3 with every clause padded by the negated y's, total weight 1/(8 gamma);
/// psi_i (1 <= i < 2^q) holds the 8 z-polarity patterns with y_j positive iff bit j-1 of i is set, total weight 1.
inline EkSatResult eksat_reduce(const CnfFormula& phi3, const EkSatParams& p) {
    if (phi3.kind != Kind::Sat) throw Error("eksat_reduce needs a SAT-kind formula");
    phi3.validate();
    if (!is_exact(phi3, 3)) throw Error("eksat_reduce needs an exact-3 CNF formula");
    if (phi3.clauses.empty()) throw Error("eksat_reduce needs at least one clause");
    if (p.k < 4 || p.k > 24) throw Error("eksat_reduce needs 4 <= k <= 24");
    if (p.gamma <= 0 || p.gamma >= make_rational(1, 8)) throw Error("gamma must lie in (0, 1/8)");
    if (p.epsilon <= 0 || p.epsilon >= 1) throw Error("epsilon must lie in (0, 1)");
    EkSatResult r;
    r.n = phi3.n;
    r.q = p.k - 3;
    r.m = static_cast<std::uint32_t>(phi3.clauses.size());
    r.gamma = p.gamma;
    const Rational two_q = Rational(BigInt(1) << r.q);
    if (p.require_tight && two_q < (1 - p.epsilon) / p.epsilon * (1 / (8 * p.gamma) - 1))
        throw Error("q too small for the requested epsilon");
    CnfFormula& f = r.formula;
    f.n = r.n + r.q + 3;
    const Rational w0 = 1 / (8 * p.gamma) / r.m;
    for (const auto& c : phi3.clauses) {
        auto lits = c.slots;
        for (std::uint32_t j = 1; j <= r.q; ++j) lits.push_back(neg(r.y(j)));
        f.add(std::move(lits), w0);
    }
    for (std::uint32_t i = 1; i < (1U << r.q); ++i)
        for (std::uint32_t pattern = 0; pattern < 8; ++pattern) {
            std::vector<Literal> lits;
            for (std::uint32_t j = 1; j <= r.q; ++j) lits.push_back({r.y(j), ((i >> (j - 1)) & 1U) == 0});
            for (std::uint32_t j = 1; j <= 3; ++j) lits.push_back({r.z(j), ((pattern >> (j - 1)) & 1U) != 0});
            f.add(std::move(lits), make_rational(1, 8));
        }
    return r;
}

struct UnweightResult {
    CnfFormula formula;
    Rational gamma_used;
    std::uint64_t copies = 0;
};

/// psi_0 clauses at weight 1, each psi_i repeated floor(gamma m) times with fresh z triples (i-major).
/// gamma drops to copies/m when gamma m is not integral.
inline UnweightResult unweight(const EkSatResult& r, const Rational& gamma) {
    if (gamma <= 0 || gamma > make_rational(1, 8)) throw Error("gamma must lie in (0, 1/8]");
    UnweightResult u;
    BigInt c = floor_of(gamma * r.m);
    if (c == 0) throw Error("gamma * m is below 1; nothing to duplicate");
    u.copies = static_cast<std::uint64_t>(c);
    u.gamma_used = Rational(c, BigInt(r.m));
    CnfFormula& f = u.formula;
    f.n = r.n + r.q;
    for (std::uint32_t i = 0; i < r.m; ++i) f.add(r.formula.clauses[i].slots, 1);
    std::size_t next = r.m;
    for (std::uint32_t i = 1; i < (1U << r.q); ++i, next += 8)
        for (std::uint64_t copy = 0; copy < u.copies; ++copy) {
            const std::uint32_t zbase = f.n;
            f.n += 3;
            for (std::size_t j = next; j < next + 8; ++j) {
                auto lits = r.formula.clauses[j].slots;
                for (std::size_t s = r.q; s < lits.size(); ++s) lits[s].var = zbase + static_cast<std::uint32_t>(s - r.q) + 1;
                f.add(std::move(lits), 1);
            }
        }
    return u;
}

}  // namespace ufg
