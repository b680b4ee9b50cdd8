#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ufg/core.hpp"
#include "ufg/error.hpp"

namespace ufg {

/// Every clause gets the same fresh variable w = n+1 and becomes a not-all-equal constraint.
inline CnfFormula sat3_to_nae4(const CnfFormula& phi) {
    if (phi.kind != Kind::Sat) throw Error("sat3_to_nae4 needs a SAT-kind formula");
    phi.validate();
    CnfFormula out;
    out.kind = Kind::Nae;
    out.n = phi.n + 1;
    for (const auto& c : phi.clauses) {
        auto lits = c.slots;
        lits.push_back(pos(phi.n + 1));
        out.add(std::move(lits), c.weight);
    }
    return out;
}

/// NAE(a,b,c,d) becomes NAE(a,b,v) and NAE(c,d,~v) with a fresh v per clause; narrower clauses pass through.
inline CnfFormula nae4_to_nae3(const CnfFormula& phi) {
    if (phi.kind != Kind::Nae) throw Error("nae4_to_nae3 needs an NAE-kind formula");
    phi.validate();
    CnfFormula out;
    out.kind = Kind::Nae;
    out.n = phi.n;
    for (std::size_t i = 0; i < phi.clauses.size(); ++i) {
        const auto& c = phi.clauses[i];
        if (c.slots.size() > 4) throw Error("clause " + std::to_string(i) + " is wider than 4");
        if (c.slots.size() < 4) {
            out.add(c.slots, c.weight);
            continue;
        }
        const std::uint32_t v = ++out.n;
        out.add({c.slots[0], c.slots[1], pos(v)}, c.weight);
        out.add({c.slots[2], c.slots[3], neg(v)}, c.weight);
    }
    return out;
}

/// NAE(a,b,c) becomes a+b=1, b+c=1, a+c=1: exactly two hold when NAE holds, none otherwise.
inline CnfFormula nae3_to_lin2(const CnfFormula& phi) {
    if (phi.kind != Kind::Nae) throw Error("nae3_to_lin2 needs an NAE-kind formula");
    phi.validate();
    CnfFormula out;
    out.kind = Kind::Lin;
    out.n = phi.n;
    for (std::size_t i = 0; i < phi.clauses.size(); ++i) {
        const auto& s = phi.clauses[i].slots;
        const auto& w = phi.clauses[i].weight;
        if (s.size() == 2) {
            out.add(s, w);
        } else if (s.size() == 3) {
            out.add({s[0], s[1]}, w);
            out.add({s[1], s[2]}, w);
            out.add({s[0], s[2]}, w);
        } else {
            throw Error("clause " + std::to_string(i) + " is not a 2- or 3-literal NAE clause");
        }
    }
    return out;
}

/// Runs a comma-separated chain such as "3sat,nae4,nae3,lin2".
inline CnfFormula run_chain(const CnfFormula& phi, const std::vector<std::string>& stages) {
    if (stages.empty()) throw Error("empty reduction chain");
    static const std::vector<std::string> order{"3sat", "nae4", "nae3", "lin2"};
    std::size_t at = 0;
    while (at < order.size() && order[at] != stages.front()) ++at;
    if (at == order.size()) throw Error("unknown chain stage '" + stages.front() + "'");
    CnfFormula cur = phi;
    for (std::size_t i = 1; i < stages.size(); ++i) {
        if (at + 1 >= order.size() || stages[i] != order[at + 1])
            throw Error("chain step '" + stages[i - 1] + "' -> '" + stages[i] + "' is not supported");
        ++at;
        if (stages[i] == "nae4")
            cur = sat3_to_nae4(cur);
        else if (stages[i] == "nae3")
            cur = nae4_to_nae3(cur);
        else
            cur = nae3_to_lin2(cur);
    }
    return cur;
}

}  // namespace ufg
