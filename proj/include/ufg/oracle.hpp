#pragma once

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdlib>
#include <limits>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "ufg/core.hpp"
#include "ufg/error.hpp"
#include "ufg/hypergraph.hpp"
#include "ufg/rational.hpp"

namespace ufg {

/// Assignment-space cap for exhaustive enumeration. UFG_ORACLE_CAP accepts "N" or "2^k".
inline std::uint64_t oracle_cap() {
    constexpr std::uint64_t fallback = std::uint64_t{1} << 24;
    const char* env = std::getenv("UFG_ORACLE_CAP");
    if (!env || !*env) return fallback;
    std::string s(env);
    try {
        if (s.rfind("2^", 0) == 0) {
            auto e = std::stoul(s.substr(2));
            return e >= 63 ? (std::uint64_t{1} << 63) : (std::uint64_t{1} << e);
        }
        return std::stoull(s);
    } catch (const std::exception&) {
        throw ParseError("bad UFG_ORACLE_CAP '" + s + "'");
    }
}

namespace detail {

inline void check_cap(std::size_t bits, std::uint64_t cap) {
    if (bits >= 63 || (std::uint64_t{1} << bits) > cap)
        throw CapExceeded("exhaustive enumeration over 2^" + std::to_string(bits) + " assignments exceeds cap " +
                          std::to_string(cap));
}

/// Weights scaled to a common denominator; `fits` is false when they overflow int64.
struct ScaledWeights {
    std::vector<std::int64_t> w;
    BigInt scale = 1;
    bool fits = true;
};

inline ScaledWeights scale_weights(const std::vector<Rational>& ws) {
    ScaledWeights s;
    BigInt l = 1;
    for (const auto& x : ws) l = boost::multiprecision::lcm(l, boost::multiprecision::denominator(x));
    s.scale = l;
    BigInt total = 0;
    for (const auto& x : ws) {
        BigInt v = boost::multiprecision::numerator(x) * (l / boost::multiprecision::denominator(x));
        total += v;
        if (total > BigInt(std::numeric_limits<std::int64_t>::max() / 2)) {
            s.fits = false;
            return s;
        }
        s.w.push_back(static_cast<std::int64_t>(v));
    }
    return s;
}

/// Minimizes the weighted count of unsatisfied items over 2^bits assignments.
template <typename Unsat>
Rational min_weighted(std::size_t bits, const std::vector<Rational>& weights, Unsat&& unsat_item) {
    Rational total = 0;
    for (const auto& w : weights) total += w;
    if (weights.empty() || total == 0) return 0;
    auto sw = scale_weights(weights);
    const std::uint64_t space = std::uint64_t{1} << bits;
    if (sw.fits) {
        std::int64_t best = std::numeric_limits<std::int64_t>::max();
        for (std::uint64_t a = 0; a < space && best > 0; ++a) {
            std::int64_t cur = 0;
            for (std::size_t i = 0; i < weights.size() && cur < best; ++i)
                if (unsat_item(i, a)) cur += sw.w[i];
            best = std::min(best, cur);
        }
        return Rational(BigInt(best), sw.scale) / total;
    }
    std::optional<Rational> best;
    for (std::uint64_t a = 0; a < space; ++a) {
        Rational cur = 0;
        for (std::size_t i = 0; i < weights.size(); ++i)
            if (unsat_item(i, a)) cur += weights[i];
        if (!best || cur < *best) best = cur;
        if (*best == 0) break;
    }
    return *best / total;
}

/// Per-clause bit masks over a packed assignment (variable v at bit v-1).
struct ClauseMask {
    std::uint64_t pos = 0, neg = 0, xor_mask = 0;
    bool neg_parity = false;
};

inline ClauseMask mask_of(const Clause& c) {
    ClauseMask m;
    for (Literal l : c.slots) {
        std::uint64_t b = std::uint64_t{1} << (l.var - 1);
        (l.negated ? m.neg : m.pos) |= b;
        m.xor_mask ^= b;
        m.neg_parity ^= l.negated;
    }
    return m;
}

inline bool mask_satisfied(Kind kind, const ClauseMask& m, std::uint64_t a) {
    switch (kind) {
        case Kind::Sat: return ((a & m.pos) | (~a & m.neg)) != 0;
        case Kind::Nae: return ((a & m.pos) | (~a & m.neg)) != 0 && ((~a & m.pos) | (a & m.neg)) != 0;
        case Kind::Lin: return (std::popcount(a & m.xor_mask) & 1) != static_cast<int>(m.neg_parity);
    }
    return false;
}

/// A polynomial rewritten over dense coordinate indices.
struct DensePoly {
    bool constant = false;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> monos;  // equal indices = linear term

    bool eval(std::uint64_t a) const {
        bool v = constant;
        for (auto [i, j] : monos) v ^= ((a >> i) & (a >> j) & 1U) != 0;
        return v;
    }
};

struct DenseEdge {
    std::vector<DensePoly> polys;
    std::vector<std::uint32_t> table_coords;
    const std::vector<std::uint8_t>* table = nullptr;
    std::uint32_t max_index = 0;

    bool satisfied(std::uint64_t a) const {
        if (table) {
            std::size_t idx = 0;
            for (std::size_t p = 0; p < table_coords.size(); ++p)
                if ((a >> table_coords[p]) & 1U) idx |= std::size_t{1} << p;
            return (*table)[idx] != 0;
        }
        return std::none_of(polys.begin(), polys.end(), [&](const DensePoly& p) { return p.eval(a); });
    }
};

/// Referenced coordinates of a hypergraph in (vertex, bit) order, with every edge re-indexed onto them.
struct DenseHypergraph {
    std::vector<Coord> coords;
    std::vector<DenseEdge> edges;
};

inline DenseHypergraph densify(const ConstraintHypergraph& h) {
    std::map<Coord, std::uint32_t> index;
    auto touch = [&](Coord c) { index.emplace(c, 0); };
    for (const auto& e : h.edges) {
        if (e.table)
            for (auto v : e.verts)
                for (std::uint32_t j = 0; j < h.k; ++j) touch({v, j});
        for (const auto& p : e.polys) p.for_each_coord(touch);
    }
    DenseHypergraph d;
    for (auto& [c, i] : index) {
        i = static_cast<std::uint32_t>(d.coords.size());
        d.coords.push_back(c);
    }
    for (const auto& e : h.edges) {
        DenseEdge de;
        if (e.table) {
            de.table = &*e.table;
            for (auto v : e.verts)
                for (std::uint32_t j = 0; j < h.k; ++j) de.table_coords.push_back(index.at({v, j}));
        }
        for (const auto& p : e.polys) {
            DensePoly dp{p.constant(), {}};
            for (const auto& m : p.monomials()) dp.monos.emplace_back(index.at(m.lo), index.at(m.hi));
            de.polys.push_back(std::move(dp));
        }
        for (auto i : de.table_coords) de.max_index = std::max(de.max_index, i);
        for (const auto& dp : de.polys)
            for (auto [i, j] : dp.monos) de.max_index = std::max({de.max_index, i, j});
        d.edges.push_back(std::move(de));
    }
    return d;
}

}  // namespace detail

/// Exact UNSAT: minimum over all assignments of the weighted fraction of unsatisfied clauses.
inline Rational brute_force_unsat(const CnfFormula& f, std::uint64_t cap = oracle_cap()) {
    f.validate();
    detail::check_cap(f.n, cap);
    std::vector<detail::ClauseMask> masks;
    std::vector<Rational> weights;
    for (const auto& c : f.clauses) {
        masks.push_back(detail::mask_of(c));
        weights.push_back(c.weight);
    }
    return detail::min_weighted(f.n, weights, [&](std::size_t i, std::uint64_t a) {
        return !detail::mask_satisfied(f.kind, masks[i], a);
    });
}

/// Exact UNSAT of a hypergraph, enumerating only coordinates some constraint reads.
inline Rational brute_force_unsat(const ConstraintHypergraph& h, std::uint64_t cap = oracle_cap()) {
    h.validate();
    auto d = detail::densify(h);
    detail::check_cap(d.coords.size(), cap);
    std::vector<Rational> weights;
    for (const auto& e : h.edges) weights.push_back(e.weight);
    return detail::min_weighted(d.coords.size(), weights,
                                [&](std::size_t i, std::uint64_t a) { return !d.edges[i].satisfied(a); });
}

/// Exhaustive depth-first search in variable order; every clause is checked once its last variable is set.
/// Returns a satisfying assignment or nothing. Throws CapExceeded after `node_cap` search nodes.
inline std::optional<Bits> find_satisfying(const CnfFormula& f, std::uint64_t node_cap = std::uint64_t{1} << 34) {
    f.validate();
    std::vector<std::vector<std::size_t>> due(f.n + 1);
    for (std::size_t i = 0; i < f.clauses.size(); ++i) {
        std::uint32_t mx = 0;
        for (Literal l : f.clauses[i].slots) mx = std::max(mx, l.var);
        due[mx].push_back(i);
    }
    Bits a(f.n, 0);
    std::vector<std::uint8_t> tried(f.n + 1, 0);
    std::uint64_t nodes = 0;
    auto ok_at = [&](std::uint32_t v) {
        for (auto i : due[v])
            if (!clause_satisfied(f.kind, f.clauses[i], a)) return false;
        return true;
    };
    if (f.n == 0) return std::all_of(f.clauses.begin(), f.clauses.end(), [](const Clause& c) { return c.slots.empty(); })
                             ? std::optional<Bits>(a)
                             : std::nullopt;
    std::uint32_t v = 1;
    tried[1] = 0;
    while (v >= 1) {
        if (tried[v] == 2) {
            tried[v] = 0;
            --v;
            continue;
        }
        a[v - 1] = tried[v]++;
        if (++nodes > node_cap) throw CapExceeded("satisfiability search exceeded node cap");
        if (!ok_at(v)) continue;
        if (v == f.n) return a;
        ++v;
        tried[v] = 0;
    }
    return std::nullopt;
}

inline bool is_satisfiable(const CnfFormula& f) { return find_satisfying(f).has_value(); }

/// Depth-first satisfiability for hypergraphs over referenced coordinates; returns a flat assignment.
inline std::optional<WordAssignment> find_satisfying(const ConstraintHypergraph& h,
                                                     std::uint64_t node_cap = std::uint64_t{1} << 34) {
    h.validate();
    auto d = detail::densify(h);
    const std::size_t c = d.coords.size();
    WordAssignment out(std::size_t(h.vertex_count) * h.k, 0);
    auto export_bits = [&](const std::vector<std::uint8_t>& bits) {
        for (std::size_t i = 0; i < c; ++i) out[std::size_t(d.coords[i].vertex) * h.k + d.coords[i].bit] = bits[i];
        return out;
    };
    // Constraints over no coordinate are constant.
    std::vector<std::vector<std::size_t>> due(c + 1);
    for (std::size_t i = 0; i < d.edges.size(); ++i) {
        bool empty = d.edges[i].table_coords.empty() &&
                     std::all_of(d.edges[i].polys.begin(), d.edges[i].polys.end(),
                                 [](const detail::DensePoly& p) { return p.monos.empty(); });
        due[empty ? c : d.edges[i].max_index].push_back(i);
    }
    for (auto i : due[c])
        if (!d.edges[i].satisfied(0)) return std::nullopt;
    if (c == 0) return out;
    if (c > 64) {
        // Generic path: evaluate through the flat assignment.
        std::vector<std::uint8_t> bits(c, 0), tried(c, 0);
        std::uint64_t nodes = 0;
        std::size_t v = 0;
        WordAssignment cur(out.size(), 0);
        auto ok_at = [&](std::size_t p) {
            for (auto i : due[p])
                if (!edge_satisfied(h, h.edges[i], cur)) return false;
            return true;
        };
        while (true) {
            if (tried[v] == 2) {
                tried[v] = 0;
                if (v == 0) return std::nullopt;
                --v;
                continue;
            }
            bits[v] = tried[v]++;
            cur[std::size_t(d.coords[v].vertex) * h.k + d.coords[v].bit] = bits[v];
            if (++nodes > node_cap) throw CapExceeded("satisfiability search exceeded node cap");
            if (!ok_at(v)) continue;
            if (v + 1 == c) return export_bits(bits);
            ++v;
        }
    }
    std::uint64_t a = 0, nodes = 0;
    std::vector<std::uint8_t> tried(c, 0);
    std::size_t v = 0;
    while (true) {
        if (tried[v] == 2) {
            tried[v] = 0;
            if (v == 0) return std::nullopt;
            --v;
            continue;
        }
        if (tried[v]++)
            a |= std::uint64_t{1} << v;
        else
            a &= ~(std::uint64_t{1} << v);
        if (++nodes > node_cap) throw CapExceeded("satisfiability search exceeded node cap");
        bool ok = std::all_of(due[v].begin(), due[v].end(), [&](std::size_t i) { return d.edges[i].satisfied(a); });
        if (!ok) continue;
        if (v + 1 == c) {
            std::vector<std::uint8_t> bits(c);
            for (std::size_t i = 0; i < c; ++i) bits[i] = (a >> i) & 1U;
            return export_bits(bits);
        }
        ++v;
    }
}

inline bool is_satisfiable(const ConstraintHypergraph& h) { return find_satisfying(h).has_value(); }

}  // namespace ufg
