#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "ufg/bitvec.hpp"
#include "ufg/error.hpp"
#include "ufg/hypergraph.hpp"
#include "ufg/random.hpp"
#include "ufg/rational.hpp"

namespace ufg {

struct AlphabetMode {
    bool exhaustive = true;
    std::uint64_t samples = 0;  // parameter tuples drawn in sample mode (7 constraints each)
    std::uint64_t seed = 0;
    std::uint64_t cap = std::uint64_t{1} << 22;  // exhaustive vertex + edge cap
};

/// What an output vertex encodes: kind 0 is v(L) for vertex `owner`, 1 is e(L) and 2 is e(q) for edge `owner`.
struct AlphabetKey {
    std::uint8_t kind = 0;
    std::uint32_t owner = 0;
    BitVec mask;

    friend bool operator==(const AlphabetKey&, const AlphabetKey&) = default;
    friend auto operator<=>(const AlphabetKey& a, const AlphabetKey& b) {
        if (auto c = a.kind <=> b.kind; c != 0) return c;
        if (auto c = a.owner <=> b.owner; c != 0) return c;
        return a.mask <=> b.mask;
    }
};

struct AlphabetResult {
    ConstraintHypergraph graph;  // k = 1, rank <= 4, 1-restricted
    std::uint32_t base_k = 0;
    std::uint32_t m = 0;
    std::vector<AlphabetKey> keys;  // per output vertex
    std::vector<std::pair<std::uint32_t, std::uint32_t>> ends;  // per input edge (u, v)
    std::uint64_t tuples = 0;
    bool exhaustive = true;
};

namespace detail {

/// Edge polynomial split over the 2k positions of X = A(u), Y = A(v): quadratic pairs, linear part, constant.
struct SplitPoly {
    BitVec quad;
    BitVec lin;
    bool constant = false;
};

inline SplitPoly split_poly(const GF2Poly& p, std::uint32_t u, std::uint32_t k) {
    const std::size_t l = 2 * std::size_t(k);
    SplitPoly s{BitVec(pair_count(l)), BitVec(l), p.constant()};
    auto pos = [&](Coord c) { return std::size_t(c.vertex == u ? c.bit : k + c.bit); };
    for (const auto& mono : p.monomials()) {
        std::size_t a = pos(mono.lo), b = pos(mono.hi);
        if (mono.linear() || a == b) {
            s.lin.flip(a);
        } else {
            if (a > b) std::swap(a, b);
            s.quad.flip(pair_index(a, b, l));
        }
    }
    return s;
}

/// Uniform value in [0, bound) for a big bound, by rejection over whole 64-bit limbs.
inline BigInt below_big(Rng& rng, const BigInt& bound) {
    if (bound <= 1) return 0;
    const unsigned bits = static_cast<unsigned>(boost::multiprecision::msb(bound - 1)) + 1;
    while (true) {
        BigInt r = 0;
        for (unsigned got = 0; got < bits; got += 64) r = (r << 64) | BigInt(rng.next());
        r &= (BigInt(1) << bits) - 1;
        if (r < bound) return r;
    }
}

}  // namespace detail

/// Rank-4, 1-restricted hypergraph over F_2 from an m-restricted rank-2 graph over F_2^k: Hadamard codes of
/// vertex words, Hadamard and quadratic codes of edge words, and the seven constraint families per
/// parameter tuple (e, L1, L2, L3, L4, q1, q2, w).
inline AlphabetResult alphabet_reduce(const ConstraintHypergraph& g, const AlphabetMode& mode) {
    g.validate();
    if (!g.restricted()) throw Error("alphabet reduction needs m-restricted constraints");
    if (g.rank() > 2) throw Error("alphabet reduction needs a rank-2 graph");
    AlphabetResult r;
    r.exhaustive = mode.exhaustive;
    const std::uint32_t k = g.k;
    r.base_k = k;
    r.m = static_cast<std::uint32_t>(g.restriction());
    const std::uint32_t m = r.m;
    const std::size_t l = 2 * std::size_t(k), ql = pair_count(l);
    r.graph.k = 1;
    for (const auto& e : g.edges) r.ends.emplace_back(e.verts.front(), e.verts.back());

    std::map<AlphabetKey, std::uint32_t> ids;
    auto vertex = [&](std::uint8_t kind, std::uint32_t owner, const BitVec& mask) {
        AlphabetKey key{kind, owner, mask};
        auto [it, fresh] = ids.try_emplace(key, r.graph.vertex_count);
        if (fresh) {
            r.graph.add_vertex();
            r.keys.push_back(std::move(key));
        }
        return it->second;
    };
    auto X = [](std::uint32_t v) { return GF2Poly::var({v, 0}); };

    std::vector<std::vector<detail::SplitPoly>> split(g.edges.size());
    for (std::size_t e = 0; e < g.edges.size(); ++e)
        for (const auto& p : g.edges[e].polys) split[e].push_back(detail::split_poly(p, r.ends[e].first, k));

    auto emit = [&](std::uint32_t e, const BitVec& L1, const BitVec& L2, const BitVec& L3, const BitVec& L4,
                    const BitVec& q1, const BitVec& q2, const BitVec& w, const Rational& weight) {
        auto [u, v] = r.ends[e];
        auto hadamard3 = [&](std::uint8_t kind, std::uint32_t owner, const BitVec& a, const BitVec& b) {
            std::uint32_t x = vertex(kind, owner, a), y = vertex(kind, owner, b), z = vertex(kind, owner, a ^ b);
            r.graph.add_edge({x, y, z}, {X(x) + X(y) + X(z)}, weight);
        };
        hadamard3(0, u, L1, L2);  // 1
        hadamard3(0, v, L1, L2);  // 2
        hadamard3(1, e, L3, L4);  // 3
        hadamard3(2, e, q1, q2);  // 4
        {                         // 5: L(X, Y) = L1(X) + L2(Y)
            BitVec L(l);
            for (std::uint32_t i = 0; i < k; ++i) {
                L.set(i, L1.get(i));
                L.set(k + i, L2.get(i));
            }
            std::uint32_t a = vertex(0, u, L1), b = vertex(0, v, L2), c = vertex(1, e, L);
            r.graph.add_edge({a, b, c}, {X(a) + X(b) + X(c)}, weight);
        }
        {  // 6: L4 restricted off L3 keeps L3 * L4' homogeneous
            BitVec L4p = L4 & ~L3;
            BitVec Q(ql);
            for (std::size_t i = 0; i < l; ++i)
                if (L3.get(i))
                    for (std::size_t j = 0; j < l; ++j)
                        if (L4p.get(j)) Q.flip(pair_index(std::min(i, j), std::max(i, j), l));
            std::uint32_t a = vertex(1, e, L3), b = vertex(1, e, L4p), c = vertex(2, e, q1 ^ Q), d = vertex(2, e, q1);
            r.graph.add_edge({a, b, c, d}, {X(a) * X(b) + X(c) + X(d)}, weight);
        }
        {  // 7: P = sum w_i P_i = Pq + Pl + b
            BitVec Pq(ql), Pl(l);
            bool b = false;
            for (std::size_t i = 0; i < split[e].size(); ++i)
                if (w.get(i)) {
                    Pq ^= split[e][i].quad;
                    Pl ^= split[e][i].lin;
                    b ^= split[e][i].constant;
                }
            std::uint32_t a = vertex(2, e, q1 ^ Pq), c = vertex(2, e, q1), d = vertex(1, e, Pl);
            r.graph.add_edge({a, c, d}, {X(a) + X(c) + X(d) + GF2Poly(b)}, weight);
        }
        ++r.tuples;
    };

    if (mode.exhaustive) {
        const std::size_t bits = 2 * k + 2 * l + 2 * ql + m;
        if (bits > 40) throw CapExceeded("exhaustive alphabet reduction is astronomically large");
        BigInt verts = BigInt(g.vertex_count) * (BigInt(1) << k) +
                       BigInt(g.edges.size()) * ((BigInt(1) << l) + (BigInt(1) << ql));
        BigInt edges = BigInt(7) * g.edges.size() * (BigInt(1) << bits);
        if (verts + edges > mode.cap) throw CapExceeded("exhaustive alphabet reduction exceeds cap");
        // vertices in closed-form order: v(L) per vertex, then e(L) and e(q) per edge
        for (std::uint32_t v = 0; v < g.vertex_count; ++v)
            for (std::uint64_t L = 0; L < (std::uint64_t{1} << k); ++L) vertex(0, v, BitVec::from_u64(k, L));
        for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
            for (std::uint64_t L = 0; L < (std::uint64_t{1} << l); ++L) vertex(1, e, BitVec::from_u64(l, L));
            for (std::uint64_t q = 0; q < (std::uint64_t{1} << ql); ++q) vertex(2, e, BitVec::from_u64(ql, q));
        }
        const std::uint64_t nk = std::uint64_t{1} << k, nl = std::uint64_t{1} << l, nq = std::uint64_t{1} << ql,
                            nw = std::uint64_t{1} << m;
        for (std::uint32_t e = 0; e < g.edges.size(); ++e)
            for (std::uint64_t a1 = 0; a1 < nk; ++a1)
                for (std::uint64_t a2 = 0; a2 < nk; ++a2)
                    for (std::uint64_t a3 = 0; a3 < nl; ++a3)
                        for (std::uint64_t a4 = 0; a4 < nl; ++a4)
                            for (std::uint64_t b1 = 0; b1 < nq; ++b1)
                                for (std::uint64_t b2 = 0; b2 < nq; ++b2)
                                    for (std::uint64_t w = 0; w < nw; ++w)
                                        emit(e, BitVec::from_u64(k, a1), BitVec::from_u64(k, a2),
                                             BitVec::from_u64(l, a3), BitVec::from_u64(l, a4),
                                             BitVec::from_u64(ql, b1), BitVec::from_u64(ql, b2),
                                             BitVec::from_u64(m, w), g.edges[e].weight);
    } else {
        if (g.edges.empty()) return r;
        // edges drawn proportionally to weight, on a common integer scale
        BigInt scale = 1;
        for (const auto& e : g.edges) scale = boost::multiprecision::lcm(scale, boost::multiprecision::denominator(e.weight));
        std::vector<BigInt> cumulative;
        BigInt total = 0;
        for (const auto& e : g.edges) {
            total += boost::multiprecision::numerator(e.weight) * (scale / boost::multiprecision::denominator(e.weight));
            cumulative.push_back(total);
        }
        if (total == 0) throw Error("alphabet reduction sampling needs positive total weight");
        Rng rng(mode.seed);
        for (std::uint64_t s = 0; s < mode.samples; ++s) {
            BigInt pick = detail::below_big(rng, total);
            auto e = static_cast<std::uint32_t>(std::upper_bound(cumulative.begin(), cumulative.end(), pick) -
                                                cumulative.begin());
            BitVec L1 = BitVec::random(k, rng), L2 = BitVec::random(k, rng);
            BitVec L3 = BitVec::random(l, rng), L4 = BitVec::random(l, rng);
            BitVec q1 = BitVec::random(ql, rng), q2 = BitVec::random(ql, rng);
            BitVec w = BitVec::random(m, rng);
            emit(e, L1, L2, L3, L4, q1, q2, w, 1);
        }
    }
    return r;
}

/// Hadamard codes on v(L) and e(L), quadratic codes on e(q), from a word assignment of the input graph.
inline WordAssignment lift_alphabet(const AlphabetResult& r, const WordAssignment& a) {
    const std::uint32_t k = r.base_k;
    const std::size_t l = 2 * std::size_t(k), ql = pair_count(l);
    auto word = [&](std::uint32_t v) {
        BitVec x(k);
        for (std::uint32_t j = 0; j < k; ++j) x.set(j, a[std::size_t(v) * k + j] != 0);
        return x;
    };
    std::map<std::uint32_t, std::pair<BitVec, BitVec>> edge_codes;  // (X o Y, pair products)
    auto edge_code = [&](std::uint32_t e) -> const std::pair<BitVec, BitVec>& {
        auto it = edge_codes.find(e);
        if (it != edge_codes.end()) return it->second;
        BitVec xy(l), pairs(ql);
        for (std::uint32_t j = 0; j < k; ++j) {
            xy.set(j, a[std::size_t(r.ends[e].first) * k + j] != 0);
            xy.set(k + j, a[std::size_t(r.ends[e].second) * k + j] != 0);
        }
        for (std::size_t i = 0; i < l; ++i)
            for (std::size_t j = i + 1; j < l; ++j) pairs.set(pair_index(i, j, l), xy.get(i) && xy.get(j));
        return edge_codes.emplace(e, std::make_pair(std::move(xy), std::move(pairs))).first->second;
    };
    WordAssignment out(r.graph.vertex_count, 0);
    for (std::uint32_t i = 0; i < r.keys.size(); ++i) {
        const auto& key = r.keys[i];
        switch (key.kind) {
            case 0: out[i] = word(key.owner).dot(key.mask); break;
            case 1: out[i] = edge_code(key.owner).first.dot(key.mask); break;
            default: out[i] = edge_code(key.owner).second.dot(key.mask); break;
        }
    }
    return out;
}

}  // namespace ufg
