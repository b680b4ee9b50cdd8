#pragma once

#include <algorithm>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ufg/core.hpp"
#include "ufg/error.hpp"
#include "ufg/gf2poly.hpp"
#include "ufg/rational.hpp"

namespace ufg {

/// One constraint of a hypergraph. Satisfied iff every polynomial is 0, or, when `table` is set,
/// iff table[index] == 1 where index packs the bits of `verts` in tuple order (vertex-major, bit 0 lowest).
struct HyperEdge {
    std::vector<std::uint32_t> verts;
    Rational weight = 1;
    std::vector<GF2Poly> polys;
    std::optional<std::vector<std::uint8_t>> table;

    friend bool operator==(const HyperEdge&, const HyperEdge&) = default;
};

struct ConstraintHypergraph {
    std::uint32_t vertex_count = 0;
    std::uint32_t k = 1;  // alphabet is F_2^k
    std::vector<HyperEdge> edges;

    friend bool operator==(const ConstraintHypergraph&, const ConstraintHypergraph&) = default;

    std::size_t rank() const {
        std::size_t r = 0;
        for (const auto& e : edges) r = std::max(r, e.verts.size());
        return r;
    }

    /// Largest number of polynomials on one edge (the m of m-restricted).
    std::size_t restriction() const {
        std::size_t m = 0;
        for (const auto& e : edges) m = std::max(m, e.polys.size());
        return m;
    }

    bool restricted() const {
        return std::none_of(edges.begin(), edges.end(), [](const HyperEdge& e) { return e.table.has_value(); });
    }

    std::size_t size() const { return vertex_count + edges.size(); }

    Rational total_weight() const {
        Rational w = 0;
        for (const auto& e : edges) w += e.weight;
        return w;
    }

    std::uint32_t add_vertex() { return vertex_count++; }

    void add_edge(std::vector<std::uint32_t> verts, std::vector<GF2Poly> polys, Rational weight = 1) {
        edges.push_back(HyperEdge{std::move(verts), std::move(weight), std::move(polys), std::nullopt});
    }

    /// Throws if a polynomial references a coordinate outside its edge or the alphabet.
    void validate() const {
        for (std::size_t i = 0; i < edges.size(); ++i) {
            const auto& e = edges[i];
            if (e.weight < 0) throw Error("edge " + std::to_string(i) + " has negative weight");
            for (auto v : e.verts)
                if (v >= vertex_count) throw Error("edge " + std::to_string(i) + " references missing vertex");
            for (const auto& p : e.polys)
                p.for_each_coord([&](Coord c) {
                    if (c.bit >= k) throw Error("edge " + std::to_string(i) + " reads bit beyond alphabet");
                    if (std::find(e.verts.begin(), e.verts.end(), c.vertex) == e.verts.end())
                        throw Error("edge " + std::to_string(i) + " polynomial reads a vertex outside the edge");
                });
            if (e.table && e.table->size() != (std::size_t{1} << (k * e.verts.size())))
                throw Error("edge " + std::to_string(i) + " truth table has wrong size");
        }
    }
};

/// Flat hypergraph assignment: bit j of vertex v lives at index v*k + j.
using WordAssignment = Bits;

inline bool edge_satisfied(const ConstraintHypergraph& h, const HyperEdge& e, const WordAssignment& a) {
    auto bit = [&](Coord c) { return a[std::size_t(c.vertex) * h.k + c.bit] != 0; };
    if (e.table) {
        std::size_t idx = 0, pos = 0;
        for (auto v : e.verts)
            for (std::uint32_t j = 0; j < h.k; ++j, ++pos)
                if (a[std::size_t(v) * h.k + j]) idx |= std::size_t{1} << pos;
        return (*e.table)[idx] != 0;
    }
    return std::none_of(e.polys.begin(), e.polys.end(), [&](const GF2Poly& p) { return p.evaluate(bit); });
}

inline Rational unsatisfied_weight(const ConstraintHypergraph& h, const WordAssignment& a) {
    Rational w = 0;
    for (const auto& e : h.edges)
        if (!edge_satisfied(h, e, a)) w += e.weight;
    return w;
}

inline bool satisfied_by(const ConstraintHypergraph& h, const WordAssignment& a) {
    return std::all_of(h.edges.begin(), h.edges.end(), [&](const HyperEdge& e) { return edge_satisfied(h, e, a); });
}

/// The polarity-free part of a hypergraph: vertex count, alphabet, ordered edge tuples and weights.
struct HyperStructure {
    std::uint32_t vertex_count = 0;
    std::uint32_t k = 1;
    std::vector<std::vector<std::uint32_t>> edges;
    std::vector<Rational> weights;

    friend bool operator==(const HyperStructure&, const HyperStructure&) = default;
};

inline HyperStructure structure_of(const ConstraintHypergraph& h) {
    HyperStructure s{h.vertex_count, h.k, {}, {}};
    for (const auto& e : h.edges) {
        s.edges.push_back(e.verts);
        s.weights.push_back(e.weight);
    }
    return s;
}

/// Same structure, and per edge the same polynomials up to their constant terms.
inline bool is_close(const ConstraintHypergraph& a, const ConstraintHypergraph& b) {
    if (!a.restricted() || !b.restricted()) throw Error("is_close needs m-restricted constraints");
    if (structure_of(a) != structure_of(b)) return false;
    for (std::size_t i = 0; i < a.edges.size(); ++i) {
        const auto& pa = a.edges[i].polys;
        const auto& pb = b.edges[i].polys;
        if (pa.size() != pb.size()) return false;
        for (std::size_t j = 0; j < pa.size(); ++j)
            if (!pa[j].same_homogeneous_part(pb[j])) return false;
    }
    return true;
}

}  // namespace ufg
