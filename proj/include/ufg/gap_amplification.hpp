#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <queue>
#include <string>
#include <utility>
#include <vector>

#include "ufg/error.hpp"
#include "ufg/expander.hpp"
#include "ufg/hypergraph.hpp"
#include "ufg/random.hpp"
#include "ufg/rational.hpp"

namespace ufg {

/// Neighbour lists of a rank-2 hypergraph: entry (neighbour, edge index), sorted. A self loop appears once.
inline std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> adjacency(const ConstraintHypergraph& g) {
    std::vector<std::vector<std::pair<std::uint32_t, std::uint32_t>>> adj(g.vertex_count);
    for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
        const auto& vs = g.edges[e].verts;
        if (vs.empty() || vs.size() > 2) throw Error("edge " + std::to_string(e) + " is not a graph edge");
        std::uint32_t x = vs.front(), y = vs.back();
        adj[x].emplace_back(y, e);
        if (y != x) adj[y].emplace_back(x, e);
    }
    for (auto& l : adj) std::sort(l.begin(), l.end());
    return adj;
}

/// Common degree of a regular graph; throws otherwise.
inline std::uint32_t regular_degree(const ConstraintHypergraph& g) {
    auto adj = adjacency(g);
    if (adj.empty()) return 0;
    std::size_t d = adj[0].size();
    for (const auto& l : adj)
        if (l.size() != d) throw Error("graph is not regular");
    return static_cast<std::uint32_t>(d);
}

inline std::uint32_t self_loop_count(const ConstraintHypergraph& g, std::uint32_t v) {
    std::uint32_t c = 0;
    for (const auto& e : g.edges) c += (e.verts.front() == v && e.verts.back() == v);
    return c;
}

inline std::vector<GF2Poly> equality_polys(std::uint32_t x, std::uint32_t y, std::uint32_t k) {
    std::vector<GF2Poly> out;
    for (std::uint32_t j = 0; j < k; ++j) out.push_back(GF2Poly::var({x, j}) + GF2Poly::var({y, j}));
    return out;
}

struct RegularizeResult {
    ConstraintHypergraph graph;
    std::vector<std::uint32_t> origin;  // new vertex -> vertex it copies
    std::uint32_t expander_degree = 0;
};

/// Every vertex u becomes a cloud of deg(u) copies joined by an expander with equality constraints;
/// each copy keeps exactly one of u's original edges. Isolated vertices disappear.
inline RegularizeResult regularize(const ConstraintHypergraph& g, std::uint64_t seed, std::uint32_t d = 3) {
    g.validate();
    auto adj = adjacency(g);
    RegularizeResult r;
    r.expander_degree = d;
    r.graph.k = g.k;
    std::vector<std::uint32_t> first(g.vertex_count, 0);
    // copy of u serving its edge e at endpoint side (0 = first vertex, 1 = last)
    std::map<std::pair<std::uint32_t, std::uint32_t>, std::uint32_t> copy_of;
    for (std::uint32_t u = 0; u < g.vertex_count; ++u) {
        first[u] = r.graph.vertex_count;
        for (auto [nb, e] : adj[u]) {
            std::uint32_t c = r.graph.add_vertex();
            r.origin.push_back(u);
            copy_of[{u, e}] = c;
        }
    }
    for (std::uint32_t e = 0; e < g.edges.size(); ++e) {
        const auto& src = g.edges[e];
        std::uint32_t x = src.verts.front(), y = src.verts.back();
        std::uint32_t cx = copy_of.at({x, e}), cy = copy_of.at({y, e});
        std::vector<GF2Poly> polys;
        for (const auto& p : src.polys)
            polys.push_back(p.mapped([&](Coord c) { return Coord{c.vertex == x ? cx : cy, c.bit}; }));
        std::vector<std::uint32_t> verts = src.verts.size() == 1 ? std::vector<std::uint32_t>{cx}
                                                                  : std::vector<std::uint32_t>{cx, cy};
        r.graph.add_edge(std::move(verts), std::move(polys), src.weight);
    }
    std::map<std::uint32_t, ExpanderSpec> cache;
    for (std::uint32_t u = 0; u < g.vertex_count; ++u) {
        auto size = static_cast<std::uint32_t>(adj[u].size());
        if (size == 0) continue;
        auto it = cache.find(size);
        if (it == cache.end()) it = cache.emplace(size, make_expander(size, derive_seed(seed, size), d)).first;
        for (auto [p, q] : it->second.edges)
            r.graph.add_edge({first[u] + p, first[u] + q}, equality_polys(first[u] + p, first[u] + q, g.k));
    }
    return r;
}

inline WordAssignment lift_regularize(const RegularizeResult& r, const WordAssignment& a) {
    const std::uint32_t k = r.graph.k;
    WordAssignment out(std::size_t(r.graph.vertex_count) * k, 0);
    for (std::uint32_t v = 0; v < r.graph.vertex_count; ++v)
        for (std::uint32_t j = 0; j < k; ++j) out[std::size_t(v) * k + j] = a[std::size_t(r.origin[v]) * k + j];
    return out;
}

struct ExpanderizeResult {
    ConstraintHypergraph graph;
    std::uint32_t base_degree = 0;      // d0
    std::uint32_t expander_degree = 0;  // d
    ExpanderSpec expander;
};

/// Superimposes a d-expander with always-true constraints, then adds d + d0 always-true self loops per vertex.
inline ExpanderizeResult expanderize(const ConstraintHypergraph& g1, std::uint64_t seed, std::uint32_t d = 3) {
    ExpanderizeResult r;
    r.base_degree = regular_degree(g1);
    r.expander_degree = d;
    r.graph = g1;
    if (g1.vertex_count == 0) return r;
    r.expander = make_expander(g1.vertex_count, seed, d);
    for (auto [p, q] : r.expander.edges) r.graph.add_edge({p, q}, {});
    for (std::uint32_t v = 0; v < g1.vertex_count; ++v)
        for (std::uint32_t i = 0; i < d + r.base_degree; ++i) r.graph.add_edge({v, v}, {});
    return r;
}

struct PowerMode {
    bool exhaustive = true;
    std::uint64_t samples = 0;
    std::uint64_t seed = 0;
    std::uint64_t cap = std::uint64_t{1} << 20;  // exhaustive edge cap
};

struct PowerResult {
    ConstraintHypergraph graph;
    std::vector<std::vector<std::uint32_t>> balls;  // sorted vertices within distance t
    std::uint32_t base_k = 0;
    std::uint32_t max_ball = 0;
    std::uint32_t degree = 0;
    std::uint32_t t = 0;
    std::uint64_t null_walks = 0;
};

namespace detail {

inline std::optional<std::uint32_t> ball_pos(const std::vector<std::uint32_t>& ball, std::uint32_t v) {
    auto it = std::lower_bound(ball.begin(), ball.end(), v);
    if (it == ball.end() || *it != v) return std::nullopt;
    return static_cast<std::uint32_t>(it - ball.begin());
}

}  // namespace detail

/// Powering by lazy random walks. A vertex's word holds its opinion (base_k bits per slot) on each member of
/// its t-ball in sorted order; slots past the ball size carry no opinion and are never read.
/// A walk a -> b checks opinion equality on path vertices both endpoints see and every path edge constraint
/// through whichever endpoint sees both of its ends. Null walks become always-true self loops.
inline PowerResult power_graph(const ConstraintHypergraph& g2, std::uint32_t t, const PowerMode& mode) {
    if (t == 0) throw Error("power_graph needs t >= 1");
    g2.validate();
    const auto adj = adjacency(g2);
    PowerResult r;
    r.t = t;
    r.base_k = g2.k;
    r.degree = regular_degree(g2);
    const std::uint32_t D = r.degree;
    const std::uint32_t n = g2.vertex_count;
    r.balls.resize(n);
    for (std::uint32_t v = 0; v < n; ++v) {
        std::vector<std::uint32_t> dist(n, ~0U);
        std::queue<std::uint32_t> q;
        dist[v] = 0;
        q.push(v);
        while (!q.empty()) {
            auto x = q.front();
            q.pop();
            r.balls[v].push_back(x);
            if (dist[x] == t) continue;
            for (auto [y, e] : adj[x])
                if (dist[y] == ~0U) {
                    dist[y] = dist[x] + 1;
                    q.push(y);
                }
        }
        std::sort(r.balls[v].begin(), r.balls[v].end());
        r.max_ball = std::max<std::uint32_t>(r.max_ball, static_cast<std::uint32_t>(r.balls[v].size()));
    }
    const std::uint32_t k = g2.k;
    r.graph.vertex_count = n;
    r.graph.k = k * r.max_ball;

    auto walk_edge = [&](std::uint32_t a, const std::vector<std::uint32_t>& path, const std::vector<std::uint32_t>& via,
                         Rational weight) {
        std::uint32_t b = path.back();
        const auto& ba = r.balls[a];
        const auto& bb = r.balls[b];
        std::vector<GF2Poly> polys;
        if (a != b) {
            std::vector<std::uint32_t> seen;
            for (auto x : path) {
                if (std::find(seen.begin(), seen.end(), x) != seen.end()) continue;
                seen.push_back(x);
                auto pa = detail::ball_pos(ba, x), pb = detail::ball_pos(bb, x);
                if (!pa || !pb) continue;
                for (std::uint32_t j = 0; j < k; ++j)
                    polys.push_back(GF2Poly::var({a, *pa * k + j}) + GF2Poly::var({b, *pb * k + j}));
            }
        }
        for (auto e : via) {
            const auto& src = g2.edges[e];
            std::uint32_t x = src.verts.front(), y = src.verts.back();
            std::uint32_t owner;
            const std::vector<std::uint32_t>* ball;
            if (detail::ball_pos(ba, x) && detail::ball_pos(ba, y)) {
                owner = a;
                ball = &ba;
            } else if (detail::ball_pos(bb, x) && detail::ball_pos(bb, y)) {
                owner = b;
                ball = &bb;
            } else {
                continue;
            }
            for (const auto& p : src.polys)
                polys.push_back(p.mapped([&](Coord c) { return Coord{owner, *detail::ball_pos(*ball, c.vertex) * k + c.bit}; }));
        }
        r.graph.add_edge({a, b}, std::move(polys), std::move(weight));
    };

    const std::uint32_t steps = 5 * t;
    if (mode.exhaustive) {
        // Distinct stopped prefixes, each weighted by how many index tuples share it.
        auto pow = [](std::uint64_t base, std::uint32_t e) {
            BigInt out = 1;
            for (std::uint32_t i = 0; i < e; ++i) out *= base;
            return out;
        };
        std::uint64_t emitted = 0;
        for (std::uint32_t a = 0; a < n; ++a) {
            std::vector<std::uint32_t> path{a}, via;
            auto rec = [&](auto&& self, std::uint32_t len) -> void {
                for (std::uint32_t i = 0; i < D; ++i) {
                    auto [nb, e] = adj[path.back()][i];
                    path.push_back(nb);
                    via.push_back(e);
                    if (++emitted > mode.cap) throw CapExceeded("exhaustive walk enumeration exceeds cap");
                    Rational w(pow(t - 1, len) * pow(std::uint64_t(D) * t, steps - len - 1));
                    walk_edge(a, path, via, w);
                    if (t > 1 && len + 1 < steps) self(self, len + 1);
                    path.pop_back();
                    via.pop_back();
                }
            };
            if (D > 0) rec(rec, 0);
            if (t > 1) {
                r.graph.add_edge({a, a}, {}, Rational(pow(std::uint64_t(D) * (t - 1), steps)));
                ++r.null_walks;
            }
        }
    } else {
        Rng rng(mode.seed);
        for (std::uint64_t s = 0; s < mode.samples; ++s) {
            auto a = static_cast<std::uint32_t>(rng.below(n));
            std::vector<std::uint32_t> path{a}, via;
            bool stopped = false;
            for (std::uint32_t st = 0; st < steps; ++st) {
                auto i = rng.below(D);
                auto j = rng.below(t) + 1;
                auto [nb, e] = adj[path.back()][i];
                path.push_back(nb);
                via.push_back(e);
                if (j == 1) {
                    stopped = true;
                    break;
                }
            }
            if (stopped) {
                walk_edge(a, path, via, 1);
            } else {
                r.graph.add_edge({a, a}, {}, 1);
                ++r.null_walks;
            }
        }
    }
    return r;
}

/// Every vertex states the true value of each vertex in its ball.
inline WordAssignment lift_power(const PowerResult& r, const WordAssignment& a) {
    const std::uint32_t k = r.base_k, s = r.graph.k;
    WordAssignment out(std::size_t(r.graph.vertex_count) * s, 0);
    for (std::uint32_t v = 0; v < r.graph.vertex_count; ++v)
        for (std::uint32_t p = 0; p < r.balls[v].size(); ++p)
            for (std::uint32_t j = 0; j < k; ++j)
                out[std::size_t(v) * s + p * k + j] = a[std::size_t(r.balls[v][p]) * k + j];
    return out;
}

}  // namespace ufg
