#pragma once

#include <algorithm>
#include <bit>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ufg/error.hpp"
#include "ufg/random.hpp"
#include "ufg/rational.hpp"

namespace ufg {

/// Regular multigraph with an edge-expansion certificate. A self loop contributes one neighbour entry.
struct ExpanderSpec {
    std::uint32_t vertex_count = 0;
    std::uint32_t degree = 0;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
    bool positive = false;
    Rational eta = 0;             // exact minimum of cut(S)/|S| when certificate == "exact"
    std::string certificate;      // "exact", "spectral" or "vacuous"
    double spectral_lambda2 = 0;  // second adjacency eigenvalue estimate ("spectral" only)
    std::uint64_t seed_used = 0;
};

inline std::vector<std::uint32_t> degrees(std::uint32_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    std::vector<std::uint32_t> d(n, 0);
    for (auto [u, v] : edges) {
        ++d[u];
        if (v != u) ++d[v];
    }
    return d;
}

inline std::uint32_t self_loops_at(std::uint32_t v, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    std::uint32_t c = 0;
    for (auto [a, b] : edges) c += (a == v && b == v);
    return c;
}

/// min over nonempty S with |S| <= n/2 of |edges leaving S| / |S|, by full subset enumeration.
inline Rational exact_edge_expansion(std::uint32_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    if (n > 24) throw CapExceeded("exact expansion needs at most 24 vertices");
    std::optional<Rational> best;
    std::vector<std::pair<std::uint32_t, std::uint32_t>> cross;
    for (auto e : edges)
        if (e.first != e.second) cross.push_back(e);
    for (std::uint64_t s = 1; s < (std::uint64_t{1} << n); ++s) {
        auto size = static_cast<std::uint32_t>(std::popcount(s));
        if (2 * size > n) continue;
        std::uint64_t cut = 0;
        for (auto [u, v] : cross) cut += ((s >> u) ^ (s >> v)) & 1U;
        Rational r{BigInt(cut), BigInt(size)};
        if (!best || r < *best) best = r;
    }
    return best.value_or(Rational(0));
}

inline bool connected(std::uint32_t n, const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges) {
    std::vector<std::uint32_t> parent(n);
    std::iota(parent.begin(), parent.end(), 0U);
    auto find = [&](std::uint32_t x) {
        while (parent[x] != x) x = parent[x] = parent[parent[x]];
        return x;
    };
    for (auto [u, v] : edges) parent[find(u)] = find(v);
    for (std::uint32_t v = 1; v < n; ++v)
        if (find(v) != find(0)) return false;
    return true;
}

/// Second-largest adjacency eigenvalue of a d-regular multigraph by deflated power iteration.
inline double spectral_lambda2(std::uint32_t n, std::uint32_t d,
                               const std::vector<std::pair<std::uint32_t, std::uint32_t>>& edges, std::uint64_t seed) {
    Rng rng(seed);
    std::vector<double> x(n), y(n);
    for (auto& v : x) v = double(rng.below(1 << 20)) / double(1 << 20) - 0.5;
    double lambda = 0;
    for (int it = 0; it < 400; ++it) {
        double mean = std::accumulate(x.begin(), x.end(), 0.0) / n;
        for (auto& v : x) v -= mean;
        // shift by d keeps the spectrum nonnegative so the dominant remaining eigenvalue is lambda2 + d
        for (std::uint32_t i = 0; i < n; ++i) y[i] = d * x[i];
        for (auto [u, v] : edges) {
            if (u == v) {
                y[u] += x[u];
            } else {
                y[u] += x[v];
                y[v] += x[u];
            }
        }
        double norm = std::sqrt(std::inner_product(y.begin(), y.end(), y.begin(), 0.0));
        double xn = std::sqrt(std::inner_product(x.begin(), x.end(), x.begin(), 0.0));
        if (norm == 0 || xn == 0) return -double(d);
        lambda = norm / xn - d;
        for (std::uint32_t i = 0; i < n; ++i) x[i] = y[i] / norm;
    }
    return lambda;
}

/// Union of d seeded random perfect matchings (an odd vertex out gets a self loop), retried with derived seeds
/// until the graph expands. The positive variant adds d self loops per vertex.
inline ExpanderSpec make_expander(std::uint32_t n, std::uint64_t seed, std::uint32_t d = 3, bool positive = false) {
    if (n == 0) throw Error("expander needs at least one vertex");
    if (d == 0) throw Error("expander degree must be positive");
    ExpanderSpec x;
    x.vertex_count = n;
    for (std::uint64_t attempt = 0;; ++attempt) {
        if (attempt > 1000) throw Error("no expanding matching union found");
        std::uint64_t s = derive_seed(seed, attempt);
        Rng rng(s);
        std::vector<std::pair<std::uint32_t, std::uint32_t>> edges;
        for (std::uint32_t r = 0; r < d; ++r) {
            std::vector<std::uint32_t> perm(n);
            std::iota(perm.begin(), perm.end(), 0U);
            rng.shuffle(perm);
            for (std::uint32_t i = 0; i + 1 < n; i += 2)
                edges.emplace_back(std::min(perm[i], perm[i + 1]), std::max(perm[i], perm[i + 1]));
            if (n % 2) edges.emplace_back(perm[n - 1], perm[n - 1]);
        }
        if (n == 1) {
            x.certificate = "vacuous";
            x.eta = d;
        } else if (n <= 20) {
            x.eta = exact_edge_expansion(n, edges);
            if (x.eta <= 0) continue;
            x.certificate = "exact";
        } else {
            if (!connected(n, edges)) continue;
            x.certificate = "spectral";
            x.spectral_lambda2 = spectral_lambda2(n, d, edges, s);
            // Cheeger lower bound (d - lambda2) / 2, rounded down to 1/1024
            double bound = (double(d) - x.spectral_lambda2) / 2;
            x.eta = bound > 0 ? Rational(BigInt(static_cast<std::int64_t>(bound * 1024)), BigInt(1024)) : Rational(0);
        }
        x.edges = std::move(edges);
        x.seed_used = s;
        break;
    }
    x.degree = d;
    if (positive) {
        for (std::uint32_t v = 0; v < n; ++v)
            for (std::uint32_t r = 0; r < d; ++r) x.edges.emplace_back(v, v);
        x.degree = 2 * d;
        x.positive = true;
    }
    return x;
}

}  // namespace ufg
