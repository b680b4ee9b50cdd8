#pragma once

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "ufg/core.hpp"
#include "ufg/error.hpp"
#include "ufg/rational.hpp"

namespace ufg {

/// theta[h-1] is the flower size that triggers branching on a heart of h literals.
struct SparsifyParams {
    Rational epsilon = make_rational(3, 10);
    std::vector<std::uint64_t> theta;  // empty: derive from alpha
    std::uint64_t alpha = 0;           // filled in by resolve()
};

/// Smallest integer alpha with alpha / log2(4 alpha) > 4k 2^(k-1) n^eps, k = 3.
inline std::uint64_t sparsify_alpha(std::uint32_t n, const Rational& eps) {
    const double rhs = 48.0 * std::pow(double(std::max<std::uint32_t>(n, 1)), to_double(eps));
    std::uint64_t a = 1;
    while (double(a) / std::log2(4.0 * double(a)) <= rhs) a = a < 16 ? a + 1 : a + a / 16;
    // step back to the smallest qualifying value
    std::uint64_t lo = a / 2 > 0 ? a / 2 : 1;
    while (lo < a) {
        std::uint64_t mid = lo + (a - lo) / 2;
        if (double(mid) / std::log2(4.0 * double(mid)) > rhs)
            a = mid;
        else
            lo = mid + 1;
    }
    return a;
}

inline SparsifyParams resolve(SparsifyParams p, std::uint32_t n) {
    if (p.epsilon <= 0 || p.epsilon >= 1) throw Error("sparsify epsilon must lie in (0, 1)");
    if (p.theta.empty()) {
        p.alpha = sparsify_alpha(n, p.epsilon);
        const std::uint64_t four_a = 4 * p.alpha;
        p.theta = {four_a * four_a, four_a};  // (4a)^(2^(k-1-h)) for h = 1, 2
    }
    if (p.theta.size() != 2 || p.theta[0] == 0 || p.theta[1] == 0 || p.theta[1] > p.theta[0])
        throw Error("sparsify thresholds must be positive and nonincreasing in heart size");
    return p;
}

namespace detail {

using LitSet = std::vector<Literal>;  // sorted, duplicate-free

inline LitSet lit_set(const Clause& c) {
    LitSet s = c.slots;
    std::sort(s.begin(), s.end());
    s.erase(std::unique(s.begin(), s.end()), s.end());
    return s;
}

inline bool contains(const LitSet& big, const LitSet& small) {
    return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline void push_unique(std::vector<LitSet>& cls, std::set<LitSet>& seen, LitSet c) {
    if (seen.insert(c).second) cls.push_back(std::move(c));
}

/// Heart with the largest flower among those at or over threshold; ties go to the smallest heart.
inline std::optional<LitSet> pick_heart(const std::vector<LitSet>& cls, const std::vector<std::uint64_t>& theta) {
    std::map<LitSet, std::uint64_t> flower;
    for (const auto& c : cls) {
        for (std::size_t i = 0; i < c.size(); ++i) {
            if (c.size() > 1) ++flower[{c[i]}];
            for (std::size_t j = i + 1; j < c.size() && c.size() > 2; ++j) ++flower[{c[i], c[j]}];
        }
    }
    std::optional<LitSet> best;
    std::uint64_t best_size = 0;
    for (const auto& [h, cnt] : flower) {
        if (cnt < theta[h.size() - 1]) continue;
        if (!best || cnt > best_size) {
            best = h;
            best_size = cnt;
        }
    }
    return best;
}

}  // namespace detail

struct SparsifyResult {
    std::vector<CnfFormula> branches;
    SparsifyParams params;
};

/// Flower branching: for a heart H whose flower (clauses strictly containing H) reaches its threshold,
/// either H holds (add H, drop the flower) or every literal of H is false (replace each flower clause by its petal).
inline SparsifyResult sparsify(const CnfFormula& phi, SparsifyParams params) {
    if (phi.kind != Kind::Sat) throw Error("sparsify needs a SAT-kind formula");
    phi.validate();
    if (phi.max_width() > 3) throw Error("sparsify needs a 3CNF formula");
    SparsifyResult res;
    res.params = resolve(std::move(params), phi.n);
    const auto& theta = res.params.theta;
    const std::uint64_t hard_cap = phi.n >= 63 ? ~std::uint64_t{0} : (std::uint64_t{1} << phi.n);

    std::vector<detail::LitSet> start;
    for (const auto& c : phi.clauses) start.push_back(detail::lit_set(c));
    if (!detail::pick_heart(start, theta)) {
        res.branches.push_back(phi);
        return res;
    }
    auto to_formula = [&](const std::vector<detail::LitSet>& cls) {
        CnfFormula f;
        f.n = phi.n;
        for (const auto& c : cls) f.add(c);
        return f;
    };
    std::vector<std::vector<detail::LitSet>> stack{std::move(start)};
    while (!stack.empty()) {
        auto cls = std::move(stack.back());
        stack.pop_back();
        auto heart = detail::pick_heart(cls, theta);
        if (!heart) {
            if (res.branches.size() >= hard_cap) throw CapExceeded("sparsify produced more than 2^n branches");
            res.branches.push_back(to_formula(cls));
            continue;
        }
        std::vector<detail::LitSet> take, petals;
        std::set<detail::LitSet> seen_take, seen_petals;
        for (const auto& c : cls) {
            bool in_flower = c.size() > heart->size() && detail::contains(c, *heart);
            if (!in_flower) {
                detail::push_unique(take, seen_take, c);
                detail::push_unique(petals, seen_petals, c);
                continue;
            }
            detail::LitSet petal;
            std::set_difference(c.begin(), c.end(), heart->begin(), heart->end(), std::back_inserter(petal));
            detail::push_unique(petals, seen_petals, std::move(petal));
        }
        detail::push_unique(take, seen_take, *heart);
        // DFS order: the heart-true branch is explored first.
        stack.push_back(std::move(petals));
        stack.push_back(std::move(take));
    }
    return res;
}

}  // namespace ufg
