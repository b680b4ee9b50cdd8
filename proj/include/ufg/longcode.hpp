#pragma once

#include <algorithm>
#include <array>
#include <bit>
#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

#include "ufg/core.hpp"
#include "ufg/error.hpp"
#include "ufg/rational.hpp"

namespace ufg {

/// Functions in F_n are truth-table ids: bit x of the id is f(x). The order on F_n is numeric order of ids.
constexpr std::uint32_t kLongCodeCap = 4;

inline std::uint32_t point_count(std::uint32_t n) { return 1U << n; }

inline std::uint32_t function_count(std::uint32_t n) {
    if (n > kLongCodeCap) throw CapExceeded("long-code tables are materialized only for n <= 4");
    return 1U << point_count(n);
}

inline std::uint32_t all_ones(std::uint32_t n) { return function_count(n) - 1; }  // the constant-1 function

inline bool eval_function(std::uint32_t f, std::uint32_t x) { return (f >> x) & 1U; }

struct LongCodeWord {
    std::uint32_t n = 0;
    std::vector<std::uint8_t> table;  // one bit per f in F_n

    friend bool operator==(const LongCodeWord&, const LongCodeWord&) = default;
};

inline LongCodeWord encode_long_code(std::uint32_t n, std::uint32_t x) {
    const std::uint32_t count = function_count(n);
    if (x >= point_count(n)) throw Error("long-code point out of range");
    LongCodeWord w{n, std::vector<std::uint8_t>(count)};
    for (std::uint32_t f = 0; f < count; ++f) w.table[f] = eval_function(f, x);
    return w;
}

inline std::vector<LongCodeWord> all_long_codes(std::uint32_t n) {
    std::vector<LongCodeWord> out;
    for (std::uint32_t x = 0; x < point_count(n); ++x) out.push_back(encode_long_code(n, x));
    return out;
}

struct FoldingBasis {
    std::uint32_t n = 0;
    std::vector<std::pair<std::uint32_t, std::uint8_t>> pairs;  // (h_i, b_i)
};

/// Canonical coset access for a linearly independent basis {h_i}.
/// mu(f) is the smallest element of f + span{h_i}; sigma(f) records which h_i were added to reach it.
class Folding {
public:
    Folding() = default;

    explicit Folding(FoldingBasis basis) : basis_(std::move(basis)) {
        const std::uint32_t count = function_count(basis_.n);
        if (basis_.pairs.size() > 31) throw Error("folding basis too large");
        for (std::uint32_t i = 0; i < basis_.pairs.size(); ++i) {
            auto [h, b] = basis_.pairs[i];
            if (h >= count) throw Error("folding function outside F_n");
            if (b) bmask_ |= 1U << i;
            Row r{h, 1U << i};
            for (const auto& row : rows_)
                if (r.vec & lead(row)) {
                    r.vec ^= row.vec;
                    r.combo ^= row.combo;
                }
            if (r.vec == 0) throw Error("folding basis is linearly dependent");
            for (auto& row : rows_)
                if (row.vec & lead(r)) {
                    row.vec ^= r.vec;
                    row.combo ^= r.combo;
                }
            rows_.push_back(r);
            std::sort(rows_.begin(), rows_.end(), [](const Row& a, const Row& b) { return a.vec > b.vec; });
        }
    }

    const FoldingBasis& basis() const { return basis_; }

    /// (mu(f), sigma(f) as a bit mask over basis positions).
    std::pair<std::uint32_t, std::uint32_t> canonical(std::uint32_t f) const {
        std::uint32_t combo = 0;
        for (const auto& row : rows_)  // descending leading bit
            if (f & lead(row)) {
                f ^= row.vec;
                combo ^= row.combo;
            }
        return {f, combo};
    }

    std::uint32_t mu(std::uint32_t f) const { return canonical(f).first; }

    /// sum_i sigma_i(f) b_i
    bool shift(std::uint32_t f) const { return std::popcount(canonical(f).second & bmask_) & 1U; }

    bool is_representative(std::uint32_t f) const { return mu(f) == f; }

    /// B_f = A_mu(f) + sum sigma_i b_i. Only A at representatives is read.
    bool read(const std::vector<std::uint8_t>& stored, std::uint32_t f) const {
        auto [m, combo] = canonical(f);
        return (stored.at(m) != 0) != static_cast<bool>(std::popcount(combo & bmask_) & 1U);
    }

    std::vector<std::uint32_t> representatives() const {
        std::vector<std::uint32_t> out;
        for (std::uint32_t f = 0; f < function_count(basis_.n); ++f)
            if (is_representative(f)) out.push_back(f);
        return out;
    }

private:
    struct Row {
        std::uint32_t vec;
        std::uint32_t combo;
    };
    static std::uint32_t lead(const Row& r) { return std::bit_floor(r.vec); }

    FoldingBasis basis_;
    std::vector<Row> rows_;
    std::uint32_t bmask_ = 0;
};

inline bool folded_read(const std::vector<std::uint8_t>& stored, const FoldingBasis& basis, std::uint32_t f) {
    return Folding(basis).read(stored, f);
}

/// The full virtual table B of a stored word under a folding.
inline std::vector<std::uint8_t> fold_table(const std::vector<std::uint8_t>& stored, const Folding& folding) {
    const std::uint32_t count = function_count(folding.basis().n);
    if (stored.size() != count) throw Error("stored table has the wrong length");
    std::vector<std::uint8_t> out(count);
    for (std::uint32_t f = 0; f < count; ++f) out[f] = folding.read(stored, f);
    return out;
}

inline Rational distance(const std::vector<std::uint8_t>& a, const std::vector<std::uint8_t>& b) {
    if (a.size() != b.size()) throw Error("distance needs equal lengths");
    if (a.empty()) return 0;
    std::size_t diff = 0;
    for (std::size_t i = 0; i < a.size(); ++i) diff += (a[i] != 0) != (b[i] != 0);
    return Rational(BigInt(diff), BigInt(a.size()));
}

/// Closest codeword by full scan; ties go to the lexicographically smallest word.
inline std::pair<std::vector<std::uint8_t>, Rational> nearest_in_code(const std::vector<std::uint8_t>& a,
                                                                       const std::vector<std::vector<std::uint8_t>>& code) {
    if (code.empty()) throw Error("nearest_in_code needs a nonempty code");
    std::optional<std::size_t> best;
    Rational best_d = 0;
    for (std::size_t i = 0; i < code.size(); ++i) {
        Rational d = distance(a, code[i]);
        if (!best || d < best_d || (d == best_d && code[i] < code[*best])) {
            best = i;
            best_d = d;
        }
    }
    return {code[*best], best_d};
}

/// Piecewise lower bound on the linearity-test failure fraction at distance x from the nearest linear function.
inline Rational delta_lower_bound(const Rational& x) {
    if (x < 0 || x > 1) throw Error("delta_lower_bound needs 0 <= x <= 1");
    if (x <= make_rational(5, 16)) return 3 * x - 6 * x * x;
    if (x <= make_rational(45, 128)) return make_rational(45, 128);
    return x;
}

/// Exact fraction of pairs (f, g) with B_f + B_g != B_{f+g}, from the Walsh-Hadamard spectrum:
/// failure = (1 - sum_S W_S^3 / N^3) / 2.
inline Rational linearity_failure(const std::vector<std::uint8_t>& b) {
    const std::size_t N = b.size();
    if (N == 0 || !std::has_single_bit(N)) throw Error("linearity test needs a power-of-two table");
    std::vector<std::int64_t> w(N);
    for (std::size_t i = 0; i < N; ++i) w[i] = b[i] ? -1 : 1;
    for (std::size_t len = 1; len < N; len <<= 1)
        for (std::size_t i = 0; i < N; i += 2 * len)
            for (std::size_t j = i; j < i + len; ++j) {
                auto x = w[j], y = w[j + len];
                w[j] = x + y;
                w[j + len] = x - y;
            }
    BigInt cube = 0;
    for (auto v : w) cube += BigInt(v) * v * v;
    BigInt n3 = BigInt(N) * N * N;
    return (Rational(1) - Rational(cube, n3)) / 2;
}

/// The character chi_S(f) = parity of f on the points of S (S a subset of the domain, as a mask).
inline std::vector<std::uint8_t> character(std::uint32_t n, std::uint32_t S) {
    std::vector<std::uint8_t> out(function_count(n));
    for (std::uint32_t f = 0; f < out.size(); ++f) out[f] = std::popcount(f & S) & 1U;
    return out;
}

/// Linear and affine words that are themselves folded over true: chi_S and chi_S + 1 with |S| odd.
inline std::vector<std::vector<std::uint8_t>> folded_affine_code(std::uint32_t n) {
    std::vector<std::vector<std::uint8_t>> out;
    for (std::uint32_t S = 0; S < function_count(n); ++S) {
        if (!(std::popcount(S) & 1U)) continue;
        auto c = character(n, S);
        out.push_back(c);
        for (auto& v : c) v ^= 1U;
        out.push_back(std::move(c));
    }
    return out;
}

/// Number of long codes of F_n within distance `radius` of a.
inline std::size_t long_codes_within(const std::vector<std::uint8_t>& a, std::uint32_t n, const Rational& radius) {
    std::size_t c = 0;
    for (const auto& w : all_long_codes(n))
        if (distance(a, w.table) <= radius) ++c;
    return c;
}

/// A clause rewritten as a polarity-free shadow over fresh y variables plus one (in)equality per slot.
struct Equality {
    std::uint32_t y = 0;
    std::uint32_t x = 0;
    bool differ = false;  // y != x instead of y == x

    friend bool operator==(const Equality&, const Equality&) = default;
};

struct ObliviousSplit {
    Clause original;
    Clause shadow;
    std::vector<Equality> equalities;

    bool satisfied_by(const Bits& a) const {
        if (!clause_satisfied(Kind::Sat, shadow, a)) return false;
        return std::all_of(equalities.begin(), equalities.end(),
                           [&](const Equality& e) { return ((a[e.y - 1] != 0) != (a[e.x - 1] != 0)) == e.differ; });
    }
};

/// y_{base+1..base+3} are the shadow variables; a negated source literal only turns its equality into an inequality.
inline ObliviousSplit oblivious_split(const Clause& c, std::uint32_t y_base) {
    if (c.slots.size() != 3) throw Error("oblivious_split needs a 3-literal clause");
    ObliviousSplit s;
    s.original = c;
    s.shadow.weight = c.weight;
    for (std::uint32_t i = 0; i < 3; ++i) {
        s.shadow.slots.push_back(pos(y_base + 1 + i));
        s.equalities.push_back({y_base + 1 + i, c.slots[i].var, c.slots[i].negated});
    }
    return s;
}

/// A constraint as seen by the inner verifier: the homogeneous part as a function on the domain bits, and b.
struct DomainConstraint {
    std::uint32_t n = 0;      // domain bits
    std::uint32_t h = 0;      // truth table of the homogeneous part
    bool b = false;           // satisfied iff h(x) == b
};

inline bool constraint_holds(const DomainConstraint& c, std::uint32_t x) { return eval_function(c.h, x) == c.b; }

/// Solid: A and D are each within 1/2 - delta of long codes of some satisfying a and its restriction to bit `bit`.
inline bool is_solid(const std::vector<std::uint8_t>& A, const std::vector<std::uint8_t>& D, const DomainConstraint& c,
                     std::uint32_t bit, const Rational& delta) {
    if (A.size() != function_count(c.n) || D.size() != function_count(1)) throw Error("is_solid table sizes do not match");
    if (bit >= c.n) throw Error("is_solid bit outside the constraint");
    const Rational radius = make_rational(1, 2) - delta;
    for (std::uint32_t x = 0; x < point_count(c.n); ++x) {
        if (!constraint_holds(c, x)) continue;
        if (distance(A, encode_long_code(c.n, x).table) > radius) continue;
        if (distance(D, encode_long_code(1, (x >> bit) & 1U).table) <= radius) return true;
    }
    return false;
}

}  // namespace ufg
