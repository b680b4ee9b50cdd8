#pragma once

#include <algorithm>
#include <compare>
#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "ufg/error.hpp"

namespace ufg {

/// One bit of one vertex's value: bit `bit` of the word assigned to `vertex`.
struct Coord {
    std::uint32_t vertex = 0;
    std::uint32_t bit = 0;

    friend auto operator<=>(const Coord&, const Coord&) = default;
};

/// Product of two coordinates with lo <= hi. lo == hi is the linear monomial x (x*x = x on bits).
struct Monomial {
    Coord lo;
    Coord hi;

    friend auto operator<=>(const Monomial&, const Monomial&) = default;

    bool linear() const { return lo == hi; }

    static Monomial of(Coord a) { return {a, a}; }
    static Monomial of(Coord a, Coord b) { return a <= b ? Monomial{a, b} : Monomial{b, a}; }
};

/// Polynomial of degree <= 2 over GF(2), kept in canonical form: sorted, duplicate-free monomials.
/// A constraint associated with a list of these is satisfied iff every polynomial evaluates to 0.
class GF2Poly {
public:
    GF2Poly() = default;
    explicit GF2Poly(bool constant) : constant_(constant) {}

    static GF2Poly var(Coord c) {
        GF2Poly p;
        p.monomials_.push_back(Monomial::of(c));
        return p;
    }

    static GF2Poly product(Coord a, Coord b) {
        GF2Poly p;
        p.monomials_.push_back(Monomial::of(a, b));
        return p;
    }

    /// Builds from arbitrary monomials, cancelling pairs.
    static GF2Poly from(std::vector<Monomial> monos, bool constant = false) {
        GF2Poly p;
        p.constant_ = constant;
        p.monomials_ = std::move(monos);
        p.canonicalize();
        return p;
    }

    const std::vector<Monomial>& monomials() const { return monomials_; }
    bool constant() const { return constant_; }
    void set_constant(bool c) { constant_ = c; }

    bool is_zero() const { return monomials_.empty() && !constant_; }

    std::size_t degree() const {
        if (monomials_.empty()) return 0;
        return std::any_of(monomials_.begin(), monomials_.end(), [](const Monomial& m) { return !m.linear(); }) ? 2
                                                                                                                : 1;
    }

    /// Same non-constant part (the "closeness" relation on a single polynomial).
    bool same_homogeneous_part(const GF2Poly& o) const { return monomials_ == o.monomials_; }

    GF2Poly& operator+=(const GF2Poly& o) {
        std::vector<Monomial> merged;
        merged.reserve(monomials_.size() + o.monomials_.size());
        std::set_symmetric_difference(monomials_.begin(), monomials_.end(), o.monomials_.begin(),
                                      o.monomials_.end(), std::back_inserter(merged));
        monomials_ = std::move(merged);
        constant_ ^= o.constant_;
        return *this;
    }

    friend GF2Poly operator+(GF2Poly a, const GF2Poly& b) { return a += b; }

    /// Product of two polynomials of degree <= 1.
    friend GF2Poly operator*(const GF2Poly& a, const GF2Poly& b) {
        if (a.degree() > 1 || b.degree() > 1) throw Error("GF2Poly product would exceed degree 2");
        std::vector<Monomial> out;
        for (const auto& x : a.monomials_)
            for (const auto& y : b.monomials_) out.push_back(Monomial::of(x.lo, y.lo));
        if (b.constant_) out.insert(out.end(), a.monomials_.begin(), a.monomials_.end());
        if (a.constant_) out.insert(out.end(), b.monomials_.begin(), b.monomials_.end());
        return from(std::move(out), a.constant_ && b.constant_);
    }

    template <typename BitFn>
    bool evaluate(BitFn&& bit) const {
        bool v = constant_;
        for (const auto& m : monomials_) {
            if (m.linear())
                v ^= static_cast<bool>(bit(m.lo));
            else
                v ^= static_cast<bool>(bit(m.lo)) && static_cast<bool>(bit(m.hi));
        }
        return v;
    }

    /// Rewrites every coordinate through `f` and re-canonicalizes.
    template <typename MapFn>
    GF2Poly mapped(MapFn&& f) const {
        std::vector<Monomial> out;
        out.reserve(monomials_.size());
        for (const auto& m : monomials_) out.push_back(Monomial::of(f(m.lo), f(m.hi)));
        return from(std::move(out), constant_);
    }

    template <typename Fn>
    void for_each_coord(Fn&& fn) const {
        for (const auto& m : monomials_) {
            fn(m.lo);
            if (!m.linear()) fn(m.hi);
        }
    }

    std::vector<Coord> coords() const {
        std::vector<Coord> out;
        for_each_coord([&](Coord c) { out.push_back(c); });
        std::sort(out.begin(), out.end());
        out.erase(std::unique(out.begin(), out.end()), out.end());
        return out;
    }

    friend bool operator==(const GF2Poly&, const GF2Poly&) = default;

private:
    void canonicalize() {
        std::sort(monomials_.begin(), monomials_.end());
        std::vector<Monomial> out;
        out.reserve(monomials_.size());
        for (std::size_t i = 0; i < monomials_.size();) {
            std::size_t j = i;
            while (j < monomials_.size() && monomials_[j] == monomials_[i]) ++j;
            if ((j - i) % 2 == 1) out.push_back(monomials_[i]);
            i = j;
        }
        monomials_ = std::move(out);
    }

    std::vector<Monomial> monomials_;
    bool constant_ = false;
};

inline std::string to_string(const GF2Poly& p) {
    std::string s;
    for (const auto& m : p.monomials()) {
        if (!s.empty()) s += " + ";
        s += std::to_string(m.lo.vertex) + "." + std::to_string(m.lo.bit);
        if (!m.linear()) s += "*" + std::to_string(m.hi.vertex) + "." + std::to_string(m.hi.bit);
    }
    if (p.constant() || s.empty()) s += s.empty() ? (p.constant() ? "1" : "0") : " + 1";
    return s;
}

}  // namespace ufg
