#pragma once

#include <bit>
#include <compare>
#include <cstdint>
#include <vector>

#include "ufg/random.hpp"

namespace ufg {

/// Fixed-length bit vector; used as a mask for linear and quadratic functions on many bits.
class BitVec {
public:
    BitVec() = default;
    explicit BitVec(std::size_t n) : n_(n), w_((n + 63) / 64, 0) {}

    static BitVec random(std::size_t n, Rng& rng) {
        BitVec b(n);
        for (auto& x : b.w_) x = rng.next();
        b.trim();
        return b;
    }

    static BitVec from_u64(std::size_t n, std::uint64_t v) {
        BitVec b(n);
        if (!b.w_.empty()) b.w_[0] = v;
        b.trim();
        return b;
    }

    std::size_t size() const { return n_; }
    bool get(std::size_t i) const { return (w_[i >> 6] >> (i & 63)) & 1U; }
    void set(std::size_t i, bool v = true) {
        if (v)
            w_[i >> 6] |= std::uint64_t{1} << (i & 63);
        else
            w_[i >> 6] &= ~(std::uint64_t{1} << (i & 63));
    }
    void flip(std::size_t i) { w_[i >> 6] ^= std::uint64_t{1} << (i & 63); }

    BitVec& operator^=(const BitVec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] ^= o.w_[i];
        return *this;
    }
    friend BitVec operator^(BitVec a, const BitVec& b) { return a ^= b; }

    BitVec& operator&=(const BitVec& o) {
        for (std::size_t i = 0; i < w_.size(); ++i) w_[i] &= o.w_[i];
        return *this;
    }
    friend BitVec operator&(BitVec a, const BitVec& b) { return a &= b; }

    BitVec operator~() const {
        BitVec b = *this;
        for (auto& x : b.w_) x = ~x;
        b.trim();
        return b;
    }

    std::size_t popcount() const {
        std::size_t c = 0;
        for (auto x : w_) c += std::popcount(x);
        return c;
    }

    bool any() const {
        for (auto x : w_)
            if (x) return true;
        return false;
    }

    /// Parity of the bits selected by `mask`.
    bool dot(const BitVec& mask) const {
        std::uint64_t acc = 0;
        for (std::size_t i = 0; i < w_.size(); ++i) acc ^= w_[i] & mask.w_[i];
        return std::popcount(acc) & 1U;
    }

    const std::vector<std::uint64_t>& words() const { return w_; }

    friend bool operator==(const BitVec&, const BitVec&) = default;
    friend auto operator<=>(const BitVec& a, const BitVec& b) {
        if (auto c = a.n_ <=> b.n_; c != 0) return c;
        return a.w_ <=> b.w_;
    }

private:
    void trim() {
        if (n_ % 64 && !w_.empty()) w_.back() &= (std::uint64_t{1} << (n_ % 64)) - 1;
    }

    std::size_t n_ = 0;
    std::vector<std::uint64_t> w_;
};

/// Index of the unordered pair {i, j}, i < j, among all pairs of `l` positions (row-major).
inline std::size_t pair_index(std::size_t i, std::size_t j, std::size_t l) {
    return i * l - i * (i + 1) / 2 + (j - i - 1);
}

inline std::size_t pair_count(std::size_t l) { return l * (l - 1) / 2; }

}  // namespace ufg
