#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

namespace ufg {

/// Comparator (i, j) with i < j: after it, position i holds the smaller key.
using Comparator = std::pair<std::uint32_t, std::uint32_t>;

/// Batcher odd-even mergesort for m keys. Built for the next power of two; comparators touching
/// a position >= m are dropped, which is sound because padding keys behave as +infinity.
inline std::vector<Comparator> batcher_network(std::uint32_t m) {
    std::vector<Comparator> out;
    if (m < 2) return out;
    std::uint32_t n = 1;
    while (n < m) n <<= 1;
    for (std::uint32_t p = 1; p < n; p <<= 1)
        for (std::uint32_t k = p; k >= 1; k >>= 1) {
            for (std::uint32_t j = k % p; j + k < n; j += 2 * k)
                for (std::uint32_t i = 0; i < k && i + j + k < n; ++i) {
                    std::uint32_t a = i + j, b = i + j + k;
                    if (a / (2 * p) == b / (2 * p) && b < m) out.emplace_back(a, b);
                }
            if (k == 1) break;
        }
    return out;
}

/// Seam for swapping in another comparator-network generator.
using NetworkGenerator = std::function<std::vector<Comparator>(std::uint32_t)>;

template <typename T>
void apply_network(const std::vector<Comparator>& net, std::vector<T>& keys) {
    for (auto [i, j] : net)
        if (keys[j] < keys[i]) std::swap(keys[i], keys[j]);
}

}  // namespace ufg
