#pragma once

/**
 * @file combinatorics.hpp
 * @brief Constrained integer vectors and multinomials.
 *
 * Notation follows the usual multi-index conventions: for L = (l_1..l_n),
 * |L| = sum l_t, ||L|| = sum t * l_t (1-based weights), L! = prod l_t!.
 */

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "algser/errors.hpp"
#include "algser/rat.hpp"

namespace algser {

/// Counts search nodes and throws budget_error once the limit is passed.
class NodeBudget {
public:
    static constexpr std::uint64_t default_limit = 10'000'000;

    explicit NodeBudget(std::uint64_t limit = default_limit) : limit_(limit) {}

    void tick(std::uint64_t n = 1) {
        used_ += n;
        if (used_ > limit_)
            throw budget_error("enumeration exceeded its budget of " + std::to_string(limit_) +
                               " nodes");
    }

    [[nodiscard]] std::uint64_t used() const { return used_; }
    [[nodiscard]] std::uint64_t limit() const { return limit_; }

private:
    std::uint64_t limit_;
    std::uint64_t used_ = 0;
};

inline std::size_t abs_norm(std::span<const unsigned> v) {
    std::size_t s = 0;
    for (auto x : v) s += x;
    return s;
}

inline std::size_t weighted_norm(std::span<const unsigned> v) {
    std::size_t s = 0;
    for (std::size_t t = 0; t < v.size(); ++t) s += (t + 1) * v[t];
    return s;
}

/// top! / prod parts!  (parts need not sum to top; used for j!/(m! L!) with m passed as a part).
inline BigInt multinomial(unsigned top, std::span<const unsigned> parts) {
    BigInt r = factorial(top);
    for (auto p : parts) r /= factorial(p);
    return r;
}

namespace detail {

template <typename Fn>
void weighted_compositions_rec(std::vector<unsigned>& cur, std::size_t pos, std::size_t size_left,
                               std::size_t weight_left, Fn& fn) {
    if (pos == 0) {
        if (size_left == 0 && weight_left == 0) fn(static_cast<const std::vector<unsigned>&>(cur));
        return;
    }
    // Fill from the heaviest slot down; slot `pos` (1-based) weighs pos.
    const std::size_t w = pos;
    // The remaining slots 1..pos-1 can absorb at most (pos-1) * size weight.
    for (std::size_t n = 0; n <= size_left && n * w <= weight_left; ++n) {
        const std::size_t sl = size_left - n;
        const std::size_t wl = weight_left - n * w;
        if (wl < sl) continue;                 // each remaining unit weighs >= 1
        if (wl > sl * (pos - 1)) continue;     // ... and <= pos-1
        cur[pos - 1] = static_cast<unsigned>(n);
        weighted_compositions_rec(cur, pos - 1, sl, wl, fn);
    }
    cur[pos - 1] = 0;
}

} // namespace detail

/**
 * Calls fn(L) for every L in N^len with |L| = size and ||L|| = weight.
 * The same vector object is reused between calls.
 */
template <typename Fn>
void for_each_weighted_composition(std::size_t len, std::size_t size, std::size_t weight, Fn&& fn) {
    if (size == 0) {
        if (weight == 0) {
            const std::vector<unsigned> zero(len, 0);
            fn(zero);
        }
        return;
    }
    if (len == 0 || weight < size || weight > size * len) return;
    std::vector<unsigned> cur(len, 0);
    detail::weighted_compositions_rec(cur, len, size, weight, fn);
}

} // namespace algser
