#pragma once

/**
 * @file henselization.hpp
 * @brief Order sequence i_k, branch separation index k0, omega0 and the
 *        reduced Henselian equation satisfied by the tail of a simple root.
 *
 * With z_k = c_1 x + ... + c_k x^k and P_k(x,y) = P(x, z_k + x^{k+1} y),
 * i_k = ord_x P_k.  For a simple root the sequence is strictly increasing and
 * from k0 on it increases one by one.
 */

#include <algorithm>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "algser/bivar_poly.hpp"
#include "algser/combinatorics.hpp"
#include "algser/errors.hpp"
#include "algser/reduced_hensel_eq.hpp"
#include "algser/series.hpp"

namespace algser {

struct OrderEntry {
    std::size_t k;
    std::size_t i_k;
    friend bool operator==(const OrderEntry&, const OrderEntry&) = default;
};

struct OrderTrace {
    std::vector<OrderEntry> entries;                  // k = 0..k_max
    std::optional<std::size_t> stable_from;           // k0
    std::optional<std::size_t> monotonicity_failure;  // least k >= 1 with i_k <= i_{k-1}

    [[nodiscard]] std::size_t i(std::size_t k) const { return entries.at(k).i_k; }
};

namespace detail {

inline void require_hensel_input(const BivarPoly& p, const TruncatedSeries& c) {
    if (p.is_zero()) throw input_error("zero polynomial");
    if (p.dy() == 0) throw input_error("polynomial has no y term: dy = 0");
    if (c.precision() < 1 || c.coeff(1).is_zero()) throw input_error("seed needs c_1 != 0");
    if (!c.coeff(0).is_zero()) throw input_error("seed needs c_0 = 0");
}

} // namespace detail

/**
 * i_k for k = 0..k_max.  stable_from is the least k < k_max with
 * i_{k+1} = i_k + 1 occurring before any monotonicity failure.
 */
inline OrderTrace order_sequence(const BivarPoly& p, const TruncatedSeries& c, std::size_t k_max) {
    detail::require_hensel_input(p, c);
    if (c.precision() < k_max)
        throw precision_error("order_sequence: seed has " + std::to_string(c.precision()) +
                              " terms, need " + std::to_string(k_max));
    const auto tail = c.tail();
    OrderTrace out;
    for (std::size_t k = 0; k <= k_max; ++k) {
        const auto ik = shift_substitute(p, tail, k).i_k;
        out.entries.push_back({k, ik});
        if (k == 0) continue;
        const std::size_t prev = out.entries[k - 1].i_k;
        if (ik <= prev && !out.monotonicity_failure) out.monotonicity_failure = k;
        if (ik == prev + 1 && !out.stable_from && !out.monotonicity_failure) out.stable_from = k - 1;
    }
    return out;
}

/// 2 dx dy + 1, the largest possible k0.
inline std::size_t k0_bound(const BivarPoly& p) { return 2 * p.dx() * p.dy() + 1; }

inline std::size_t find_k0(const BivarPoly& p, const TruncatedSeries& c) {
    detail::require_hensel_input(p, c);
    const std::size_t bound = k0_bound(p);
    const std::size_t k_max = std::min(c.precision(), bound + 2);
    const OrderTrace trace = order_sequence(p, c, k_max);
    if (trace.monotonicity_failure)
        throw not_simple_root_error("seed is not consistent with a root of P (i_k fails to increase at k = " +
                                    std::to_string(*trace.monotonicity_failure) + ")");
    if (trace.stable_from) {
        // Past k0 the sequence must keep increasing by exactly one.
        for (std::size_t k = *trace.stable_from + 1; k < trace.entries.size(); ++k)
            if (trace.i(k) != trace.i(k - 1) + 1)
                throw not_simple_root_error("seed is not consistent with a simple root (i_k jumps at k = " +
                                            std::to_string(k) + ")");
        return *trace.stable_from;
    }
    if (c.precision() < bound + 2)
        throw precision_error("find_k0: branches not separated within " + std::to_string(c.precision()) +
                              " seed terms; need " + std::to_string(bound + 2) + " to decide");
    throw not_simple_root_error("no k0 <= " + std::to_string(bound) + ": the root is not simple");
}

/// Coefficient of x^{i_{k0}+1} y in P_{k0+1}.
inline Rat omega0_from_shift(const BivarPoly& p, const TruncatedSeries& c, std::size_t k0) {
    const auto tail = c.tail();
    const auto r = shift_substitute(p, tail, k0 + 1);
    const auto i_k0 = shift_substitute(p, tail, k0).i_k;
    return r.poly.coeff(i_k0 + 1, 1);
}

/**
 * omega0 = sum_{i, j>=1} sum_{|L|=j-1, ||L||=i_{k0}-k0-1-i} (j!/L!) a_{i,j} C^L,
 * with C = (c_1, ..., c_{k0+1}).
 */
inline Rat omega0_closed(const BivarPoly& p, const TruncatedSeries& c, std::size_t k0, std::size_t i_k0) {
    if (c.precision() < k0 + 1) throw precision_error("omega0_closed: need c_1..c_{k0+1}");
    const auto tail = c.tail();
    Rat omega;
    for (const auto& [e, a] : p.terms()) {
        if (e.j == 0 || e.i + k0 + 1 > i_k0) continue;
        const std::size_t w = i_k0 - k0 - 1 - e.i;
        for_each_weighted_composition(k0 + 1, e.j - 1, w, [&](const std::vector<unsigned>& l) {
            Rat term = a * Rat(multinomial(static_cast<unsigned>(e.j), l));
            for (std::size_t t = 0; t < l.size(); ++t)
                if (l[t]) term *= pow(tail[t], l[t]);
            omega += term;
        });
    }
    if (omega.is_zero()) throw not_simple_root_error("omega0 = 0: the root is not simple");
    return omega;
}

/**
 * c_{k0+2} = -(1/omega0) sum_{i,j} sum_{|L|=j, ||L||=i_{k0}+1-i} (j!/L!) a_{i,j} C^L,
 * with C = (c_1, ..., c_{k0+1}).
 */
inline Rat next_coefficient_closed(const BivarPoly& p, const TruncatedSeries& c, std::size_t k0,
                                   std::size_t i_k0, const Rat& omega0) {
    if (c.precision() < k0 + 1) throw precision_error("next_coefficient_closed: need c_1..c_{k0+1}");
    if (omega0.is_zero()) throw not_simple_root_error("omega0 = 0");
    const auto tail = c.tail();
    Rat s;
    for (const auto& [e, a] : p.terms()) {
        if (e.i > i_k0 + 1) continue;
        const std::size_t w = i_k0 + 1 - e.i;
        for_each_weighted_composition(k0 + 1, e.j, w, [&](const std::vector<unsigned>& l) {
            Rat term = a * Rat(multinomial(static_cast<unsigned>(e.j), l));
            for (std::size_t t = 0; t < l.size(); ++t)
                if (l[t]) term *= pow(tail[t], l[t]);
            s += term;
        });
    }
    return -s / omega0;
}

struct HenselForm {
    std::size_t k = 0;
    bool polynomial_root = false;
    std::vector<Rat> z;  // c_1..c_{k+1}; the exact root when polynomial_root
    // Set only when !polynomial_root.
    std::size_t k0 = 0;
    std::size_t i_k = 0;
    Rat omega0;
    ReducedHenselEq eq;

    /// Largest l with a possibly nonzero b_{l,m}: (k+1) dy + dx - i_k.
    std::size_t l_max = 0;
};

/// m_l = min(floor((l + i_k)/(k+1)), dy).
inline std::size_t hensel_m_bound(std::size_t l, std::size_t i_k, std::size_t k, std::size_t dy) {
    return std::min((l + i_k) / (k + 1), dy);
}

/**
 * Either z_{k+1} is an exact root of P, or the tail t = (y0 - z_{k+1})/x^{k+1}
 * solves y = Q_k(x, y) where P(x, z_{k+1} + x^{k+1} y) = -omega0 x^{i_k} (Q_k - y).
 */
inline HenselForm henselize(const BivarPoly& p, const TruncatedSeries& c, std::size_t k) {
    detail::require_hensel_input(p, c);
    if (c.precision() < k + 1)
        throw precision_error("henselize: need c_1..c_" + std::to_string(k + 1) + ", have " +
                              std::to_string(c.precision()));
    HenselForm out;
    out.k = k;
    const auto tail = c.tail();
    out.z.assign(tail.begin(), tail.begin() + static_cast<std::ptrdiff_t>(k + 1));

    const auto value = eval_poly_at_polynomial(p, out.z);
    if (std::all_of(value.begin(), value.end(), [](const Rat& v) { return v.is_zero(); })) {
        out.polynomial_root = true;
        return out;
    }

    const OrderTrace trace = order_sequence(p, c, k + 1);
    if (trace.monotonicity_failure)
        throw not_simple_root_error("seed is not consistent with a root of P (i_k fails to increase at k = " +
                                    std::to_string(*trace.monotonicity_failure) + ")");
    if (!trace.stable_from || *trace.stable_from >= k)
        throw input_error("henselize: k = " + std::to_string(k) +
                          " must exceed k0 (branches are not separated by c_1..c_" + std::to_string(k + 1) + ")");
    out.k0 = *trace.stable_from;
    out.i_k = trace.i(k);
    out.omega0 = omega0_from_shift(p, c, out.k0);
    if (out.omega0.is_zero()) throw not_simple_root_error("omega0 = 0: the root is not simple");

    // H = P_k(x, y + c_{k+1}); its lowest x slice must be exactly omega0 * y.
    const BivarPoly h = substitute_affine(p, out.z, k + 1);
    for (const auto& [e, v] : h.terms()) {
        if (e.i < out.i_k || (e.i == out.i_k && !(e.j == 1 && v == out.omega0)))
            throw not_simple_root_error("lowest slice of P_k(x, y + c_{k+1}) is not omega0*y");
    }
    out.l_max = (k + 1) * p.dy() + p.dx() - out.i_k;
    BivarPoly q;
    const Rat scale = -Rat(1) / out.omega0;
    for (const auto& [e, v] : h.terms()) {
        if (e.i == out.i_k) continue;
        q.add_to({e.i - out.i_k, e.j}, v * scale);
    }
    out.eq = ReducedHenselEq(std::move(q));
    return out;
}

} // namespace algser
