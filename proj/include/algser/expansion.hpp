#pragma once

/**
 * @file expansion.hpp
 * @brief Coefficients c_{k+2}, c_{k+3}, ... of a simple root from a seed, by
 *        three independent routes: Flajolet-Soria on the Henselian equation,
 *        the closed-form sum over P's coefficients, and Newton lifting.
 */

#include <cstddef>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "algser/combinatorics.hpp"
#include "algser/errors.hpp"
#include "algser/flajolet_soria.hpp"
#include "algser/henselization.hpp"
#include "algser/newton_oracle.hpp"

namespace algser {

enum class ExpandMethod { fs, closed, newton, all };

inline ExpandMethod parse_expand_method(const std::string& s) {
    if (s == "fs") return ExpandMethod::fs;
    if (s == "closed") return ExpandMethod::closed;
    if (s == "newton") return ExpandMethod::newton;
    if (s == "all") return ExpandMethod::all;
    throw input_error("unknown method '" + s + "' (expected fs, closed, newton or all)");
}

struct ExpansionReport {
    std::size_t k = 0;    // seed used is c_1..c_{k+1}
    std::size_t k0 = 0;
    std::size_t i_k = 0;
    Rat omega0;
    std::vector<Rat> seed;
    bool seed_extended = false;  // c_{k0+2} appended by the closed formula for it
    bool polynomial_root = false;
    // c_{k+2} .. c_{k+1+count} from each requested route.
    std::optional<std::vector<Rat>> fs;
    std::optional<std::vector<Rat>> closed;
    std::optional<std::vector<Rat>> newton;

    /// All computed routes give the same coefficients.
    [[nodiscard]] bool agree() const {
        const std::vector<Rat>* ref = nullptr;
        for (const auto* v : {&fs, &closed, &newton}) {
            if (!v->has_value()) continue;
            if (ref && **v != *ref) return false;
            ref = &**v;
        }
        return true;
    }

    /// The first available route's coefficients.
    [[nodiscard]] const std::vector<Rat>& coefficients() const {
        if (fs) return *fs;
        if (closed) return *closed;
        return newton.value();
    }
};

/**
 * The seed must determine the root: c_1..c_s with s >= k0 + 1.  When
 * s = k0 + 1 the seed is first extended by c_{k0+2}.  Then k = s - 1.
 */
inline ExpansionReport expand_root(const BivarPoly& p, std::span<const Rat> seed, std::size_t count,
                                   ExpandMethod method,
                                   std::uint64_t node_budget = NodeBudget::default_limit) {
    if (seed.empty()) throw input_error("expand: empty seed");
    if (count < 1) throw input_error("expand: count >= 1 required");
    ExpansionReport out;
    out.seed.assign(seed.begin(), seed.end());
    const auto as_series = [](const std::vector<Rat>& v) { return TruncatedSeries::from_tail(v); };

    const auto value = eval_poly_at_polynomial(p, out.seed);
    if (std::all_of(value.begin(), value.end(), [](const Rat& v) { return v.is_zero(); })) {
        out.polynomial_root = true;
        out.k = out.seed.size() - 1;
        const std::vector<Rat> zeros(count);
        if (method == ExpandMethod::fs || method == ExpandMethod::all) out.fs = zeros;
        if (method == ExpandMethod::closed || method == ExpandMethod::all) out.closed = zeros;
        if (method == ExpandMethod::newton || method == ExpandMethod::all) out.newton = zeros;
        return out;
    }

    const OrderTrace trace = order_sequence(p, as_series(out.seed), out.seed.size());
    if (trace.monotonicity_failure)
        throw not_simple_root_error("seed is not consistent with a root of P (i_k fails to increase at k = " +
                                    std::to_string(*trace.monotonicity_failure) + ")");
    if (!trace.stable_from)
        throw precision_error("expand: seed of length " + std::to_string(out.seed.size()) +
                              " does not yet separate the root from the other branches");
    out.k0 = *trace.stable_from;
    if (out.seed.size() == out.k0 + 1) {
        const auto c = as_series(out.seed);
        const Rat w = omega0_closed(p, c, out.k0, trace.i(out.k0));
        out.seed.push_back(next_coefficient_closed(p, c, out.k0, trace.i(out.k0), w));
        out.seed_extended = true;
    }
    out.k = out.seed.size() - 1;

    if (method == ExpandMethod::fs || method == ExpandMethod::closed || method == ExpandMethod::all) {
        const HenselForm h = henselize(p, as_series(out.seed), out.k);
        if (h.polynomial_root) {
            out.polynomial_root = true;
            const std::vector<Rat> zeros(count);
            if (method != ExpandMethod::closed) out.fs = zeros;
            if (method != ExpandMethod::fs) out.closed = zeros;
        } else {
            out.i_k = h.i_k;
            out.omega0 = h.omega0;
            if (method != ExpandMethod::closed) {
                FsOptions opts;
                opts.node_budget = node_budget;
                const auto t = fs_expand(h.eq, count, opts).tail();
                out.fs = t;
            }
            if (method != ExpandMethod::fs) {
                std::vector<Rat> v;
                for (std::size_t q = 1; q <= count; ++q)
                    v.push_back(closed_form_coefficient(p, out.seed, out.k, h.i_k, h.omega0, q, node_budget));
                out.closed = std::move(v);
            }
        }
    }
    if (method == ExpandMethod::newton || method == ExpandMethod::all) {
        const auto lift = newton_lift(p, seed, out.k + 1 + count);
        const auto t = lift.series.tail();
        out.newton = std::vector<Rat>(t.begin() + static_cast<std::ptrdiff_t>(out.k + 1), t.end());
    }
    return out;
}

} // namespace algser
