#pragma once

/**
 * @file reduced_hensel_eq.hpp
 * @brief y = Q(x, y) with Q(0,0) = dQ/dy(0,0) = 0.
 *
 * Coefficients b_{l,m} of x^l y^m are stored in a BivarPoly keyed by
 * Exponent{l, m}.  Q(x, 0) = 0 is accepted (the solution is then y = 0) and
 * reported through has_pure_x_term().
 */

#include "algser/bivar_poly.hpp"
#include "algser/errors.hpp"

namespace algser {

class ReducedHenselEq {
public:
    ReducedHenselEq() = default;

    explicit ReducedHenselEq(BivarPoly q) : q_(std::move(q)) {
        if (!q_.coeff(0, 0).is_zero()) throw input_error("reduced Henselian equation: Q(0,0) != 0");
        if (!q_.coeff(0, 1).is_zero())
            throw input_error("reduced Henselian equation: dQ/dy(0,0) != 0");
    }

    [[nodiscard]] const BivarPoly& q() const { return q_; }
    [[nodiscard]] Rat b(std::size_t l, std::size_t m) const { return q_.coeff(l, m); }

    /// Q(x, 0) != 0; without it the unique solution is y = 0.
    [[nodiscard]] bool has_pure_x_term() const {
        for (const auto& [e, c] : q_.terms())
            if (e.j == 0) return true;
        return false;
    }

    /// All b_{0,m} vanish, so every FS composition of weight n has at most n parts.
    [[nodiscard]] bool no_x_free_terms() const {
        for (const auto& [e, c] : q_.terms())
            if (e.i == 0) return false;
        return true;
    }

    friend bool operator==(const ReducedHenselEq&, const ReducedHenselEq&) = default;

private:
    BivarPoly q_;
};

} // namespace algser
