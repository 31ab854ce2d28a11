#pragma once

/**
 * @file series.hpp
 * @brief Power series known modulo x^{T+1}.
 *
 * A TruncatedSeries stores the dense coefficients of x^0..x^T.  The valuation
 * is computed from the data; an all-zero truncation reports no valuation,
 * meaning "ord >= T+1", never "equal to zero".
 */

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "algser/errors.hpp"
#include "algser/rat.hpp"

namespace algser {

class TruncatedSeries {
public:
    /// The zero truncation at precision T.
    explicit TruncatedSeries(std::size_t precision = 0) : coeffs_(precision + 1) {}

    /// Dense constructor: dense[n] is the coefficient of x^n, precision = size - 1.
    static TruncatedSeries from_dense(std::vector<Rat> dense) {
        if (dense.empty()) throw input_error("series needs at least the x^0 coefficient");
        TruncatedSeries s;
        s.coeffs_ = std::move(dense);
        return s;
    }

    /// Series c_1 x + c_2 x^2 + ... + c_T x^T; the precision is T = c.size().
    static TruncatedSeries from_tail(std::span<const Rat> c) {
        std::vector<Rat> dense;
        dense.reserve(c.size() + 1);
        dense.emplace_back(0);
        dense.insert(dense.end(), c.begin(), c.end());
        return from_dense(std::move(dense));
    }

    [[nodiscard]] std::size_t precision() const { return coeffs_.size() - 1; }

    [[nodiscard]] const Rat& coeff(std::size_t n) const {
        if (n > precision())
            throw precision_error("coefficient x^" + std::to_string(n) +
                                  " requested from a series known to x^" +
                                  std::to_string(precision()));
        return coeffs_[n];
    }

    void set(std::size_t n, Rat v) {
        if (n > precision()) throw precision_error("set beyond precision");
        coeffs_[n] = std::move(v);
    }

    /// Least exponent with a nonzero coefficient; nullopt means ord >= T+1.
    [[nodiscard]] std::optional<std::size_t> valuation() const {
        for (std::size_t n = 0; n < coeffs_.size(); ++n)
            if (!coeffs_[n].is_zero()) return n;
        return std::nullopt;
    }

    [[nodiscard]] bool is_zero_truncation() const { return !valuation().has_value(); }

    /// ord_x as a number, with the zero truncation reported as T+1 (a lower bound).
    [[nodiscard]] std::size_t order_lower_bound() const {
        return valuation().value_or(precision() + 1);
    }

    [[nodiscard]] TruncatedSeries truncated(std::size_t t) const {
        if (t > precision()) throw precision_error("cannot raise the precision of a series");
        return from_dense(std::vector<Rat>(coeffs_.begin(), coeffs_.begin() + t + 1));
    }

    /// c_1..c_T (the constant term is dropped).
    [[nodiscard]] std::vector<Rat> tail() const {
        return {coeffs_.begin() + 1, coeffs_.end()};
    }

    [[nodiscard]] const std::vector<Rat>& dense() const { return coeffs_; }

    friend bool operator==(const TruncatedSeries&, const TruncatedSeries&) = default;

private:
    std::vector<Rat> coeffs_;
};

/// Product truncated at x^T (schoolbook).
inline TruncatedSeries mul_trunc(const TruncatedSeries& a, const TruncatedSeries& b,
                                 std::size_t t) {
    if (a.precision() < t || b.precision() < t)
        throw precision_error("mul_trunc: operand precision below " + std::to_string(t));
    std::vector<Rat> out(t + 1);
    for (std::size_t i = 0; i <= t; ++i) {
        const Rat& ai = a.coeff(i);
        if (ai.is_zero()) continue;
        for (std::size_t j = 0; i + j <= t; ++j) {
            const Rat& bj = b.coeff(j);
            if (!bj.is_zero()) out[i + j] += ai * bj;
        }
    }
    return TruncatedSeries::from_dense(std::move(out));
}

inline TruncatedSeries add_trunc(const TruncatedSeries& a, const TruncatedSeries& b,
                                 std::size_t t) {
    std::vector<Rat> out(t + 1);
    for (std::size_t n = 0; n <= t; ++n) out[n] = a.coeff(n) + b.coeff(n);
    return TruncatedSeries::from_dense(std::move(out));
}

/**
 * y^0..y^max_j truncated at x^T, each power computed once.
 * y must have zero constant term; entry j holds the coefficients c^{(j)}_n.
 */
inline std::vector<TruncatedSeries> series_powers(const TruncatedSeries& y, std::size_t max_j,
                                                  std::size_t t) {
    if (y.precision() < t)
        throw precision_error("series known to x^" + std::to_string(y.precision()) +
                              ", powers requested to x^" + std::to_string(t));
    if (!y.coeff(0).is_zero()) throw input_error("series_pow expects a series with y(0) = 0");
    std::vector<TruncatedSeries> out;
    out.reserve(max_j + 1);
    TruncatedSeries one(t);
    one.set(0, Rat(1));
    out.push_back(std::move(one));
    const TruncatedSeries base = y.truncated(t);
    for (std::size_t j = 1; j <= max_j; ++j) out.push_back(mul_trunc(out.back(), base, t));
    return out;
}

inline TruncatedSeries series_pow(const TruncatedSeries& y, std::size_t j, std::size_t t) {
    return std::move(series_powers(y, j, t).back());
}

/**
 * Quotient num/den modulo x^{T+1} when den(0) != 0.
 */
inline TruncatedSeries div_trunc(const TruncatedSeries& num, const TruncatedSeries& den,
                                 std::size_t t) {
    if (num.precision() < t || den.precision() < t)
        throw precision_error("div_trunc: operand precision below " + std::to_string(t));
    if (den.coeff(0).is_zero()) throw std::domain_error("div_trunc: den(0) = 0");
    std::vector<Rat> q(t + 1);
    const Rat inv = Rat(1) / den.coeff(0);
    for (std::size_t n = 0; n <= t; ++n) {
        Rat acc = num.coeff(n);
        for (std::size_t m = 1; m <= n; ++m) acc -= den.coeff(m) * q[n - m];
        q[n] = acc * inv;
    }
    return TruncatedSeries::from_dense(std::move(q));
}

} // namespace algser
