#pragma once

/**
 * @file newton_oracle.hpp
 * @brief Newton lifting of a simple root from a seed, and a fraction-free determinant.
 */

#include <algorithm>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "algser/bivar_poly.hpp"
#include "algser/errors.hpp"
#include "algser/linalg.hpp"
#include "algser/rat.hpp"
#include "algser/series.hpp"

namespace algser {

struct LiftReport {
    TruncatedSeries series;
    std::size_t iterations = 0;
    /// ord_x P(x, series) computed exactly; no_residual when the series is an exact polynomial root.
    std::size_t residual_ord = 0;
    std::size_t linear_steps = 0;
    std::optional<std::size_t> derivative_ord;  // e = ord_x dP/dy(x, y0), once the seed determines it

    static constexpr std::size_t no_residual = std::numeric_limits<std::size_t>::max();
};

namespace detail {

inline std::optional<std::size_t> poly_ord(const std::vector<Rat>& v) {
    for (std::size_t n = 0; n < v.size(); ++n)
        if (!v[n].is_zero()) return n;
    return std::nullopt;
}

} // namespace detail

/**
 * Lifts the seed c_1..c_s to precision T.
 *
 * While the seed is shorter than e = ord_x P_y(x, y0), coefficients are added
 * one at a time: past k0 the lowest x-slice of P(x, z_cur + x^{cur+1} y) is
 * linear in y and vanishes at c_{cur+1}.  Then Newton steps
 * y <- y - P(x,y)/P_y(x,y) take the precision from cur to min(2 cur + 1 - e, T).
 */
inline LiftReport newton_lift(const BivarPoly& p, std::span<const Rat> seed, std::size_t t) {
    if (p.is_zero() || p.dy() == 0) throw input_error("newton_lift: P must involve y");
    const std::size_t s = seed.size();
    if (s == 0) throw input_error("newton_lift: empty seed");
    const BivarPoly py = p.derivative_y();

    std::vector<Rat> y(std::max(t, s) + 1);
    std::copy(seed.begin(), seed.end(), y.begin() + 1);
    LiftReport out;
    std::size_t cur = s;
    std::optional<std::size_t> e;
    while (cur < t) {
        const std::span<const Rat> z(y.data() + 1, cur);
        if (!e) {
            const auto eo = detail::poly_ord(eval_poly_at_polynomial(py, z));
            if (eo && *eo <= cur) {
                e = *eo;
                const auto r = detail::poly_ord(eval_poly_at_polynomial(p, z));
                if (r && *r < cur + 1 + *e)
                    throw lift_error("newton_lift: seed is not consistent with a simple root (ord P(x, z) = " +
                                     std::to_string(*r) + " < " + std::to_string(cur + 1 + *e) + ")");
            } else {
                const auto shifted = shift_substitute(p, z, cur);
                const auto slice = shifted.poly.x_slice(shifted.i_k);
                std::size_t deg = 0;
                for (std::size_t j = 0; j < slice.size(); ++j)
                    if (!slice[j].is_zero()) deg = j;
                if (deg != 1)
                    throw lift_error("newton_lift: seed of length " + std::to_string(s) +
                                     " does not single out a simple root");
                y[cur + 1] = -slice[0] / slice[1];
                ++cur;
                ++out.linear_steps;
                continue;
            }
        }
        const std::size_t ev = *e;
        const std::size_t next = std::min(2 * cur + 1 - ev, t);
        const std::size_t width = next + ev;
        std::vector<Rat> yy(width + 1);
        std::copy(y.begin(), y.begin() + static_cast<std::ptrdiff_t>(std::min(cur, width) + 1), yy.begin());
        const auto ys = TruncatedSeries::from_dense(yy);
        const auto num = eval_poly_at_series(p, ys, width);
        const auto den = eval_poly_at_series(py, ys, width);
        for (std::size_t n = 0; n < ev; ++n)
            if (!num.coeff(n).is_zero()) throw lift_error("newton_lift: residual lost precision");
        std::vector<Rat> nn(next + 1);
        std::vector<Rat> dd(next + 1);
        for (std::size_t n = 0; n <= next; ++n) {
            nn[n] = num.coeff(n + ev);
            dd[n] = den.coeff(n + ev);
        }
        const auto delta = div_trunc(TruncatedSeries::from_dense(nn), TruncatedSeries::from_dense(dd), next);
        for (std::size_t n = 0; n <= cur; ++n)
            if (!delta.coeff(n).is_zero()) throw lift_error("newton_lift: correction touches known terms");
        for (std::size_t n = cur + 1; n <= next; ++n) y[n] = -delta.coeff(n);
        cur = next;
        ++out.iterations;
    }
    y.resize(t + 1);
    out.series = TruncatedSeries::from_dense(y);
    out.derivative_ord = e;

    const auto tail = out.series.tail();
    const auto res = detail::poly_ord(eval_poly_at_polynomial(p, tail));
    out.residual_ord = res ? *res : LiftReport::no_residual;
    if (out.residual_ord <= t) throw lift_error("newton_lift: final residual check failed");
    return out;
}

/**
 * Determinant by Bareiss elimination on the integer matrix obtained by
 * scaling each row by the lcm of its denominators; the result is rescaled.
 */
inline Rat bareiss_det(const RatMatrix& m) {
    if (m.rows() != m.cols()) throw input_error("bareiss_det: matrix is not square");
    const std::size_t n = m.rows();
    if (n == 0) return Rat(1);
    std::vector<std::vector<BigInt>> a(n, std::vector<BigInt>(n));
    BigInt scale = 1;
    for (std::size_t r = 0; r < n; ++r) {
        BigInt l = 1;
        for (std::size_t c = 0; c < n; ++c) l = lcm(l, m(r, c).den());
        scale *= l;
        for (std::size_t c = 0; c < n; ++c) a[r][c] = m(r, c).num() * (l / m(r, c).den());
    }
    int sign = 1;
    BigInt prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (a[k][k] == 0) {
            std::size_t piv = k + 1;
            while (piv < n && a[piv][k] == 0) ++piv;
            if (piv == n) return Rat(0);
            std::swap(a[k], a[piv]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j) {
                a[i][j] = a[i][j] * a[k][k] - a[i][k] * a[k][j];
                mpz_divexact(a[i][j].get_mpz_t(), a[i][j].get_mpz_t(), prev.get_mpz_t());
            }
        }
        prev = a[k][k];
    }
    BigInt det = a[n - 1][n - 1];
    if (sign < 0) det = -det;
    return Rat(det) / Rat(scale);
}

} // namespace algser
