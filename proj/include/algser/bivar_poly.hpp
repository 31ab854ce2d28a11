#pragma once

/**
 * @file bivar_poly.hpp
 * @brief Sparse bivariate polynomials over Rat and the substitutions built on them.
 *
 * Terms are keyed by Exponent{i, j} (the monomial x^i y^j) and ordered
 * anti-lexicographically: (i1,j1) < (i2,j2) iff j1 < j2, or j1 == j2 and i1 < i2.
 * No stored coefficient is ever zero.
 */

#include <algorithm>
#include <cstddef>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "algser/rat.hpp"
#include "algser/series.hpp"

namespace algser {

struct Exponent {
    std::size_t i = 0;  // power of x
    std::size_t j = 0;  // power of y

    friend bool operator==(const Exponent&, const Exponent&) = default;
};

/// Anti-lexicographic order on exponents: y-degree first, then x-degree.
struct AntiLex {
    bool operator()(const Exponent& a, const Exponent& b) const {
        return a.j != b.j ? a.j < b.j : a.i < b.i;
    }
};

inline bool anti_lex_less(const Exponent& a, const Exponent& b) { return AntiLex{}(a, b); }

class BivarPoly {
public:
    using TermMap = std::map<Exponent, Rat, AntiLex>;

    BivarPoly() = default;

    BivarPoly(std::initializer_list<std::pair<Exponent, Rat>> terms) {
        for (const auto& [e, c] : terms) add_to(e, c);
    }

    [[nodiscard]] const TermMap& terms() const { return terms_; }
    [[nodiscard]] bool is_zero() const { return terms_.empty(); }
    [[nodiscard]] std::size_t size() const { return terms_.size(); }

    [[nodiscard]] Rat coeff(std::size_t i, std::size_t j) const {
        const auto it = terms_.find({i, j});
        return it == terms_.end() ? Rat(0) : it->second;
    }

    void set(std::size_t i, std::size_t j, Rat c) {
        if (c.is_zero()) terms_.erase({i, j});
        else terms_[{i, j}] = std::move(c);
    }

    void add_to(const Exponent& e, const Rat& c) {
        if (c.is_zero()) return;
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second.is_zero()) terms_.erase(it);
        }
    }

    /// max i over the terms (0 for the zero polynomial).
    [[nodiscard]] std::size_t dx() const {
        std::size_t d = 0;
        for (const auto& [e, c] : terms_) d = std::max(d, e.i);
        return d;
    }

    /// max j over the terms (0 for the zero polynomial).
    [[nodiscard]] std::size_t dy() const {
        return terms_.empty() ? 0 : terms_.rbegin()->first.j;
    }

    /// ord_x: least i among the terms; nullopt for the zero polynomial.
    [[nodiscard]] std::optional<std::size_t> ord_x() const {
        if (terms_.empty()) return std::nullopt;
        std::size_t d = terms_.begin()->first.i;
        for (const auto& [e, c] : terms_) d = std::min(d, e.i);
        return d;
    }

    /// Coefficients of y^0..y^dy in the x^i slice, i.e. the univariate pi_i(y).
    [[nodiscard]] std::vector<Rat> x_slice(std::size_t i) const {
        std::vector<Rat> out(dy() + 1);
        for (const auto& [e, c] : terms_)
            if (e.i == i) out[e.j] = c;
        return out;
    }

    /// Coefficients of x^0..x^dx in the y^j slice, i.e. a_j(x).
    [[nodiscard]] std::vector<Rat> y_slice(std::size_t j) const {
        std::vector<Rat> out(dx() + 1);
        for (const auto& [e, c] : terms_)
            if (e.j == j) out[e.i] = c;
        return out;
    }

    [[nodiscard]] BivarPoly derivative_y() const {
        BivarPoly d;
        for (const auto& [e, c] : terms_)
            if (e.j > 0) d.add_to({e.i, e.j - 1}, c * Rat(static_cast<long>(e.j)));
        return d;
    }

    BivarPoly& operator+=(const BivarPoly& o) {
        for (const auto& [e, c] : o.terms_) add_to(e, c);
        return *this;
    }
    BivarPoly& operator-=(const BivarPoly& o) {
        for (const auto& [e, c] : o.terms_) add_to(e, -c);
        return *this;
    }
    BivarPoly& operator*=(const Rat& s) {
        if (s.is_zero()) {
            terms_.clear();
            return *this;
        }
        for (auto& [e, c] : terms_) c *= s;
        return *this;
    }

    friend BivarPoly operator+(BivarPoly a, const BivarPoly& b) { return a += b; }
    friend BivarPoly operator-(BivarPoly a, const BivarPoly& b) { return a -= b; }
    friend BivarPoly operator*(BivarPoly a, const Rat& s) { return a *= s; }

    friend BivarPoly operator*(const BivarPoly& a, const BivarPoly& b) {
        BivarPoly out;
        for (const auto& [ea, ca] : a.terms_)
            for (const auto& [eb, cb] : b.terms_) out.add_to({ea.i + eb.i, ea.j + eb.j}, ca * cb);
        return out;
    }

    friend bool operator==(const BivarPoly&, const BivarPoly&) = default;

    /// Human-readable form, highest anti-lex term first: "x^2*y^2 + y^2 - 2*x^2*y - x^2".
    [[nodiscard]] std::string str() const {
        if (terms_.empty()) return "0";
        std::string out;
        for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
            const auto& [e, c] = *it;
            const bool neg = c.sign() < 0;
            const Rat mag = neg ? -c : c;
            if (out.empty()) out += neg ? "-" : "";
            else out += neg ? " - " : " + ";
            std::string mono;
            if (e.i > 0) mono += e.i == 1 ? "x" : "x^" + std::to_string(e.i);
            if (e.j > 0) {
                if (!mono.empty()) mono += "*";
                mono += e.j == 1 ? "y" : "y^" + std::to_string(e.j);
            }
            if (mono.empty()) out += mag.str();
            else if (mag == Rat(1)) out += mono;
            else out += mag.str() + "*" + mono;
        }
        return out;
    }

private:
    TermMap terms_;
};

/**
 * Primitive integer representative of P: denominators cleared, integer content
 * divided out, and the anti-lex greatest term made positive.
 */
inline BivarPoly normalized(const BivarPoly& p) {
    if (p.is_zero()) return p;
    BigInt den_lcm = 1;
    for (const auto& [e, c] : p.terms()) den_lcm = lcm(den_lcm, c.den());
    BigInt content = 0;
    for (const auto& [e, c] : p.terms()) content = gcd(content, BigInt(c.num() * (den_lcm / c.den())));
    Rat scale = Rat(den_lcm) / Rat(content);
    if (p.terms().rbegin()->second.sign() < 0) scale = -scale;
    return p * scale;
}

/// P(x, y(x)) modulo x^{T+1}.
inline TruncatedSeries eval_poly_at_series(const BivarPoly& p, const TruncatedSeries& y,
                                           std::size_t t) {
    const auto powers = series_powers(y, p.dy(), t);
    std::vector<Rat> out(t + 1);
    for (const auto& [e, c] : p.terms()) {
        if (e.i > t) continue;
        const TruncatedSeries& yj = powers[e.j];
        for (std::size_t n = 0; n + e.i <= t; ++n) {
            const Rat& v = yj.coeff(n);
            if (!v.is_zero()) out[n + e.i] += c * v;
        }
    }
    return TruncatedSeries::from_dense(std::move(out));
}

/// The univariate polynomial P(x, z(x)) for a polynomial z = z_1 x + ... (exact, no truncation).
inline std::vector<Rat> eval_poly_at_polynomial(const BivarPoly& p, std::span<const Rat> z_tail) {
    // deg P(x, z) <= dx + dy * deg z, so zero-padding z to that degree makes the truncation exact.
    std::vector<Rat> padded(z_tail.begin(), z_tail.end());
    padded.resize(std::max<std::size_t>(p.dx() + p.dy() * z_tail.size(), 1));
    return eval_poly_at_series(p, TruncatedSeries::from_tail(padded), padded.size()).dense();
}

struct ShiftResult {
    BivarPoly poly;     // P_k(x, y) = P(x, z_k + x^{k+1} y)
    std::size_t i_k;    // ord_x P_k
    std::size_t d_k;    // deg_x P_k
};

/// P(x, z(x) + x^shift y) for a polynomial z = z_1 x + ... (exact).
inline BivarPoly substitute_affine(const BivarPoly& p, std::span<const Rat> z, std::size_t shift) {
    BivarPoly base;
    for (std::size_t n = 1; n <= z.size(); ++n) base.add_to({n, 0}, z[n - 1]);
    base.add_to({shift, 1}, Rat(1));

    BivarPoly out;
    BivarPoly power{{{0, 0}, Rat(1)}};
    for (std::size_t j = 0; j <= p.dy(); ++j) {
        if (j > 0) power = power * base;
        for (const auto& [e, c] : p.terms()) {
            if (e.j != j) continue;
            for (const auto& [pe, pc] : power.terms()) out.add_to({pe.i + e.i, pe.j}, c * pc);
        }
    }
    return out;
}

/**
 * P_k(x,y) = P(x, z_k + x^{k+1} y) with z_k = c_1 x + ... + c_k x^k.
 * Only the first k entries of `z` are used.
 */
inline ShiftResult shift_substitute(const BivarPoly& p, std::span<const Rat> z, std::size_t k) {
    if (z.size() < k)
        throw precision_error("shift_substitute: need c_1..c_" + std::to_string(k) + ", have " +
                              std::to_string(z.size()));
    if (p.is_zero()) throw input_error("shift_substitute: zero polynomial");
    BivarPoly out = substitute_affine(p, z.first(k), k + 1);
    const std::size_t ik = out.ord_x().value();  // P != 0 implies P_k != 0
    return {out, ik, out.dx()};
}

} // namespace algser
