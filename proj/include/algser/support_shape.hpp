#pragma once

/**
 * @file support_shape.hpp
 * @brief Support sequences (F, G) for relative algebraicity, and the
 *        congruence constraints induced by a ramified Puiseux series.
 */

#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "algser/bivar_poly.hpp"
#include "algser/errors.hpp"

namespace algser {

/**
 * F holds the exponents (i, j) with j >= 1, G the pure-x exponents (i, 0)
 * with i >= 1.  Both are strictly increasing in anti-lex order.
 */
class SupportShape {
public:
    SupportShape() = default;

    SupportShape(std::vector<Exponent> f, std::vector<Exponent> g)
        : f_(std::move(f)), g_(std::move(g)) {
        validate();
    }

    /// Every (i, j) with i <= dx, j <= dy except (0, 0).
    static SupportShape full_box(std::size_t dx, std::size_t dy) {
        std::vector<Exponent> f;
        std::vector<Exponent> g;
        for (std::size_t i = 1; i <= dx; ++i) g.push_back({i, 0});
        for (std::size_t j = 1; j <= dy; ++j)
            for (std::size_t i = 0; i <= dx; ++i) f.push_back({i, j});
        return {std::move(f), std::move(g)};
    }

    [[nodiscard]] const std::vector<Exponent>& f() const { return f_; }
    [[nodiscard]] const std::vector<Exponent>& g() const { return g_; }

    [[nodiscard]] bool g_contains_row(std::size_t i) const {
        for (const auto& e : g_)
            if (e.i == i) return true;
        return false;
    }

    [[nodiscard]] std::size_t dx() const {
        std::size_t d = 0;
        for (const auto& e : f_) d = std::max(d, e.i);
        for (const auto& e : g_) d = std::max(d, e.i);
        return d;
    }
    [[nodiscard]] std::size_t dy() const { return f_.empty() ? 0 : f_.back().j; }

    [[nodiscard]] bool contains(const BivarPoly& p) const {
        for (const auto& [e, c] : p.terms()) {
            const auto& list = e.j == 0 ? g_ : f_;
            if (std::find(list.begin(), list.end(), e) == list.end()) return false;
        }
        return true;
    }

    friend bool operator==(const SupportShape&, const SupportShape&) = default;

private:
    void validate() const {
        for (std::size_t n = 0; n < f_.size(); ++n) {
            if (f_[n].j < 1) throw input_error("shape: every element of F needs j >= 1");
            if (n > 0 && !anti_lex_less(f_[n - 1], f_[n]))
                throw input_error("shape: F must be strictly increasing in anti-lex order");
        }
        for (std::size_t n = 0; n < g_.size(); ++n) {
            if (g_[n].j != 0 || g_[n].i < 1)
                throw input_error("shape: every element of G must be (i, 0) with i >= 1");
            if (n > 0 && !anti_lex_less(g_[n - 1], g_[n]))
                throw input_error("shape: G must be strictly increasing in anti-lex order");
        }
    }

    std::vector<Exponent> f_;
    std::vector<Exponent> g_;
};

/// Ramification data of x^{(n0-1)/p} * sum c_n x^{n/p}.
struct PuiseuxMeta {
    std::int64_t ramification = 1;  // p
    std::int64_t start_index = 1;   // n0
    std::size_t dy = 1;
};

/**
 * Supports (i, j), i <= dx, j <= dy, compatible with the Puiseux reduction:
 * i = (n0-1) j mod p when n0 >= 1, i = (1-n0)(dy-j) mod p otherwise.
 * The x^m rescaling of the reduced polynomial is left to the caller.
 */
inline SupportShape puiseux_support_constraints(const PuiseuxMeta& meta, std::size_t dx) {
    if (meta.ramification < 1) throw input_error("Puiseux ramification p must be >= 1");
    const std::int64_t p = meta.ramification;
    const auto mod = [p](std::int64_t v) { return ((v % p) + p) % p; };
    std::vector<Exponent> f;
    std::vector<Exponent> g;
    for (std::size_t j = 0; j <= meta.dy; ++j) {
        const auto jj = static_cast<std::int64_t>(j);
        const std::int64_t target = meta.start_index >= 1
            ? mod((meta.start_index - 1) * jj)
            : mod((1 - meta.start_index) * (static_cast<std::int64_t>(meta.dy) - jj));
        for (std::size_t i = 0; i <= dx; ++i) {
            if (mod(static_cast<std::int64_t>(i)) != target) continue;
            if (j == 0) {
                if (i >= 1) g.push_back({i, 0});
            } else {
                f.push_back({i, j});
            }
        }
    }
    return {std::move(f), std::move(g)};
}

} // namespace algser
