#pragma once

/**
 * @file flajolet_soria.hpp
 * @brief Coefficients of the solution of a reduced Henselian equation, and
 *        the closed-form coefficient formula for a simple root of P.
 *
 * For y = Q(x, y) = sum b_{l,m} x^l y^m the solution sum c_n x^n has
 *   c_n = sum_{m=1}^{2n-1} (1/m) sum_{|k|=m, ||k||_1=n, ||k||_2=m-1} (m!/k!) b^k,
 * the inner sum running over exponent vectors k indexed by the support of Q.
 */

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "algser/bivar_poly.hpp"
#include "algser/combinatorics.hpp"
#include "algser/errors.hpp"
#include "algser/reduced_hensel_eq.hpp"
#include "algser/series.hpp"

namespace algser {

/// Exponent vector over the support of Q, with |k|, ||k||_1 and ||k||_2 cached.
class CompositionVector {
public:
    CompositionVector() = default;

    CompositionVector(std::vector<Exponent> support, std::vector<unsigned> counts)
        : support_(std::move(support)), counts_(std::move(counts)) {
        if (support_.size() != counts_.size()) throw input_error("composition: size mismatch");
        for (std::size_t t = 0; t < counts_.size(); ++t) {
            size_ += counts_[t];
            norm1_ += counts_[t] * support_[t].i;
            norm2_ += counts_[t] * support_[t].j;
        }
    }

    [[nodiscard]] const std::vector<Exponent>& support() const { return support_; }
    [[nodiscard]] const std::vector<unsigned>& counts() const { return counts_; }
    [[nodiscard]] std::size_t size() const { return size_; }    // |k|
    [[nodiscard]] std::size_t norm1() const { return norm1_; }  // sum of l * k_{l,m}
    [[nodiscard]] std::size_t norm2() const { return norm2_; }  // sum of m * k_{l,m}

private:
    std::vector<Exponent> support_;
    std::vector<unsigned> counts_;
    std::size_t size_ = 0;
    std::size_t norm1_ = 0;
    std::size_t norm2_ = 0;
};

struct FsOptions {
    /// Stop the outer sum at m = n; only valid without b_{0,m} terms.
    bool restrict_m_le_n = false;
    std::uint64_t node_budget = NodeBudget::default_limit;
};

namespace detail {

struct FsSearch {
    std::vector<Exponent> support;
    std::size_t n = 0;
    std::size_t m_max = 0;
    NodeBudget* budget = nullptr;
    std::vector<unsigned> counts;

    // excess = ||k||_2 - |k|; a valid vector ends with excess = -1.  Only
    // terms with m = 0 lower the excess, by one unit of x-weight (>= 1) each.
    template <typename Fn>
    void run(std::size_t t, std::size_t weight, long excess, std::size_t size, Fn& fn) {
        budget->tick();
        const std::size_t rest = n - weight;
        if (excess - static_cast<long>(rest) > -1) return;
        if (t == support.size()) {
            if (rest == 0 && excess == -1 && size <= m_max)
                fn(CompositionVector(support, counts));
            return;
        }
        const auto [l, m] = support[t];
        const long de = static_cast<long>(m) - 1;
        for (unsigned c = 0;; ++c) {
            const std::size_t w = weight + c * l;
            const long e = excess + c * de;
            if (w > n || size + c > m_max) break;
            // e - (n - w) never decreases with c since l >= 1 whenever m = 0.
            if (e - static_cast<long>(n - w) > -1) break;
            counts[t] = c;
            run(t + 1, w, e, size + c, fn);
        }
        counts[t] = 0;
    }
};

} // namespace detail

/**
 * Calls fn(k) for every composition vector with ||k||_1 = n,
 * ||k||_2 = |k| - 1 and |k| <= m_max.
 */
template <typename Fn>
void for_each_fs_composition(const ReducedHenselEq& q, std::size_t n, std::size_t m_max, NodeBudget& budget,
                             Fn&& fn) {
    detail::FsSearch s;
    for (const auto& [e, b] : q.q().terms()) s.support.push_back(e);
    s.n = n;
    s.m_max = m_max;
    s.budget = &budget;
    s.counts.assign(s.support.size(), 0);
    s.run(0, 0, 0, 0, fn);
}

inline Rat fs_coefficient(const ReducedHenselEq& q, std::size_t n, const FsOptions& opts = {}) {
    if (n < 1) throw input_error("fs_coefficient: n >= 1 required");
    if (opts.restrict_m_le_n && !q.no_x_free_terms())
        throw input_error("fs_coefficient: m <= n only holds without b_{0,m} terms");
    std::vector<Rat> coeffs;
    for (const auto& [e, b] : q.q().terms()) coeffs.push_back(b);
    NodeBudget budget(opts.node_budget);
    Rat total;
    for_each_fs_composition(q, n, opts.restrict_m_le_n ? n : 2 * n - 1, budget,
                            [&](const CompositionVector& k) {
                                const auto& cnt = k.counts();
                                Rat term(multinomial(static_cast<unsigned>(k.size()), cnt));
                                for (std::size_t t = 0; t < cnt.size(); ++t)
                                    if (cnt[t]) term *= pow(coeffs[t], cnt[t]);
                                total += term / Rat(static_cast<long>(k.size()));
                            });
    return total;
}

/// c_0..c_T of the solution (c_0 = 0).
inline TruncatedSeries fs_expand(const ReducedHenselEq& q, std::size_t t, const FsOptions& opts = {}) {
    if (t < 1) throw input_error("fs_expand: T >= 1 required");
    std::vector<Rat> c(t + 1);
    for (std::size_t n = 1; n <= t; ++n) c[n] = fs_coefficient(q, n, opts);
    return TruncatedSeries::from_dense(std::move(c));
}

/**
 * One factor of the closed-form expansion: the term a_{i,j} of P with a
 * choice of m <= j and L in N^{k+1}, |L| = j - m, landing in b_{l,m} with
 * l = ||L|| + m(k+1) + i - i_k.  weight = j!/(m! L!).
 */
struct ClosedFormAtom {
    std::size_t term = 0;  // index into the support of P (anti-lex order)
    std::size_t m = 0;
    std::vector<unsigned> L;
    std::size_t l = 0;
    BigInt weight;
};

/// e_{T_S} indexed by q, then S (counts over the support of P), then T_S (over c_1..c_{k+1}).
struct ClosedFormTable {
    std::vector<Exponent> support;
    std::size_t k = 0;
    std::size_t i_k = 0;
    std::size_t p = 0;
    std::vector<std::map<std::vector<unsigned>, std::map<std::vector<unsigned>, BigInt>>> by_q;  // [q-1]
};

namespace detail {

/// All atoms with 1 <= l <= l_cap.
inline std::vector<ClosedFormAtom> closed_form_atoms(const std::vector<Exponent>& support, std::size_t k,
                                                     std::size_t i_k, std::size_t l_cap) {
    std::vector<ClosedFormAtom> atoms;
    for (std::size_t t = 0; t < support.size(); ++t) {
        const auto [i, j] = support[t];
        for (std::size_t m = 0; m <= j; ++m) {
            const std::size_t size = j - m;
            const std::size_t base = m * (k + 1) + i;  // l = ||L|| + base - i_k
            for (std::size_t w = size; w <= size * (k + 1); ++w) {
                if (w + base < i_k + 1) continue;
                const std::size_t l = w + base - i_k;
                if (l > l_cap) break;
                for_each_weighted_composition(k + 1, size, w, [&](const std::vector<unsigned>& L) {
                    std::vector<unsigned> parts(L);
                    parts.push_back(static_cast<unsigned>(m));
                    atoms.push_back({t, m, L, l, multinomial(static_cast<unsigned>(j), parts)});
                });
            }
        }
    }
    return atoms;
}

inline BigInt system_weight(const std::vector<ClosedFormAtom>& atoms, const std::vector<unsigned>& n,
                            unsigned q) {
    BigInt w = multinomial(q, n);
    for (std::size_t a = 0; a < atoms.size(); ++a)
        for (unsigned r = 0; r < n[a]; ++r) w *= atoms[a].weight;
    return w;
}

} // namespace detail

/**
 * Enumerates every multiset of atoms with sum l = p and sum m = q - 1 and
 * groups q!/prod n! * prod weight^n by (q, S, T_S).
 */
inline ClosedFormTable closed_form_table(const BivarPoly& P, std::size_t k, std::size_t i_k, std::size_t p,
                                         std::uint64_t node_budget = NodeBudget::default_limit) {
    if (p < 1) throw input_error("closed form: p >= 1 required");
    ClosedFormTable out;
    for (const auto& [e, a] : P.terms()) out.support.push_back(e);
    out.k = k;
    out.i_k = i_k;
    out.p = p;
    out.by_q.resize(p);
    const auto atoms = detail::closed_form_atoms(out.support, k, i_k, p);
    NodeBudget budget(node_budget);
    std::vector<unsigned> n(atoms.size(), 0);

    // excess = sum n (m - 1) must end at -1; every atom costs l >= 1.
    auto rec = [&](auto&& self, std::size_t a, std::size_t weight, long excess, unsigned q) -> void {
        budget.tick();
        const std::size_t rest = p - weight;
        if (excess - static_cast<long>(rest) > -1) return;
        if (rest == 0) {
            if (excess != -1) return;
            std::vector<unsigned> s(out.support.size(), 0);
            std::vector<unsigned> tv(k + 1, 0);
            for (std::size_t b = 0; b < atoms.size(); ++b) {
                if (!n[b]) continue;
                s[atoms[b].term] += n[b];
                for (std::size_t r = 0; r <= k; ++r) tv[r] += n[b] * atoms[b].L[r];
            }
            out.by_q[q - 1][s][tv] += detail::system_weight(atoms, n, q);
            return;
        }
        if (a == atoms.size()) return;
        const auto& at = atoms[a];
        const long de = static_cast<long>(at.m) - 1;
        for (unsigned c = 0; weight + c * at.l <= p; ++c) {
            const long e = excess + c * de;
            if (e - static_cast<long>(rest - c * at.l) > -1) break;
            n[a] = c;
            self(self, a + 1, weight + c * at.l, e, q + c);
        }
        n[a] = 0;
    };
    rec(rec, 0, 0, 0, 0);
    return out;
}

/**
 * c_{k+1+p} = sum_q (1/q)(-1/omega0)^q sum_S A^S sum_{T_S} e_{T_S} C^{T_S},
 * C = (c_1, ..., c_{k+1}).
 */
inline Rat closed_form_coefficient(const BivarPoly& P, std::span<const Rat> c, std::size_t k, std::size_t i_k,
                                   const Rat& omega0, std::size_t p,
                                   std::uint64_t node_budget = NodeBudget::default_limit) {
    if (c.size() < k + 1) throw precision_error("closed form: need c_1..c_" + std::to_string(k + 1));
    if (omega0.is_zero()) throw not_simple_root_error("omega0 = 0");
    const ClosedFormTable table = closed_form_table(P, k, i_k, p, node_budget);
    std::vector<Rat> a;
    for (const auto& [e, v] : P.terms()) a.push_back(v);
    const Rat factor = -Rat(1) / omega0;
    Rat total;
    for (std::size_t q = 1; q <= p; ++q) {
        Rat inner;
        for (const auto& [s, by_t] : table.by_q[q - 1]) {
            std::size_t s1 = 0;
            std::size_t s2 = 0;
            Rat as(1);
            for (std::size_t t = 0; t < s.size(); ++t) {
                s1 += s[t] * table.support[t].i;
                s2 += s[t] * table.support[t].j;
                if (s[t]) as *= pow(a[t], s[t]);
            }
            Rat sum_t;
            for (const auto& [tv, e] : by_t) {
                // |T_S| = ||S||_2 - q + 1 and ||T_S|| = p + q i_k - (q-1)(k+1) - ||S||_1.
                if (abs_norm(tv) + q != s2 + 1 ||
                    weighted_norm(tv) + s1 + (q - 1) * (k + 1) != p + q * i_k)
                    throw std::logic_error("closed form: index constraint violated");
                Rat ct(e);
                for (std::size_t r = 0; r < tv.size(); ++r)
                    if (tv[r]) ct *= pow(c[r], tv[r]);
                sum_t += ct;
            }
            inner += as * sum_t;
        }
        total += pow(factor, q) * inner / Rat(static_cast<long>(q));
    }
    return total;
}

/**
 * e_{T_S} by direct enumeration: for each support term with S_t > 0 a
 * multiset of S_t atoms of that term, subject to sum n L = T_S, weighted by
 * q!/prod n! * prod (j!/(m! L!))^n with q = |S|.
 */
inline BigInt e_coefficient(const BivarPoly& P, std::size_t k, std::size_t i_k, std::span<const unsigned> s,
                            std::span<const unsigned> t_s,
                            std::uint64_t node_budget = NodeBudget::default_limit) {
    std::vector<Exponent> support;
    for (const auto& [e, a] : P.terms()) support.push_back(e);
    if (s.size() != support.size() || t_s.size() != k + 1) throw input_error("e_coefficient: index size mismatch");
    const unsigned q = static_cast<unsigned>(abs_norm(s));
    if (q == 0) return 0;
    // l is bounded by the total x-weight each factor can carry.
    std::size_t l_cap = 0;
    for (const auto& e : support) l_cap = std::max(l_cap, e.j * (k + 1) + e.i);
    auto atoms = detail::closed_form_atoms(support, k, i_k, l_cap);
    std::erase_if(atoms, [&](const ClosedFormAtom& at) { return s[at.term] == 0; });
    NodeBudget budget(node_budget);
    std::vector<unsigned> n(atoms.size(), 0);
    std::vector<unsigned> used(support.size(), 0);
    std::vector<unsigned> acc(k + 1, 0);
    BigInt total = 0;

    auto rec = [&](auto&& self, std::size_t a) -> void {
        budget.tick();
        if (a == atoms.size()) {
            for (std::size_t t = 0; t < support.size(); ++t)
                if (used[t] != s[t]) return;
            for (std::size_t r = 0; r <= k; ++r)
                if (acc[r] != t_s[r]) return;
            total += detail::system_weight(atoms, n, q);
            return;
        }
        const auto& at = atoms[a];
        for (unsigned c = 0;; ++c) {
            bool ok = used[at.term] + c <= s[at.term];
            for (std::size_t r = 0; ok && r <= k; ++r) ok = acc[r] + c * at.L[r] <= t_s[r];
            if (!ok) break;
            n[a] = c;
            used[at.term] += c;
            for (std::size_t r = 0; r <= k; ++r) acc[r] += c * at.L[r];
            self(self, a + 1);
            used[at.term] -= c;
            for (std::size_t r = 0; r <= k; ++r) acc[r] -= c * at.L[r];
        }
        n[a] = 0;
    };
    rec(rec, 0);
    return total;
}

} // namespace algser
