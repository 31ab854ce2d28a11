#pragma once

/**
 * @file wilczynski.hpp
 * @brief Reduced Wilczynski matrices: algebraicity test, reconstruction and
 *        certification of a vanishing polynomial for a truncated series.
 *
 * Column (i, j) of the Wilczynski matrix holds the coefficients of x^i y0^j,
 * so row n, column (i, j) is c^{(j)}_{n-i}.  The reduced matrix drops the G
 * columns and the rows n with (n, 0) in G.  Rows are addressed two ways:
 * MinorIndex uses 1-based positions in the reduced matrix, while
 * WilczynskiSlab::labels keeps the original row number of each position.
 */

#include <algorithm>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "algser/bivar_poly.hpp"
#include "algser/errors.hpp"
#include "algser/linalg.hpp"
#include "algser/rat.hpp"
#include "algser/series.hpp"
#include "algser/support_shape.hpp"

namespace algser {

struct WilczynskiSlab {
    SupportShape shape;
    std::vector<std::size_t> labels;  // unreduced row number of each reduced position
    RatMatrix entries;                // labels.size() x |F|, columns in anti-lex order of F
    std::size_t depth = 0;            // N
    std::size_t source_precision = 0;

    [[nodiscard]] std::size_t max_label() const { return labels.empty() ? 0 : labels.back(); }
};

/// rows: strictly increasing 1-based reduced positions; cols: anti-lex increasing sublist of F.
struct MinorIndex {
    std::vector<std::size_t> rows;
    std::vector<Exponent> cols;

    [[nodiscard]] std::size_t order() const { return rows.size(); }
    friend bool operator==(const MinorIndex&, const MinorIndex&) = default;
};

namespace detail {

inline void require_series_start(const TruncatedSeries& c) {
    if (c.precision() < 1) throw precision_error("series needs at least c_1");
    if (!c.coeff(0).is_zero()) throw input_error("series must have zero constant term");
    if (c.coeff(1).is_zero()) throw input_error("series must have c_1 != 0");
}

inline std::size_t column_of(const SupportShape& shape, const Exponent& e) {
    const auto& f = shape.f();
    const auto it = std::find(f.begin(), f.end(), e);
    if (it == f.end())
        throw input_error("minor column (" + std::to_string(e.i) + "," + std::to_string(e.j) +
                          ") is not in F");
    return static_cast<std::size_t>(it - f.begin());
}

/// Calls fn(subset) for every k-subset of {0..n-1} in lexicographic order until fn returns true.
template <typename Fn>
bool for_each_subset(std::size_t n, std::size_t k, Fn&& fn) {
    if (k > n) return false;
    std::vector<std::size_t> idx(k);
    for (std::size_t t = 0; t < k; ++t) idx[t] = t;
    while (true) {
        if (fn(static_cast<const std::vector<std::size_t>&>(idx))) return true;
        std::size_t t = k;
        while (t > 0 && idx[t - 1] == n - k + t - 1) --t;
        if (t == 0) return false;
        ++idx[t - 1];
        for (std::size_t u = t; u < k; ++u) idx[u] = idx[u - 1] + 1;
    }
}

/// k-subsets of {0..n-1} ordered by largest element, then lexicographically.
template <typename Fn>
bool for_each_row_pick(std::size_t n, std::size_t k, Fn&& fn) {
    if (k == 0) return fn(std::vector<std::size_t>{});
    for (std::size_t top = k - 1; top < n; ++top) {
        const bool stop = for_each_subset(top, k - 1, [&](const std::vector<std::size_t>& head) {
            std::vector<std::size_t> rows = head;
            rows.push_back(top);
            return fn(static_cast<const std::vector<std::size_t>&>(rows));
        });
        if (stop) return true;
    }
    return false;
}

} // namespace detail

/**
 * First `depth` rows of the reduced matrix for `shape` evaluated at the series c.
 * Rows 1..depth+|G| of the full matrix are scanned and G rows skipped.
 */
inline WilczynskiSlab build_slab(const SupportShape& shape, const TruncatedSeries& c,
                                 std::size_t depth) {
    detail::require_series_start(c);
    WilczynskiSlab slab;
    slab.shape = shape;
    slab.depth = depth;
    slab.source_precision = c.precision();
    for (std::size_t n = 1; slab.labels.size() < depth; ++n)
        if (!shape.g_contains_row(n)) slab.labels.push_back(n);

    const std::size_t need = slab.max_label();
    if (c.precision() < need)
        throw precision_error("Wilczynski slab of depth " + std::to_string(depth) +
                              " reads c_1..c_" + std::to_string(need) + ", series has " +
                              std::to_string(c.precision()));
    const auto powers = series_powers(c.truncated(std::max<std::size_t>(need, 1)), shape.dy(),
                                      std::max<std::size_t>(need, 1));
    const auto& f = shape.f();
    slab.entries = RatMatrix(depth, f.size());
    for (std::size_t r = 0; r < depth; ++r) {
        const std::size_t n = slab.labels[r];
        for (std::size_t col = 0; col < f.size(); ++col)
            if (n >= f[col].i) slab.entries(r, col) = powers[f[col].j].coeff(n - f[col].i);
    }
    return slab;
}

/// Exact value of the minor Q_{k,I}; order 0 gives 1.
inline Rat wilczynski_minor(const WilczynskiSlab& slab, const MinorIndex& idx) {
    if (idx.rows.size() != idx.cols.size())
        throw input_error("minor needs as many rows as columns");
    const std::size_t order = idx.order();
    if (order > std::min(slab.shape.f().size(), slab.depth))
        throw input_error("minor order exceeds min(|F|, N)");
    std::vector<std::size_t> rows;
    std::vector<std::size_t> cols;
    for (std::size_t t = 0; t < order; ++t) {
        const std::size_t r = idx.rows[t];
        if (r < 1 || r > slab.depth) throw input_error("minor row out of range");
        if (t > 0 && r <= idx.rows[t - 1]) throw input_error("minor rows must be strictly increasing");
        rows.push_back(r - 1);
        const std::size_t col = detail::column_of(slab.shape, idx.cols[t]);
        if (t > 0 && col <= cols.back())
            throw input_error("minor columns must be an increasing sublist of F");
        cols.push_back(col);
    }
    return determinant(slab.entries.select(rows, cols));
}

struct AlgebraicityDecision {
    bool algebraic = false;
    std::size_t rank = 0;
    std::size_t columns = 0;  // |F|
    std::size_t depth = 0;    // N = 2 dx dy
    // The answer is exact only if c truncates a series algebraic within (dx, dy);
    // otherwise "algebraic" means "consistent to depth N".
    bool conditional = true;
};

namespace detail {

inline void check_bounds(const SupportShape& shape, std::size_t dx, std::size_t dy) {
    if (dx < 1 || dy < 1) throw input_error("degree bounds dx, dy must be >= 1");
    if (shape.f().empty()) throw input_error("shape needs a nonempty F");
    if (shape.dx() > dx || shape.dy() > dy)
        throw input_error("shape exceeds the degree bounds (dx, dy)");
}

} // namespace detail

inline AlgebraicityDecision is_algebraic_rel(const SupportShape& shape, const TruncatedSeries& c,
                                             std::size_t dx, std::size_t dy) {
    detail::check_bounds(shape, dx, dy);
    const std::size_t depth = 2 * dx * dy;
    const auto slab = build_slab(shape, c, depth);
    AlgebraicityDecision d;
    d.rank = rank(slab.entries);
    d.columns = shape.f().size();
    d.depth = depth;
    d.algebraic = d.rank < d.columns;
    return d;
}

struct CertifyReport {
    bool certified = false;
    std::size_t tau = 0;
    std::optional<std::size_t> residual_order;  // nullopt: ord P(x, z_tau) > tau
};

/**
 * ord_x P(x, z_tau) > tau with tau = 2 dx dy.  Under the hypothesis that c
 * truncates a series algebraic within (dx, dy) this proves P(x, y0) = 0.
 */
inline CertifyReport certify_report(const BivarPoly& p, const TruncatedSeries& c, std::size_t dx,
                                    std::size_t dy) {
    if (dx < 1 || dy < 1) throw input_error("degree bounds dx, dy must be >= 1");
    if (p.is_zero()) throw input_error("cannot certify the zero polynomial");
    if (p.dx() > dx || p.dy() > dy) throw input_error("polynomial exceeds the degree bounds");
    if (!c.coeff(0).is_zero()) throw input_error("series must have zero constant term");
    const std::size_t tau = 2 * dx * dy;
    if (c.precision() < tau)
        throw precision_error("certificate needs c_1..c_" + std::to_string(tau) + ", series has " +
                              std::to_string(c.precision()));
    const auto residual = eval_poly_at_series(p, c.truncated(tau), tau);
    CertifyReport rep;
    rep.tau = tau;
    rep.residual_order = residual.valuation();
    rep.certified = !rep.residual_order.has_value();
    return rep;
}

inline bool certify(const BivarPoly& p, const TruncatedSeries& c, std::size_t dx, std::size_t dy) {
    return certify_report(p, c, dx, dy).certified;
}

struct ReconstructOptions {
    std::size_t minor_budget = 512;  // order-r minors tried per subfamily level
};

struct Reconstruction {
    enum class Status { certified, full_rank, no_certified_candidate };

    Status status = Status::full_rank;
    std::optional<BivarPoly> poly;  // normalized, present iff certified
    std::size_t rank = 0;
    std::size_t columns = 0;
    std::size_t depth = 0;
    std::optional<MinorIndex> minor;     // the nonzero minor used (order = level)
    std::optional<Exponent> excluded;    // the column whose coefficient is +-minor
    std::size_t minors_tried = 0;
    std::size_t max_index_read = 0;      // largest n with c_n read
    bool conditional = true;             // certificate assumes algebraicity within (dx, dy)

    [[nodiscard]] bool found() const { return poly.has_value(); }
};

/**
 * Fills a_{k,0} for (k, 0) in G from the F coefficients:
 * a_{k,0} = -sum_{(i,j) in F, i < k} a_{i,j} c^{(j)}_{k-i}.
 */
inline BivarPoly complete_with_g(const SupportShape& shape, const BivarPoly& f_part,
                                 const std::vector<TruncatedSeries>& powers) {
    BivarPoly p = f_part;
    for (const auto& g : shape.g()) {
        Rat acc(0);
        for (const auto& [e, a] : f_part.terms())
            if (e.i < g.i) acc -= a * powers[e.j].coeff(g.i - e.i);
        p.set(g.i, 0, acc);
    }
    return p;
}

/**
 * Vanishing polynomial with support in F u G from the N-deep slab, N = 2 dx dy.
 *
 * With r = rank of the slab, every nonzero order-r minor Q_{k,I} plus one
 * extra column (i0, j0) yields a candidate: a_{i0,j0} = (-1)^{p0} Q_{k,I} and
 * the other coefficients by Cramer's rule, i.e. a_c = (-1)^{pos(c)} times the
 * minor on I u {(i0,j0)} \ {c}.  Candidates are ordered by largest row, then
 * rows lexicographically, then I, then the excluded column; the first one
 * that certifies is returned.  If the budget runs out the search descends to
 * lower orders (smaller column subfamilies).
 */
inline Reconstruction reconstruct(const SupportShape& shape, const TruncatedSeries& c,
                                  std::size_t dx, std::size_t dy,
                                  const ReconstructOptions& opts = {}) {
    detail::check_bounds(shape, dx, dy);
    const std::size_t depth = 2 * dx * dy;
    const auto slab = build_slab(shape, c, depth);
    const auto& f = shape.f();

    Reconstruction out;
    out.depth = depth;
    out.columns = f.size();
    out.rank = rank(slab.entries);
    out.max_index_read = slab.max_label();
    if (out.rank == f.size()) {
        out.status = Reconstruction::Status::full_rank;
        return out;
    }

    std::size_t g_max = 0;
    for (const auto& g : shape.g()) g_max = std::max(g_max, g.i);
    const std::size_t pw_prec = std::max({g_max, depth, std::size_t{1}});
    if (c.precision() < pw_prec)
        throw precision_error("reconstruction needs c_1..c_" + std::to_string(pw_prec));
    const auto powers = series_powers(c.truncated(pw_prec), shape.dy(), pw_prec);
    out.max_index_read = std::max({out.max_index_read, g_max, depth});

    auto try_candidate = [&](const BivarPoly& f_part) -> bool {
        const BivarPoly p = complete_with_g(shape, f_part, powers);
        if (p.is_zero() || !certify(p, c, dx, dy)) return false;
        out.poly = normalized(p);
        out.status = Reconstruction::Status::certified;
        return true;
    };

    for (std::size_t level = out.rank + 1; level-- > 0;) {
        std::size_t tried = 0;
        if (level == 0) {
            for (std::size_t col = 0; col < f.size(); ++col) {
                BivarPoly fp;
                fp.set(f[col].i, f[col].j, Rat(1));
                if (try_candidate(fp)) {
                    out.minor = MinorIndex{};
                    out.excluded = f[col];
                    return out;
                }
            }
            break;
        }
        const bool done = detail::for_each_row_pick(depth, level, [&](const std::vector<std::size_t>& rows) {
            return detail::for_each_subset(f.size(), level, [&](const std::vector<std::size_t>& cols) {
                if (tried >= opts.minor_budget) return true;
                ++tried;
                ++out.minors_tried;
                const Rat q = determinant(slab.entries.select(rows, cols));
                if (q.is_zero()) return false;
                for (std::size_t ex = 0; ex < f.size(); ++ex) {
                    if (std::find(cols.begin(), cols.end(), ex) != cols.end()) continue;
                    std::vector<std::size_t> fam = cols;
                    fam.insert(std::upper_bound(fam.begin(), fam.end(), ex), ex);
                    BivarPoly fp;
                    for (std::size_t pos = 0; pos < fam.size(); ++pos) {
                        std::vector<std::size_t> rest = fam;
                        rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(pos));
                        Rat a = fam[pos] == ex ? q : determinant(slab.entries.select(rows, rest));
                        if ((pos + 1) % 2 == 1) a = -a;  // (-1)^{pos}, 1-based
                        fp.set(f[fam[pos]].i, f[fam[pos]].j, a);
                    }
                    if (try_candidate(fp)) {
                        MinorIndex mi;
                        for (auto r : rows) mi.rows.push_back(r + 1);
                        for (auto col : cols) mi.cols.push_back(f[col]);
                        out.minor = std::move(mi);
                        out.excluded = f[ex];
                        return true;
                    }
                }
                return false;
            });
        });
        if (done && out.found()) return out;
    }
    out.status = Reconstruction::Status::no_certified_candidate;
    return out;
}

} // namespace algser
