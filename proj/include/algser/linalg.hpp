#pragma once

/**
 * @file linalg.hpp
 * @brief Dense rational matrices: exact Gaussian elimination for rank and determinant.
 */

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

#include "algser/errors.hpp"
#include "algser/rat.hpp"

namespace algser {

class RatMatrix {
public:
    RatMatrix() = default;
    RatMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}

    RatMatrix(std::initializer_list<std::initializer_list<Rat>> init) {
        rows_ = init.size();
        cols_ = rows_ ? init.begin()->size() : 0;
        data_.reserve(rows_ * cols_);
        for (const auto& row : init) {
            if (row.size() != cols_) throw input_error("ragged matrix initializer");
            data_.insert(data_.end(), row.begin(), row.end());
        }
    }

    [[nodiscard]] std::size_t rows() const { return rows_; }
    [[nodiscard]] std::size_t cols() const { return cols_; }

    Rat& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
    const Rat& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

    /// Submatrix on the given (0-based) rows and columns, in the given order.
    [[nodiscard]] RatMatrix select(std::span<const std::size_t> rows,
                                   std::span<const std::size_t> cols) const {
        RatMatrix out(rows.size(), cols.size());
        for (std::size_t r = 0; r < rows.size(); ++r)
            for (std::size_t c = 0; c < cols.size(); ++c) out(r, c) = (*this)(rows[r], cols[c]);
        return out;
    }

    friend bool operator==(const RatMatrix&, const RatMatrix&) = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<Rat> data_;
};

/// Determinant by elimination with first-nonzero pivoting; the 0x0 determinant is 1.
inline Rat determinant(RatMatrix m) {
    if (m.rows() != m.cols()) throw input_error("determinant of a non-square matrix");
    const std::size_t n = m.rows();
    Rat det(1);
    for (std::size_t k = 0; k < n; ++k) {
        std::size_t piv = k;
        while (piv < n && m(piv, k).is_zero()) ++piv;
        if (piv == n) return Rat(0);
        if (piv != k) {
            for (std::size_t c = k; c < n; ++c) std::swap(m(k, c), m(piv, c));
            det = -det;
        }
        const Rat& p = m(k, k);
        det *= p;
        for (std::size_t r = k + 1; r < n; ++r) {
            if (m(r, k).is_zero()) continue;
            const Rat f = m(r, k) / p;
            for (std::size_t c = k + 1; c < n; ++c) m(r, c) -= f * m(k, c);
        }
    }
    return det;
}

inline std::size_t rank(RatMatrix m) {
    std::size_t r = 0;
    for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
        std::size_t piv = r;
        while (piv < m.rows() && m(piv, c).is_zero()) ++piv;
        if (piv == m.rows()) continue;
        if (piv != r)
            for (std::size_t cc = c; cc < m.cols(); ++cc) std::swap(m(r, cc), m(piv, cc));
        for (std::size_t rr = r + 1; rr < m.rows(); ++rr) {
            if (m(rr, c).is_zero()) continue;
            const Rat f = m(rr, c) / m(r, c);
            for (std::size_t cc = c + 1; cc < m.cols(); ++cc) m(rr, cc) -= f * m(r, cc);
            m(rr, c) = Rat(0);
        }
        ++r;
    }
    return r;
}

} // namespace algser
