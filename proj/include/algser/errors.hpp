#pragma once

/**
 * @file errors.hpp
 * @brief Exception types shared by every algser module.
 *
 * The CLI maps these onto exit codes: input/precision/root errors -> 2,
 * budget_error -> 3.  Negative mathematical results (not algebraic, failed
 * certificate) are ordinary return values, never exceptions.
 */

#include <stdexcept>
#include <string>

namespace algser {

class error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed or out-of-contract input (bad shape, zero c_1, bad JSON value...).
class input_error : public error {
public:
    using error::error;
};

/// A truncated series does not carry enough coefficients for the request.
class precision_error : public error {
public:
    using error::error;
};

/// An enumeration or search exceeded its configured node budget.
class budget_error : public error {
public:
    using error::error;
};

/// The seed does not describe a simple root of the polynomial.
class not_simple_root_error : public error {
public:
    using error::error;
};

/// Newton lifting could not start or did not reach the requested residual.
class lift_error : public error {
public:
    using error::error;
};

} // namespace algser
