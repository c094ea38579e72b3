// Copyright (c) 2026 the hbie authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HBIE_COMMON_HPP
#define HBIE_COMMON_HPP

#include <complex>
#include <numbers>
#include <stdexcept>
#include <string>

namespace hbie {

using Complex = std::complex<double>;

inline constexpr double pi = std::numbers::pi;
inline constexpr double euler_gamma = 0.57721566490153286060651209008240243;
inline constexpr Complex iu{0.0, 1.0};

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain (branch cut, bad order, ...).
class DomainError : public Error {
public:
    using Error::Error;
};

/// Evaluation requested at the singular point of a kernel.
class SingularityError : public Error {
public:
    using Error::Error;
};

/// A series failed to reach the requested tail tolerance within the term cap.
class TruncationError : public Error {
public:
    TruncationError(const std::string& what, double last_term)
        : Error(what), last_term_magnitude(last_term) {}
    double last_term_magnitude;
};

/// Field evaluation requested inside the near-boundary band.
class NearBoundaryError : public Error {
public:
    using Error::Error;
};

/// Boundary datum violates the solvability condition at a breakdown wavenumber.
class IncompatibleDataError : public Error {
public:
    IncompatibleDataError(const std::string& what, double defect_)
        : Error(what), defect(defect_) {}
    double defect;
};

/// Geometry outside what a quadrature or solver supports.
class UnsupportedDomainError : public Error {
public:
    using Error::Error;
};

/// Generic numerical breakdown (singular system, non-convergence, ...).
class NumericalError : public Error {
public:
    using Error::Error;
};

// k must avoid the branch cut (-inf, 0] of the principal logarithm.
inline bool on_log_branch_cut(Complex z) {
    return z.imag() == 0.0 && z.real() <= 0.0;
}

} // namespace hbie

#endif
