// Copyright (c) 2026 the hbie authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HBIE_SPECFUN_HPP
#define HBIE_SPECFUN_HPP

#include <span>
#include <vector>

#include "hbie/common.hpp"

namespace hbie::specfun {

/// Truncation control for the entire-series Bessel variants.
///
/// The series stop once |term| < tol * |partial sum|; max_terms caps the
/// number of terms before a TruncationError is raised.
struct SeriesParams {
    double tol = 1e-15;
    int max_terms = 200;
};

/// Entire series J#_nu(z), related to the Bessel function of the first kind
/// by J#_nu(z^2) = exp(-nu log z) J_nu(z) off the branch cut.
/// Requires nu not a negative integer (here: nu >= -1/2, integer or
/// half-integer steps).
Complex j_sharp(double nu, Complex z, const SeriesParams& p = {});

/// Entire series N#_nu(z) with harmonic-number coefficients, nu a
/// nonnegative integer.  The Neumann function is recovered as
///   N_nu(z) = (2/pi)(log z - log 2 + gamma) J_nu(z) + z^-nu N#_nu(z^2).
Complex n_sharp(int nu, Complex z, const SeriesParams& p = {});

/// Bessel J_nu(z) for nu >= -1/2 in integer or half-integer steps.
Complex bessel_j(double nu, Complex z);

/// Neumann function N_nu(z) (a.k.a. Y_nu), integer nu >= 0.
Complex neumann_y(int nu, Complex z);

/// First Hankel function H^(1)_nu(z) = J_nu(z) + i N_nu(z) for
/// nu >= -1/2 in integer or half-integer steps, z off (-inf, 0].
/// Entire-series based for |z| <= 30, asymptotic expansion beyond;
/// half-integer orders use closed trigonometric forms at any |z|.
Complex hankel1(double nu, Complex z);

enum class Kind { laplace, helmholtz_radiating, helmholtz_general };

/// Constants of the radial fundamental-solution family for Delta + k^2:
/// b_n (series normalization), a_n (the unique radiating choice of the free
/// constant), and C_n (prefactor of the Hankel form).
struct Constants {
    Complex b_n, a_n, C_n;
};
Constants constants(int n, Complex k);

/// (n-1)-dimensional measure of the unit sphere in R^n.
double sphere_measure(int n);

/// A radial fundamental solution of Delta + k^2 (or of Delta when
/// kind == laplace) in dimension n >= 2.
struct FundamentalSolution {
    int n = 2;
    Kind kind = Kind::laplace;
    Complex k{};
    Complex a_n{}; // free constant; for helmholtz_radiating it is fixed

    static FundamentalSolution laplace(int n);
    static FundamentalSolution radiating(int n, Complex k);
    static FundamentalSolution general(int n, Complex k, Complex a_n);
};

/// Profile of the radially symmetric kernel eta(rho) and its first three
/// derivatives, for the radiating Helmholtz solution.
struct RadialProfile {
    Complex value, d1, d2, d3;
};

/// Value at radius rho > 0 (Hankel-form evaluation; switches to the
/// asymptotic Hankel expansion once |k| rho > 30).
Complex fundamental_value_radial(const FundamentalSolution& fs, double rho);

/// Same value through the entire-series route.  Intended for |k| rho <= 30;
/// the series converge everywhere but lose accuracy far beyond that.
Complex fundamental_value_series_radial(const FundamentalSolution& fs, double rho);

/// Value at a point x != 0 in R^n.
Complex fundamental_value(const FundamentalSolution& fs, std::span<const double> x);

/// eta, eta', eta'', eta''' at rho > 0 (helmholtz_radiating only).
RadialProfile radial_profile(const FundamentalSolution& fs, double rho);

/// Gradient at x != 0: eta'(|x|) x/|x| (chain rule on the radial profile).
std::vector<Complex> fundamental_gradient(const FundamentalSolution& fs,
                                          std::span<const double> x);

/// Radial derivative of the profile at rho > 0, any kind.
Complex fundamental_derivative_radial(const FundamentalSolution& fs, double rho);

/// Second radial derivative at rho > 0, any kind (used for Hessians).
Complex fundamental_second_derivative_radial(const FundamentalSolution& fs, double rho);

} // namespace hbie::specfun

#endif
