// Copyright (c) 2026 the hbie authors
// SPDX-License-Identifier: Apache-2.0

#include "hbie/specfun.hpp"

#include <cmath>
#include <limits>

namespace hbie::specfun {

namespace {

// ---------------------------------------------------------------------------
// Compensated (double-double) arithmetic for the series accumulations.
//
// The alternating entire series cancel down from a largest term of order
// exp(|z|) to a result of order exp(|Im z|); plain double summation leaves
// only ~7 correct digits at the far end of the supported argument range.
// ---------------------------------------------------------------------------

struct dd {
    double hi = 0.0, lo = 0.0;
};

inline dd quick_two_sum(double a, double b) {
    double s = a + b;
    return {s, b - (s - a)};
}

inline dd two_sum(double a, double b) {
    double s = a + b;
    double v = s - a;
    return {s, (a - (s - v)) + (b - v)};
}

inline dd two_prod(double a, double b) {
    double p = a * b;
    return {p, std::fma(a, b, -p)};
}

inline dd add(dd a, dd b) {
    dd s = two_sum(a.hi, b.hi);
    return quick_two_sum(s.hi, s.lo + a.lo + b.lo);
}

inline dd mul(dd a, double b) {
    dd p = two_prod(a.hi, b);
    return quick_two_sum(p.hi, p.lo + a.lo * b);
}

inline dd mul(dd a, dd b) {
    dd p = two_prod(a.hi, b.hi);
    return quick_two_sum(p.hi, p.lo + a.hi * b.lo + a.lo * b.hi);
}

inline dd div(dd a, double b) {
    double q = a.hi / b;
    dd p = two_prod(q, b);
    double r = ((a.hi - p.hi) - p.lo) + a.lo;
    return quick_two_sum(q, r / b);
}

inline dd inv(double b) { return div(dd{1.0, 0.0}, b); }

struct ddc {
    dd re, im;
};

inline ddc add(ddc a, ddc b) { return {add(a.re, b.re), add(a.im, b.im)}; }

inline ddc mul(ddc a, Complex b) {
    dd re = add(mul(a.re, b.real()), mul(a.im, -b.imag()));
    dd im = add(mul(a.re, b.imag()), mul(a.im, b.real()));
    return {re, im};
}

inline ddc mul(ddc a, dd b) { return {mul(a.re, b), mul(a.im, b)}; }

inline ddc mul(ddc a, double b) { return {mul(a.re, b), mul(a.im, b)}; }

inline ddc mul(ddc a, ddc b) {
    dd re = add(mul(a.re, b.re), mul(mul(a.im, b.im), -1.0));
    dd im = add(mul(a.re, b.im), mul(a.im, b.re));
    return {re, im};
}

inline ddc div(ddc a, double b) { return {div(a.re, b), div(a.im, b)}; }

inline ddc times_i(ddc a) { return {mul(a.im, -1.0), a.re}; }

inline double abs_hint(ddc a) { return std::hypot(a.re.hi, a.im.hi); }

inline Complex to_complex(ddc a) {
    return {a.re.hi + a.re.lo, a.im.hi + a.im.lo};
}

bool is_integer(double nu) { return nu == std::floor(nu); }
bool is_half_integer(double nu) { return nu - std::floor(nu) == 0.5; }

void check_params(const SeriesParams& p) {
    if (!(p.tol > 0.0)) throw DomainError("series tolerance must be positive");
    if (p.max_terms < 8) throw DomainError("series term cap must be at least 8");
}

void check_order(double nu) {
    if (nu < -0.5 || !(is_integer(nu) || is_half_integer(nu)))
        throw DomainError("order must be an integer or half-integer >= -1/2");
}

void check_off_cut(Complex z, const char* who) {
    if (on_log_branch_cut(z))
        throw DomainError(std::string(who) + ": argument on the branch cut (-inf, 0]");
}

// J#_nu series in compensated arithmetic.  Terms once below the compensated
// noise floor of the largest partial sum cannot change the result either, so
// they also count as converged (matters near zeros of the function).
ddc j_sharp_core(double nu, Complex z, const SeriesParams& p) {
    double t0 = std::exp2(-nu) / std::tgamma(nu + 1.0);
    ddc term{dd{t0, 0.0}, dd{0.0, 0.0}};
    ddc sum{};
    double last = 0.0, peak = 0.0;
    for (int j = 0; j < p.max_terms; ++j) {
        sum = add(sum, term);
        peak = std::max(peak, abs_hint(sum));
        term = div(mul(term, -z), 4.0 * (j + 1) * (j + nu + 1));
        last = abs_hint(term);
        if (last <= p.tol * abs_hint(sum) || last <= 1e-30 * peak)
            return add(sum, term);
    }
    throw TruncationError("entire Bessel series did not converge", last);
}

// N#_nu series, nu a nonnegative integer.
ddc n_sharp_core(int nu, Complex z, const SeriesParams& p) {
    // finite part: sum_{j=0}^{nu-1} ((nu-j-1)!/j!) (z/4)^j, prefactor -2^nu/pi
    ddc s1{};
    ddc zpow{dd{1.0, 0.0}, dd{0.0, 0.0}};
    for (int j = 0; j < nu; ++j) {
        double c = std::tgamma(double(nu - j)) / std::tgamma(double(j + 1));
        s1 = add(s1, mul(zpow, c));
        zpow = div(mul(zpow, z), 4.0);
    }
    // infinite part: sum_j (-z/4)^j 2^-nu /(j!(nu+j)!) h_j with
    // h_j = 2 sum_{0<l<=j} 1/l + sum_{j<l<=j+nu} 1/l, prefactor -z^nu/pi.
    dd h{};
    for (int l = 1; l <= nu; ++l) h = add(h, inv(double(l)));
    ddc term{dd{std::exp2(-double(nu)) / std::tgamma(double(nu + 1)), 0.0}, dd{}};
    ddc s2{};
    double last = 0.0, peak = 0.0;
    bool converged = false;
    for (int j = 0; j < p.max_terms; ++j) {
        s2 = add(s2, mul(term, h));
        peak = std::max(peak, abs_hint(s2));
        term = div(mul(term, -z), 4.0 * (j + 1) * (j + nu + 1));
        h = add(add(h, inv(double(j + 1))), inv(double(j + nu + 1)));
        last = abs_hint(term) * std::max(h.hi, 1.0);
        if (last <= p.tol * abs_hint(s2) || last <= 1e-30 * peak) {
            s2 = add(s2, mul(term, h));
            converged = true;
            break;
        }
    }
    if (!converged)
        throw TruncationError("entire Neumann series did not converge", last);
    ddc zn{dd{1.0, 0.0}, dd{}};
    for (int m = 0; m < nu; ++m) zn = mul(zn, z);
    ddc total = add(mul(s1, std::exp2(double(nu))), mul(s2, zn));
    return div(mul(total, -1.0), pi);
}

Complex pow_int(Complex base, int m) {
    Complex r = 1.0;
    for (int i = 0; i < std::abs(m); ++i) r *= base;
    return m >= 0 ? r : 1.0 / r;
}

Complex pow_complex(Complex base, double expo) {
    if (expo == 0.0) return 1.0;
    if (expo == std::floor(expo)) return pow_int(base, int(expo));
    return std::exp(expo * std::log(base));
}

constexpr double series_argument_cap = 30.0; // switch point in |z| for series

// Asymptotic Hankel expansion for large |z| (kind = +1 for H1, -1 for H2).
Complex hankel_asymptotic(double nu, Complex z, int kind) {
    Complex sgn = (kind > 0) ? iu : -iu;
    Complex omega = z - (0.5 * nu + 0.25) * pi;
    Complex prefac = std::sqrt(2.0 / (pi * z)) *
                     ((kind > 0) ? std::exp(iu * omega) : std::exp(-iu * omega));
    double mu4 = 4.0 * nu * nu;
    Complex sum = 1.0, term = 1.0;
    double prev = 1.0;
    for (int m = 0; m < 60; ++m) {
        double odd = 2.0 * m + 1.0;
        term *= sgn * (mu4 - odd * odd) / (8.0 * (m + 1)) / z;
        double tm = std::abs(term);
        if (tm >= prev) break; // divergent tail reached
        sum += term;
        prev = tm;
        if (tm < 1e-17 * std::abs(sum)) break;
    }
    return prefac * sum;
}

// Closed trigonometric forms plus upward recurrence for half-integer orders.
Complex hankel1_half_integer(double nu, Complex z) {
    Complex pref = std::sqrt(2.0 / (pi * z)) * std::exp(iu * z);
    Complex hm = pref;      // order -1/2
    Complex h = -iu * pref; // order +1/2
    if (nu == -0.5) return hm;
    for (double v = 0.5; v < nu; v += 1.0) {
        Complex hp = (2.0 * v / z) * h - hm;
        hm = h;
        h = hp;
    }
    return h;
}

// Integer-order H1 with the J/N combination carried in compensated arithmetic
// (J and iN cancel exponentially in the upper half plane).
Complex hankel1_integer(int nu, Complex z) {
    if (std::abs(z) > series_argument_cap) return hankel_asymptotic(nu, z, +1);
    SeriesParams p;
    Complex w = z * z;
    ddc J = mul(j_sharp_core(nu, w, p), pow_complex(z, nu));
    Complex logfac = (2.0 / pi) * (std::log(z) - std::log(2.0) + euler_gamma);
    ddc N = add(mul(J, logfac), mul(n_sharp_core(nu, w, p), pow_complex(z, -nu)));
    return to_complex(add(J, times_i(N)));
}

struct HankelLadder {
    Complex h0, h1, h2, h3; // orders nu, nu+1, nu+2, nu+3
};

HankelLadder hankel1_ladder(double nu, Complex z) {
    return {hankel1(nu, z), hankel1(nu + 1.0, z), hankel1(nu + 2.0, z),
            hankel1(nu + 3.0, z)};
}

} // namespace

Complex j_sharp(double nu, Complex z, const SeriesParams& p) {
    check_params(p);
    check_order(nu);
    return to_complex(j_sharp_core(nu, z, p));
}

Complex n_sharp(int nu, Complex z, const SeriesParams& p) {
    check_params(p);
    if (nu < 0) throw DomainError("n_sharp: order must be a nonnegative integer");
    return to_complex(n_sharp_core(nu, z, p));
}

Complex bessel_j(double nu, Complex z) {
    check_order(nu);
    if (z == 0.0) {
        if (nu < 0.0) throw SingularityError("bessel_j: negative order at z = 0");
        return nu == 0.0 ? 1.0 : 0.0;
    }
    if (std::abs(z) <= series_argument_cap) {
        if (!is_integer(nu)) check_off_cut(z, "bessel_j");
        return pow_complex(z, nu) * to_complex(j_sharp_core(nu, z * z, {}));
    }
    return 0.5 * (hankel_asymptotic(nu, z, +1) + hankel_asymptotic(nu, z, -1));
}

Complex neumann_y(int nu, Complex z) {
    check_off_cut(z, "neumann_y");
    if (nu < 0) throw DomainError("neumann_y: order must be a nonnegative integer");
    if (std::abs(z) > series_argument_cap)
        return (hankel_asymptotic(nu, z, +1) - hankel_asymptotic(nu, z, -1)) /
               (2.0 * iu);
    SeriesParams p;
    Complex w = z * z;
    ddc J = mul(j_sharp_core(nu, w, p), pow_complex(z, nu));
    Complex logfac = (2.0 / pi) * (std::log(z) - std::log(2.0) + euler_gamma);
    ddc N = add(mul(J, logfac), mul(n_sharp_core(nu, w, p), pow_complex(z, -nu)));
    return to_complex(N);
}

Complex hankel1(double nu, Complex z) {
    check_order(nu);
    check_off_cut(z, "hankel1");
    if (is_half_integer(nu)) return hankel1_half_integer(nu, z);
    return hankel1_integer(int(nu), z);
}

double sphere_measure(int n) {
    if (n < 2) throw DomainError("sphere_measure: dimension must be >= 2");
    return 2.0 * std::pow(pi, 0.5 * n) / std::tgamma(0.5 * n);
}

Constants constants(int n, Complex k) {
    if (n < 2) throw DomainError("constants: dimension must be >= 2");
    check_off_cut(k, "constants");
    double mag = std::pow(pi, 1.0 - 0.5 * n) * std::pow(2.0, -1.0 - 0.5 * n);
    Complex b = (n % 2 == 0) ? Complex(mag)
                             : Complex(((n - 1) / 2 % 2 == 0) ? mag : -mag);
    Complex a = -iu * mag;
    double nuh = 0.5 * (n - 2);
    Complex c = pow_complex(k, nuh) / (iu * 4.0 * std::pow(2.0 * pi, nuh));
    return {b, a, c};
}

FundamentalSolution FundamentalSolution::laplace(int n) {
    if (n < 2) throw DomainError("fundamental solution: dimension must be >= 2");
    return {n, Kind::laplace, Complex{}, Complex{}};
}

FundamentalSolution FundamentalSolution::radiating(int n, Complex k) {
    if (n < 2) throw DomainError("fundamental solution: dimension must be >= 2");
    check_off_cut(k, "fundamental solution");
    if (k.imag() < 0.0)
        throw DomainError("fundamental solution: need Im k >= 0 for the radiating kernel");
    return {n, Kind::helmholtz_radiating, k, constants(n, k).a_n};
}

FundamentalSolution FundamentalSolution::general(int n, Complex k, Complex a_n) {
    if (n < 2) throw DomainError("fundamental solution: dimension must be >= 2");
    check_off_cut(k, "fundamental solution");
    if (k.imag() < 0.0)
        throw DomainError("fundamental solution: need Im k >= 0");
    return {n, Kind::helmholtz_general, k, a_n};
}

Complex fundamental_value_radial(const FundamentalSolution& fs, double rho) {
    if (!(rho > 0.0)) throw SingularityError("fundamental solution: rho must be positive");
    if (fs.kind == Kind::laplace) {
        double s = sphere_measure(fs.n);
        return fs.n == 2 ? std::log(rho) / s
                         : std::pow(rho, 2.0 - fs.n) / ((2.0 - fs.n) * s);
    }
    double nu = 0.5 * (fs.n - 2);
    Constants c = constants(fs.n, fs.k);
    Complex val = c.C_n * std::pow(rho, -nu) * hankel1(nu, fs.k * rho);
    if (fs.kind == Kind::helmholtz_general && fs.a_n != c.a_n) {
        // the family members differ by a multiple of the regular radial solution
        val += (fs.a_n - c.a_n) * pow_complex(fs.k, nu) * std::pow(rho, -nu) *
               bessel_j(nu, fs.k * rho);
    }
    return val;
}

Complex fundamental_value_series_radial(const FundamentalSolution& fs, double rho) {
    if (!(rho > 0.0)) throw SingularityError("fundamental solution: rho must be positive");
    if (fs.kind == Kind::laplace) return fundamental_value_radial(fs, rho);
    SeriesParams p;
    int n = fs.n;
    Complex k = fs.k;
    double nu = 0.5 * (n - 2);
    Constants c = constants(n, k);
    Complex w = k * k * rho * rho;
    Complex kn2 = pow_complex(k, double(n - 2));
    double rn2 = std::pow(rho, 2.0 - n);
    if (n % 2 == 0) {
        Complex A = kn2 * (fs.a_n + (2.0 * c.b_n / pi) *
                                        (std::log(k) - std::log(2.0) + euler_gamma +
                                         std::log(rho)));
        ddc s = add(mul(j_sharp_core(nu, w, p), A),
                    mul(n_sharp_core(int(nu), w, p), c.b_n * rn2));
        return to_complex(s);
    }
    ddc s = add(mul(j_sharp_core(nu, w, p), fs.a_n * kn2),
                mul(j_sharp_core(-nu, w, p), c.b_n * rn2));
    return to_complex(s);
}

Complex fundamental_value(const FundamentalSolution& fs, std::span<const double> x) {
    if (int(x.size()) != fs.n)
        throw DomainError("fundamental solution: point dimension mismatch");
    double rho2 = 0.0;
    for (double xi : x) rho2 += xi * xi;
    if (rho2 == 0.0) throw SingularityError("fundamental solution: evaluation at the origin");
    return fundamental_value_radial(fs, std::sqrt(rho2));
}

RadialProfile radial_profile(const FundamentalSolution& fs, double rho) {
    if (!(rho > 0.0)) throw DomainError("radial_profile: rho must be positive");
    if (fs.kind != Kind::helmholtz_radiating)
        throw DomainError("radial_profile: requires the radiating Helmholtz kernel");
    double nu = 0.5 * (fs.n - 2);
    Complex k = fs.k;
    Complex C = constants(fs.n, k).C_n;
    HankelLadder H = hankel1_ladder(nu, k * rho);
    double rnu = std::pow(rho, -nu);
    RadialProfile out;
    out.value = C * rnu * H.h0;
    out.d1 = -k * C * rnu * H.h1;
    out.d2 = -k * C * rnu / rho * H.h1 + k * k * C * rnu * H.h2;
    out.d3 = 3.0 * k * k * C * rnu / rho * H.h2 - k * k * k * C * rnu * H.h3;
    return out;
}

Complex fundamental_derivative_radial(const FundamentalSolution& fs, double rho) {
    if (!(rho > 0.0)) throw SingularityError("fundamental solution: rho must be positive");
    if (fs.kind == Kind::laplace)
        return std::pow(rho, 1.0 - fs.n) / sphere_measure(fs.n);
    double nu = 0.5 * (fs.n - 2);
    Complex k = fs.k;
    Constants c = constants(fs.n, k);
    double rnu = std::pow(rho, -nu);
    Complex d = -k * c.C_n * rnu * hankel1(nu + 1.0, k * rho);
    if (fs.kind == Kind::helmholtz_general && fs.a_n != c.a_n)
        d += (fs.a_n - c.a_n) * pow_complex(k, nu) * (-k) * rnu *
             bessel_j(nu + 1.0, k * rho);
    return d;
}

Complex fundamental_second_derivative_radial(const FundamentalSolution& fs, double rho) {
    if (!(rho > 0.0)) throw SingularityError("fundamental solution: rho must be positive");
    if (fs.kind == Kind::laplace)
        return (1.0 - fs.n) * std::pow(rho, -double(fs.n)) / sphere_measure(fs.n);
    double nu = 0.5 * (fs.n - 2);
    Complex k = fs.k;
    Constants c = constants(fs.n, k);
    double rnu = std::pow(rho, -nu);
    Complex d = -k * c.C_n * rnu / rho * hankel1(nu + 1.0, k * rho) +
                k * k * c.C_n * rnu * hankel1(nu + 2.0, k * rho);
    if (fs.kind == Kind::helmholtz_general && fs.a_n != c.a_n) {
        Complex extra = pow_complex(k, nu) * (fs.a_n - c.a_n);
        d += extra * (-k * rnu / rho * bessel_j(nu + 1.0, k * rho) +
                      k * k * rnu * bessel_j(nu + 2.0, k * rho));
    }
    return d;
}

std::vector<Complex> fundamental_gradient(const FundamentalSolution& fs,
                                          std::span<const double> x) {
    if (int(x.size()) != fs.n)
        throw DomainError("fundamental solution: point dimension mismatch");
    double rho2 = 0.0;
    for (double xi : x) rho2 += xi * xi;
    if (rho2 == 0.0) throw SingularityError("fundamental solution: gradient at the origin");
    double rho = std::sqrt(rho2);
    Complex d = fundamental_derivative_radial(fs, rho);
    std::vector<Complex> g(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) g[i] = d * x[i] / rho;
    return g;
}

} // namespace hbie::specfun
