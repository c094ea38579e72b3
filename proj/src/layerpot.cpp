// Copyright (c) 2026 the hbie authors
// SPDX-License-Identifier: Apache-2.0

#include "hbie/layerpot.hpp"

#include <cmath>

namespace hbie::layerpot {

using geometry::CurveComponent;
using geometry::Location;
using specfun::Kind;

namespace {

// Quadrature weights for the periodic log kernel: with N equispaced nodes,
//   int_0^{2pi} log(4 sin^2((t_i - s)/2)) f(s) ds ~ sum_j R[(i-j) mod N] f(t_j),
// exact for trigonometric polynomials of degree <= N/2.
std::vector<double> log_weights(int n) {
    std::vector<double> r(n);
    for (int d = 0; d < n; ++d) {
        double s = 0.0;
        for (int m = 1; m < n / 2; ++m) s += std::cos(2.0 * pi * m * d / n) / m;
        r[d] = -(4.0 * pi / n) * s - (4.0 * pi / (n * n)) * std::cos(pi * d);
    }
    return r;
}

double log4sin2(double dt) {
    double s = 2.0 * std::sin(0.5 * dt);
    return std::log(s * s);
}

struct HelmholtzEntry {
    Complex value;   // kernel value S(x-y) resp. dS/dnu_y (without speed)
    Complex log_co;  // coefficient of log(4 sin^2((t-s)/2)) (without speed)
};

// Single-layer kernel S(|x-y|) split via the J/Y decomposition of H1.
HelmholtzEntry single_layer_split(Complex k, Complex C2, double r) {
    Complex w = k * k * r * r;
    Complex J0 = specfun::j_sharp(0.0, w);
    Complex Y0 = (2.0 / pi) * (std::log(k * r) - std::log(2.0) + euler_gamma) * J0 +
                 specfun::n_sharp(0, w);
    HelmholtzEntry e;
    e.value = C2 * (J0 + iu * Y0);
    e.log_co = iu * C2 / pi * J0;
    return e;
}

// Double-layer kernel k C2 H1(kr) (x-y).nu(y) / r, same splitting.
HelmholtzEntry double_layer_split(Complex k, Complex C2, double r, double dnu) {
    Complex w = k * k * r * r;
    Complex J1s = specfun::j_sharp(1.0, w); // J1(z)/z with z = kr
    Complex kr = k * r;
    Complex J1 = kr * J1s;
    Complex Y1 = (2.0 / pi) * (std::log(kr) - std::log(2.0) + euler_gamma) * J1 +
                 specfun::n_sharp(1, w) / kr;
    HelmholtzEntry e;
    e.value = k * C2 * (J1 + iu * Y1) * dnu / r;
    e.log_co = iu * k * k * C2 / pi * J1s * dnu;
    return e;
}

double component_diameter(const CurveComponent& c) {
    double lo_x = 1e300, hi_x = -1e300, lo_y = 1e300, hi_y = -1e300;
    for (int i = 0; i < c.size(); ++i) {
        lo_x = std::min(lo_x, c.node(i).x());
        hi_x = std::max(hi_x, c.node(i).x());
        lo_y = std::min(lo_y, c.node(i).y());
        hi_y = std::max(hi_y, c.node(i).y());
    }
    return std::hypot(hi_x - lo_x, hi_y - lo_y);
}

} // namespace

NystromOperator assemble(OperatorKind kind, const FundamentalSolution& fs,
                         std::shared_ptr<const Boundary> boundary) {
    if (!boundary) throw DomainError("assemble: null boundary");
    if (fs.n != 2) throw DomainError("assemble: boundary operators are 2-D");
    if (fs.kind == Kind::helmholtz_general)
        throw DomainError("assemble: Helmholtz operators use the radiating kernel");

    const Boundary& b = *boundary;
    const bool helm = fs.kind == Kind::helmholtz_radiating;
    const Complex k = fs.k;
    const Complex C2 = helm ? specfun::constants(2, k).C_n : Complex{};

    if (helm) {
        // same-component splits evaluate the entire series at (k r)^2
        for (int c = 0; c < b.num_components(); ++c)
            if (std::abs(k) * component_diameter(b.component(c)) > 30.0)
                throw UnsupportedDomainError(
                    "assemble: |k| x component diameter exceeds the on-boundary series range");
    }

    if (kind == OperatorKind::adjoint_double_layer) {
        NystromOperator w = assemble(OperatorKind::double_layer, fs, boundary);
        Eigen::VectorXd wts = b.weights();
        NystromOperator out{kind, fs, boundary, MatrixXcd()};
        out.matrix = wts.cwiseInverse().asDiagonal() * w.matrix.transpose() *
                     wts.asDiagonal();
        return out;
    }

    const int n_total = b.total_size();
    MatrixXcd A(n_total, n_total);

    for (int ci = 0; ci < b.num_components(); ++ci) {
        const auto& compi = b.component(ci);
        int oi = b.component_offset(ci);
        for (int cj = 0; cj < b.num_components(); ++cj) {
            const auto& compj = b.component(cj);
            int oj = b.component_offset(cj);
            int nj = compj.size();
            double trap = 2.0 * pi / nj;

            if (ci != cj) {
                // distinct components: smooth kernel, plain trapezoid
                for (int i = 0; i < compi.size(); ++i) {
                    for (int j = 0; j < nj; ++j) {
                        Vector2d d = compi.node(i) - compj.node(j);
                        double r = d.norm();
                        Complex kernel;
                        if (kind == OperatorKind::single_layer) {
                            kernel = helm ? fundamental_value_radial(fs, r)
                                          : std::log(r) / (2.0 * pi);
                        } else {
                            double dnu = d.dot(compj.normal(j));
                            kernel = helm ? -specfun::fundamental_derivative_radial(fs, r) *
                                                dnu / r
                                          : -dnu / (2.0 * pi * r * r);
                        }
                        A(oi + i, oj + j) = kernel * compj.speed(j) * trap;
                    }
                }
                continue;
            }

            std::vector<double> R = log_weights(nj);
            for (int i = 0; i < nj; ++i) {
                for (int j = 0; j < nj; ++j) {
                    double spj = compj.speed(j);
                    Complex k1, k2;
                    if (i == j) {
                        if (kind == OperatorKind::single_layer) {
                            if (helm) {
                                k1 = iu * C2 / pi * spj;
                                k2 = (iu * C2 * (2.0 / pi) *
                                          (std::log(spj) + std::log(k) - std::log(2.0) +
                                           euler_gamma) +
                                      C2) *
                                     spj;
                            } else {
                                k1 = spj / (4.0 * pi);
                                k2 = std::log(spj) * spj / (2.0 * pi);
                            }
                        } else {
                            k1 = 0.0;
                            k2 = compj.curvature(j) * spj / (4.0 * pi);
                        }
                    } else {
                        double dt = compi.node_param(i) - compj.node_param(j);
                        double lg = log4sin2(dt);
                        Vector2d d = compi.node(i) - compj.node(j);
                        double r = d.norm();
                        if (kind == OperatorKind::single_layer) {
                            if (helm) {
                                auto e = single_layer_split(k, C2, r);
                                k1 = e.log_co * spj;
                                k2 = e.value * spj - k1 * lg;
                            } else {
                                k1 = spj / (4.0 * pi);
                                k2 = std::log(r) / (2.0 * pi) * spj - k1 * lg;
                            }
                        } else {
                            double dnu = d.dot(compj.normal(j));
                            if (helm) {
                                auto e = double_layer_split(k, C2, r, dnu);
                                k1 = e.log_co * spj;
                                k2 = e.value * spj - k1 * lg;
                            } else {
                                k1 = 0.0;
                                k2 = -dnu / (2.0 * pi * r * r) * spj;
                            }
                        }
                    }
                    A(oi + i, oj + j) = R[std::abs(i - j)] * k1 + trap * k2;
                }
            }
        }
    }
    return {kind, fs, boundary, std::move(A)};
}

namespace {

Complex kernel_value(const FundamentalSolution& fs, Representation rep,
                     const Vector2d& x, const Vector2d& y, const Vector2d& nu_y) {
    Vector2d d = x - y;
    double r = d.norm();
    if (rep == Representation::single_layer) return fundamental_value_radial(fs, r);
    return -specfun::fundamental_derivative_radial(fs, r) * d.dot(nu_y) / r;
}

Eigen::Vector2cd kernel_gradient(const FundamentalSolution& fs, Representation rep,
                                 const Vector2d& x, const Vector2d& y,
                                 const Vector2d& nu_y) {
    Vector2d d = x - y;
    double r = d.norm();
    Complex s1 = specfun::fundamental_derivative_radial(fs, r);
    if (rep == Representation::single_layer)
        return Eigen::Vector2cd(s1 * d.x() / r, s1 * d.y() / r);
    // gradient of -grad S(x-y) . nu(y): apply the Hessian of S to nu
    Complex s2 = specfun::fundamental_second_derivative_radial(fs, r);
    double dn = d.dot(nu_y);
    Complex radial = (s2 - s1 / r) * dn / (r * r);
    Eigen::Vector2cd g;
    g[0] = -(radial * d.x() + s1 * nu_y.x() / r);
    g[1] = -(radial * d.y() + s1 * nu_y.y() / r);
    return g;
}

} // namespace

SolutionField::SolutionField(FundamentalSolution fs,
                             std::shared_ptr<const Boundary> boundary,
                             Representation rep, Side side, VectorXcd density)
    : fs_(fs), boundary_(std::move(boundary)), rep_(rep), side_(side),
      density_(std::move(density)) {
    if (!boundary_) throw DomainError("solution field: null boundary");
    if (density_.size() != boundary_->total_size())
        throw DomainError("solution field: density size mismatch");
}

Complex SolutionField::value(const Vector2d& x) const {
    Location loc = locate(*boundary_, x);
    if (loc == Location::near_boundary)
        throw NearBoundaryError("solution field: evaluation too close to the boundary");
    if ((loc == Location::interior) != (side_ == Side::interior))
        throw DomainError("solution field: point lies on the other side");
    Complex s = 0.0;
    for (int i = 0; i < boundary_->total_size(); ++i)
        s += kernel_value(fs_, rep_, x, boundary_->node(i), boundary_->normal(i)) *
             density_[i] * boundary_->weight(i);
    return s;
}

Eigen::Vector2cd SolutionField::gradient(const Vector2d& x) const {
    Location loc = locate(*boundary_, x);
    if (loc == Location::near_boundary)
        throw NearBoundaryError("solution field: evaluation too close to the boundary");
    if ((loc == Location::interior) != (side_ == Side::interior))
        throw DomainError("solution field: point lies on the other side");
    Eigen::Vector2cd s{0.0, 0.0};
    for (int i = 0; i < boundary_->total_size(); ++i)
        s += kernel_gradient(fs_, rep_, x, boundary_->node(i), boundary_->normal(i)) *
             (density_[i] * boundary_->weight(i));
    return s;
}

VectorXcd upsample_periodic(const VectorXcd& values, int factor) {
    if (factor < 1) throw DomainError("upsample: factor must be >= 1");
    const int n = int(values.size());
    if (factor == 1) return values;
    const int nf = n * factor;
    // balanced trigonometric coefficients; the N/2 mode becomes a cosine so
    // the interpolant reproduces the nodal values
    std::vector<Complex> cm(n);
    for (int m = -n / 2 + 1; m <= n / 2; ++m) {
        Complex c = 0.0;
        Complex step = std::exp(Complex(0.0, -m * 2.0 * pi / n));
        Complex ph = 1.0;
        for (int j = 0; j < n; ++j) {
            c += values[j] * ph;
            ph *= step;
        }
        cm[(m + n) % n] = c / double(n);
    }
    VectorXcd out(nf);
    for (int l = 0; l < nf; ++l) {
        double t = 2.0 * pi * l / nf;
        Complex step = std::exp(Complex(0.0, t));
        Complex ph = std::exp(Complex(0.0, (-n / 2 + 1) * t));
        Complex s = 0.0;
        for (int m = -n / 2 + 1; m < n / 2; ++m) {
            s += cm[(m + n) % n] * ph;
            ph *= step;
        }
        s += cm[n / 2] * std::cos(0.5 * n * t);
        out[l] = s;
    }
    return out;
}

namespace detail {

FineEvaluator::FineEvaluator(const Boundary& boundary, const FundamentalSolution& fs,
                             Representation rep, const VectorXcd& density, int factor)
    : fs_(fs), rep_(rep) {
    const int total_fine = boundary.total_size() * factor;
    nodes_.reserve(total_fine);
    normals_.reserve(total_fine);
    weights_.reserve(total_fine);
    density_.resize(total_fine);
    int out = 0;
    for (int c = 0; c < boundary.num_components(); ++c) {
        const auto& comp = boundary.component(c);
        const int n = comp.size(), nf = n * factor;
        VectorXcd slice = density.segment(boundary.component_offset(c), n);
        VectorXcd fine = upsample_periodic(slice, factor);
        for (int l = 0; l < nf; ++l) {
            double t = 2.0 * pi * l / nf;
            Vector2d v = comp.velocity(t);
            double sp = v.norm();
            nodes_.push_back(comp.position(t));
            normals_.push_back(comp.normal_sign() * Vector2d(v.y(), -v.x()) / sp);
            weights_.push_back(2.0 * pi / nf * sp);
            density_[out++] = fine[l];
        }
    }
}

Complex FineEvaluator::value(const Vector2d& x) const {
    Complex s = 0.0;
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        s += kernel_value(fs_, rep_, x, nodes_[i], normals_[i]) * density_[long(i)] *
             weights_[i];
    return s;
}

Eigen::Vector2cd FineEvaluator::gradient(const Vector2d& x) const {
    Eigen::Vector2cd s{0.0, 0.0};
    for (std::size_t i = 0; i < nodes_.size(); ++i)
        s += kernel_gradient(fs_, rep_, x, nodes_[i], normals_[i]) *
             (density_[long(i)] * weights_[i]);
    return s;
}

} // namespace detail

namespace {

constexpr int jump_levels = 6;
constexpr int fine_factor = 64;

// Neville extrapolation to 0 of samples (h_j, f_j).
Complex neville_to_zero(const std::vector<double>& h, std::vector<Complex> f) {
    const int n = int(h.size());
    for (int lev = 1; lev < n; ++lev)
        for (int i = 0; i < n - lev; ++i)
            f[i] = (h[i] * f[i + 1] - h[i + lev] * f[i]) / (h[i] - h[i + lev]);
    return f[0];
}

} // namespace

namespace {

JumpCheck jump_check_at(const NystromOperator& op, const detail::FineEvaluator& fine,
                        const VectorXcd& mu, int node) {
    const Boundary& b = *op.boundary;
    int c = b.component_of(node);
    const auto& comp = b.component(c);
    int i = b.local_index(node);
    Vector2d x0 = comp.node(i);
    Vector2d nu = comp.normal(i);
    double h0 = 4.0 * 2.0 * pi * comp.speed(i) / comp.size();

    std::vector<double> hs(jump_levels);
    std::vector<Complex> inner(jump_levels), outer(jump_levels);
    for (int j = 0; j < jump_levels; ++j) {
        hs[j] = h0 / double(1 << j);
        inner[j] = fine.value(x0 - hs[j] * nu); // enclosed side
        outer[j] = fine.value(x0 + hs[j] * nu); // complement side
    }
    JumpCheck out;
    out.w_plus = neville_to_zero(hs, inner);
    out.w_minus = neville_to_zero(hs, outer);
    out.w_boundary = (op.matrix.row(node) * mu).value();
    out.err_plus = std::abs(out.w_plus - (0.5 * mu[node] + out.w_boundary));
    out.err_minus = std::abs(out.w_minus - (-0.5 * mu[node] + out.w_boundary));
    return out;
}

} // namespace

JumpCheck jump_check(const NystromOperator& op, const VectorXcd& mu, int node) {
    if (op.kind != OperatorKind::double_layer)
        throw DomainError("jump_check: needs a double-layer operator");
    const Boundary& b = *op.boundary;
    if (node < 0 || node >= b.total_size()) throw DomainError("jump_check: bad node");
    detail::FineEvaluator fine(b, op.fs, Representation::double_layer, mu, fine_factor);
    return jump_check_at(op, fine, mu, node);
}

std::vector<JumpCheck> jump_check_batch(const NystromOperator& op, const VectorXcd& mu,
                                        const std::vector<int>& nodes) {
    if (op.kind != OperatorKind::double_layer)
        throw DomainError("jump_check: needs a double-layer operator");
    const Boundary& b = *op.boundary;
    detail::FineEvaluator fine(b, op.fs, Representation::double_layer, mu, fine_factor);
    std::vector<JumpCheck> out;
    out.reserve(nodes.size());
    for (int node : nodes) {
        if (node < 0 || node >= b.total_size()) throw DomainError("jump_check: bad node");
        out.push_back(jump_check_at(op, fine, mu, node));
    }
    return out;
}

Complex normal_derivative_limit(const SolutionField& field, int node) {
    const Boundary& b = *field.boundary();
    if (node < 0 || node >= b.total_size())
        throw DomainError("normal_derivative_limit: bad node");
    detail::FineEvaluator fine(b, field.kernel(), field.representation(),
                               field.density(), fine_factor);
    int c = b.component_of(node);
    const auto& comp = b.component(c);
    int i = b.local_index(node);
    Vector2d x0 = comp.node(i);
    Vector2d nu = comp.normal(i);
    double h0 = 4.0 * 2.0 * pi * comp.speed(i) / comp.size();
    double side = field.side() == Side::interior ? -1.0 : 1.0;

    std::vector<double> hs(jump_levels);
    std::vector<Complex> g(jump_levels);
    for (int j = 0; j < jump_levels; ++j) {
        hs[j] = h0 / double(1 << j);
        Eigen::Vector2cd gr = fine.gradient(x0 + side * hs[j] * nu);
        g[j] = nu.x() * gr[0] + nu.y() * gr[1];
    }
    return neville_to_zero(hs, g);
}

} // namespace hbie::layerpot
