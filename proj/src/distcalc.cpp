// Copyright (c) 2026 the hbie authors
// SPDX-License-Identifier: Apache-2.0

#include "hbie/distcalc.hpp"

#include <cmath>

namespace hbie::distcalc {

using layerpot::OperatorKind;
using layerpot::Representation;
using specfun::FundamentalSolution;

SchauderMinusOne SchauderMinusOne::zero(const AreaQuadrature& aq, const Boundary& b) {
    SchauderMinusOne f;
    long na = aq.weights.size();
    f.f0_area = VectorXcd::Zero(na);
    f.f1_area = VectorXcd::Zero(na);
    f.f2_area = VectorXcd::Zero(na);
    f.f1_bnd = VectorXcd::Zero(b.total_size());
    f.f2_bnd = VectorXcd::Zero(b.total_size());
    return f;
}

DensityPair DensityPair::classical(VectorXcd mu0_) {
    DensityPair g;
    g.mu1 = VectorXcd::Zero(mu0_.size());
    g.mu0 = std::move(mu0_);
    return g;
}

DtNOperator::DtNOperator(std::shared_ptr<const Boundary> boundary)
    : boundary_(std::move(boundary)) {
    if (!boundary_) throw DomainError("dtn: null boundary");
    const Boundary& b = *boundary_;
    const int n = b.total_size();
    auto fs = FundamentalSolution::laplace(2);

    MatrixXd V = layerpot::assemble(OperatorKind::single_layer, fs, boundary_)
                     .matrix.real();
    MatrixXd Wt = layerpot::assemble(OperatorKind::adjoint_double_layer, fs, boundary_)
                      .matrix.real();
    neumann_trace_ = Wt - 0.5 * MatrixXd::Identity(n, n);

    // augmented first-kind system [V 1; w^T 0] removes the capacity kernel
    MatrixXd M = MatrixXd::Zero(n + 1, n + 1);
    M.topLeftCorner(n, n) = V;
    M.topRightCorner(n, 1).setOnes();
    M.bottomLeftCorner(1, n) = b.weights().transpose();
    augmented_lu_.compute(M);
    if (augmented_lu_.rcond() < 1e-14)
        throw NumericalError("dtn: augmented single-layer system is singular");

    // DtN = (-1/2 I + W^t) composed with the solve v -> sigma
    MatrixXd rhs = MatrixXd::Zero(n + 1, n);
    rhs.topLeftCorner(n, n).setIdentity();
    MatrixXd sol = augmented_lu_.solve(rhs);
    dtn_ = neumann_trace_ * sol.topLeftCorner(n, n);
}

VectorXcd DtNOperator::apply(const VectorXcd& v) const {
    Eigen::VectorXd re = dtn_ * v.real();
    Eigen::VectorXd im = dtn_ * v.imag();
    VectorXcd out(v.size());
    out.real() = re;
    out.imag() = im;
    return out;
}

std::pair<VectorXcd, Complex> DtNOperator::extension_density(const VectorXcd& v) const {
    const int n = boundary_->total_size();
    if (v.size() != n) throw DomainError("dtn: trace size mismatch");
    Eigen::VectorXd rhs_re(n + 1), rhs_im(n + 1);
    rhs_re << v.real(), 0.0;
    rhs_im << v.imag(), 0.0;
    Eigen::VectorXd sr = augmented_lu_.solve(rhs_re);
    Eigen::VectorXd si = augmented_lu_.solve(rhs_im);
    VectorXcd sigma(n);
    sigma.real() = sr.head(n);
    sigma.imag() = si.head(n);
    return {sigma, Complex(sr[n], si[n])};
}

void DtNOperator::extend(const VectorXcd& v, const std::vector<Vector2d>& points,
                         VectorXcd& values, VectorXcd& grad1, VectorXcd& grad2) const {
    auto [sigma, c] = extension_density(v);
    const Boundary& b = *boundary_;

    // refinement factor from the closest evaluation point
    double dmin = std::numeric_limits<double>::max();
    for (const auto& p : points)
        for (int i = 0; i < b.total_size(); ++i)
            dmin = std::min(dmin, (p - b.node(i)).norm());
    int factor = 1;
    for (int c2 = 0; c2 < b.num_components(); ++c2) {
        const auto& comp = b.component(c2);
        double need = 40.0 * comp.max_speed() / (std::max(dmin, 1e-6) * comp.size());
        while (factor < need && factor < 256) factor *= 2;
    }

    layerpot::detail::FineEvaluator fine(b, FundamentalSolution::laplace(2),
                                         Representation::single_layer, sigma, factor);
    const long m = long(points.size());
    values.resize(m);
    grad1.resize(m);
    grad2.resize(m);
    for (long j = 0; j < m; ++j) {
        values[j] = fine.value(points[std::size_t(j)]) + c;
        auto g = fine.gradient(points[std::size_t(j)]);
        grad1[j] = g[0];
        grad2[j] = g[1];
    }
}

DtNOperator build_dtn(std::shared_ptr<const Boundary> boundary) {
    return DtNOperator(std::move(boundary));
}

Complex e_sharp_pair(const SchauderMinusOne& f, const SampledTestFunction& v,
                     const Boundary& b, const AreaQuadrature& aq) {
    const long na = aq.weights.size();
    const int nb = b.total_size();
    if (f.f0_area.size() != na || f.f1_area.size() != na || f.f2_area.size() != na ||
        v.val_area.size() != na || v.grad1_area.size() != na ||
        v.grad2_area.size() != na)
        throw DomainError("e_sharp_pair: area sampling grids do not match");
    if (f.f1_bnd.size() != nb || f.f2_bnd.size() != nb || v.val_bnd.size() != nb)
        throw DomainError("e_sharp_pair: boundary sampling grids do not match");
    Complex s = 0.0;
    for (long j = 0; j < na; ++j)
        s += aq.weights[j] *
             (f.f0_area[j] * v.val_area[j] - f.f1_area[j] * v.grad1_area[j] -
              f.f2_area[j] * v.grad2_area[j]);
    for (int i = 0; i < nb; ++i) {
        const auto& nu = b.normal(i);
        s += b.weight(i) * (nu.x() * f.f1_bnd[i] + nu.y() * f.f2_bnd[i]) * v.val_bnd[i];
    }
    return s;
}

Complex pair_density(const DensityPair& g, const VectorXcd& v, const DtNOperator& dtn,
                     const Boundary& b) {
    const int n = b.total_size();
    if (g.mu0.size() != n || g.mu1.size() != n || v.size() != n)
        throw DomainError("pair_density: size mismatch");
    VectorXcd dv = dtn.apply(v);
    Complex s = 0.0;
    for (int i = 0; i < n; ++i)
        s += b.weight(i) * (g.mu0[i] * v[i] + g.mu1[i] * dv[i]);
    return s;
}

VectorXcd lower_density(const DensityPair& g, const DtNOperator& dtn) {
    const Boundary& b = dtn.boundary();
    const int n = b.total_size();
    if (g.mu0.size() != n || g.mu1.size() != n)
        throw DomainError("lower_density: size mismatch");
    Eigen::VectorXd w = b.weights();
    Eigen::VectorXd re = w.cwiseInverse().asDiagonal() * dtn.matrix().transpose() *
                         (w.asDiagonal() * Eigen::VectorXd(g.mu1.real()));
    Eigen::VectorXd im = w.cwiseInverse().asDiagonal() * dtn.matrix().transpose() *
                         (w.asDiagonal() * Eigen::VectorXd(g.mu1.imag()));
    VectorXcd out = g.mu0;
    out.real() += re;
    out.imag() += im;
    return out;
}

Complex dist_normal_derivative(const VectorXcd& u_bnd, const SchauderMinusOne& lap_u,
                               const VectorXcd& v_bnd, const DtNOperator& dtn,
                               const Boundary& b, const AreaQuadrature& aq) {
    const int n = b.total_size();
    if (u_bnd.size() != n || v_bnd.size() != n)
        throw DomainError("dist_normal_derivative: size mismatch");
    VectorXcd dv = dtn.apply(v_bnd);
    Complex s = 0.0;
    for (int i = 0; i < n; ++i) s += b.weight(i) * u_bnd[i] * dv[i];

    bool lap_zero = lap_u.f0_area.isZero(0.0) && lap_u.f1_area.isZero(0.0) &&
                    lap_u.f2_area.isZero(0.0) && lap_u.f1_bnd.isZero(0.0) &&
                    lap_u.f2_bnd.isZero(0.0);
    if (!lap_zero) {
        SampledTestFunction gv;
        dtn.extend(v_bnd, aq.points, gv.val_area, gv.grad1_area, gv.grad2_area);
        gv.val_bnd = v_bnd; // the extension's trace is the data itself
        s += e_sharp_pair(lap_u, gv, b, aq);
    }
    return s;
}

} // namespace hbie::distcalc
