// Copyright (c) 2026 the hbie authors
// SPDX-License-Identifier: Apache-2.0

#include "hbie/solver.hpp"

#include <Eigen/SVD>
#include <cmath>
#include <cstdlib>
#include <future>

namespace hbie::solver {

using geometry::Location;
using layerpot::OperatorKind;
using layerpot::Representation;
using specfun::FundamentalSolution;

namespace {

Eigen::MatrixXcd system_matrix(const std::shared_ptr<const Boundary>& b, Side side,
                               Complex k) {
    auto fs = FundamentalSolution::radiating(2, k);
    auto Wt = layerpot::assemble(OperatorKind::adjoint_double_layer, fs, b);
    double sgn = side == Side::interior ? -0.5 : 0.5;
    return Wt.matrix +
           sgn * Eigen::MatrixXcd::Identity(b->total_size(), b->total_size());
}

int scan_threads() {
    if (const char* env = std::getenv("HBIE_THREADS")) {
        int t = std::atoi(env);
        if (t > 0) return t;
    }
    return 1;
}

Complex field_kernel(const FundamentalSolution& fs, const Vector2d& x,
                     const Vector2d& y) {
    return fundamental_value_radial(fs, (x - y).norm());
}

Complex field_kernel_dnu_y(const FundamentalSolution& fs, const Vector2d& x,
                           const Vector2d& y, const Vector2d& nu_y) {
    Vector2d d = x - y;
    double r = d.norm();
    return -specfun::fundamental_derivative_radial(fs, r) * d.dot(nu_y) / r;
}

} // namespace

SolveReport solve_neumann(const NeumannProblem& p, const SolverOptions& opt) {
    if (!p.boundary) throw DomainError("solve: null boundary");
    const Boundary& b = *p.boundary;
    const int n = b.total_size();
    if (p.data.mu0.size() != n || p.data.mu1.size() != n)
        throw DomainError("solve: data size mismatch");
    if (!p.data.mu0.allFinite() || !p.data.mu1.allFinite())
        throw DomainError("solve: data not finite");

    VectorXcd g;
    if (p.data.mu1.isZero(0.0)) {
        g = p.data.mu0;
    } else {
        DtNOperator dtn(p.boundary);
        g = distcalc::lower_density(p.data, dtn);
    }

    Eigen::MatrixXcd A = system_matrix(p.boundary, p.side, p.k);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    double smax = sv(0), smin = sv(n - 1);

    VectorXcd phi;
    double defect = 0.0;
    bool lsq = smin < opt.dip_threshold * smax;
    if (!lsq) {
        phi = svd.solve(g);
    } else {
        // least-squares through the well-conditioned part of the spectrum;
        // the datum must be orthogonal to the numerical cokernel
        VectorXcd ug = svd.matrixU().adjoint() * g;
        double gnorm = g.norm();
        phi = VectorXcd::Zero(n);
        double defect2 = 0.0;
        for (int i = 0; i < n; ++i) {
            if (sv(i) >= opt.dip_threshold * smax)
                phi += (ug(i) / sv(i)) * svd.matrixV().col(i);
            else
                defect2 += std::norm(ug(i));
        }
        defect = gnorm > 0.0 ? std::sqrt(defect2) / gnorm : 0.0;
        if (defect > opt.defect_tolerance)
            throw IncompatibleDataError(
                "solve: datum has a component on the cokernel at a breakdown wavenumber",
                defect);
    }

    double residual = (A * phi - g).cwiseAbs().maxCoeff();
    SolutionField field(FundamentalSolution::radiating(2, p.k), p.boundary,
                        Representation::single_layer, p.side, phi);
    return {std::move(phi), std::move(field), smin, smax, defect, residual, lsq};
}

OperatorConditioning operator_conditioning(const std::shared_ptr<const Boundary>& b,
                                           Side side, Complex k) {
    Eigen::MatrixXcd A = system_matrix(b, side, k);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(A);
    const auto& sv = svd.singularValues();
    return {sv(sv.size() - 1), sv(0)};
}

std::vector<std::pair<double, double>> eigen_scan(
    const std::shared_ptr<const Boundary>& b, Side side, double k_min, double k_max,
    int samples) {
    if (!(k_min > 0.0) || !(k_max > k_min) || samples < 2)
        throw DomainError("eigen_scan: need 0 < k_min < k_max and >= 2 samples");
    std::vector<std::pair<double, double>> out(samples);
    int nt = std::min(scan_threads(), samples);
    auto work = [&](int t) {
        for (int i = t; i < samples; i += nt) {
            double k = k_min + (k_max - k_min) * i / (samples - 1);
            out[i] = {k, operator_conditioning(b, side, k).sigma_min};
        }
    };
    if (nt == 1) {
        work(0);
    } else {
        std::vector<std::future<void>> fut;
        for (int t = 0; t < nt; ++t) fut.push_back(std::async(std::launch::async, work, t));
        for (auto& f : fut) f.get();
    }
    return out;
}

double refine_dip(const std::shared_ptr<const Boundary>& b, Side side, double k_lo,
                  double k_hi, double tol) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double a = k_lo, c = k_hi;
    double x1 = c - gr * (c - a), x2 = a + gr * (c - a);
    double f1 = operator_conditioning(b, side, x1).sigma_min;
    double f2 = operator_conditioning(b, side, x2).sigma_min;
    while (c - a > tol) {
        if (f1 < f2) {
            c = x2;
            x2 = x1;
            f2 = f1;
            x1 = c - gr * (c - a);
            f1 = operator_conditioning(b, side, x1).sigma_min;
        } else {
            a = x1;
            x1 = x2;
            f1 = f2;
            x2 = a + gr * (c - a);
            f2 = operator_conditioning(b, side, x2).sigma_min;
        }
    }
    return 0.5 * (a + c);
}

std::vector<double> detect_dips(const std::shared_ptr<const Boundary>& b, Side side,
                                const std::vector<std::pair<double, double>>& scan,
                                double relative_threshold) {
    std::vector<double> dips;
    if (scan.size() < 3) return dips;
    double top = 0.0;
    for (const auto& s : scan) top = std::max(top, s.second);
    for (std::size_t i = 1; i + 1 < scan.size(); ++i) {
        if (scan[i].second <= scan[i - 1].second && scan[i].second <= scan[i + 1].second &&
            scan[i].second < relative_threshold * top)
            dips.push_back(refine_dip(b, side, scan[i - 1].first, scan[i + 1].first));
    }
    return dips;
}

Eigenfunction neumann_eigenfunction(const std::shared_ptr<const Boundary>& b, Complex k,
                                    Side side, const SolverOptions& opt) {
    auto fs = FundamentalSolution::radiating(2, k);
    auto W = layerpot::assemble(OperatorKind::double_layer, fs, b);
    const int n = b->total_size();
    double sgn = side == Side::interior ? -0.5 : 0.5;
    Eigen::MatrixXcd A = W.matrix + sgn * Eigen::MatrixXcd::Identity(n, n);
    Eigen::BDCSVD<Eigen::MatrixXcd> svd(A, Eigen::ComputeThinU | Eigen::ComputeThinV);
    const auto& sv = svd.singularValues();
    if (sv(n - 1) >= opt.dip_threshold * sv(0))
        throw DomainError("eigenfunction: k is not a breakdown wavenumber here");
    VectorXcd omega = svd.matrixV().col(n - 1);
    VectorXcd density = side == Side::interior ? omega : VectorXcd(-omega);
    return {omega,
            SolutionField(fs, b, Representation::double_layer, side, density),
            sv(n - 1)};
}

std::vector<double> green_identity_residual(const FieldData& u,
                                            const std::shared_ptr<const Boundary>& b,
                                            Complex k, Side side,
                                            const std::vector<Vector2d>& probes) {
    auto fs = FundamentalSolution::radiating(2, k);
    const Boundary& bd = *b;
    const int n = bd.total_size();
    // boundary data of u with respect to the outward normal of the domain
    VectorXcd trace(n), dnu(n);
    for (int i = 0; i < n; ++i) {
        trace[i] = u.value(bd.node(i));
        auto g = u.gradient(bd.node(i));
        dnu[i] = g[0] * bd.normal(i).x() + g[1] * bd.normal(i).y();
    }
    double sgn = side == Side::interior ? 1.0 : -1.0; // nu_{complement} = -nu
    std::vector<double> res;
    res.reserve(probes.size());
    for (const auto& x : probes) {
        Location loc = locate(bd, x);
        if (loc == Location::near_boundary)
            throw NearBoundaryError("green identity: probe in the near-boundary band");
        Complex lhs = 0.0;
        for (int i = 0; i < n; ++i) {
            lhs += sgn * field_kernel_dnu_y(fs, x, bd.node(i), bd.normal(i)) * trace[i] *
                   bd.weight(i);
            lhs -= sgn * field_kernel(fs, x, bd.node(i)) * dnu[i] * bd.weight(i);
        }
        bool own_side = (loc == Location::interior) == (side == Side::interior);
        Complex expect = own_side ? u.value(x) : Complex(0.0);
        res.push_back(std::abs(lhs - expect));
    }
    return res;
}

std::vector<double> green_identity_residual(const SolveReport& report,
                                            const NeumannProblem& p,
                                            const std::vector<Vector2d>& probes) {
    auto fs = FundamentalSolution::radiating(2, p.k);
    const Boundary& bd = *p.boundary;
    const int n = bd.total_size();
    auto V = layerpot::assemble(OperatorKind::single_layer, fs, p.boundary);
    VectorXcd trace = V.apply(report.phi);
    // the solved equation carries the normal derivative of the field
    Eigen::MatrixXcd A = system_matrix(p.boundary, p.side, p.k);
    VectorXcd dnu = A * report.phi;

    double sgn = p.side == Side::interior ? 1.0 : -1.0;
    std::vector<double> res;
    res.reserve(probes.size());
    for (const auto& x : probes) {
        Location loc = locate(bd, x);
        if (loc == Location::near_boundary)
            throw NearBoundaryError("green identity: probe in the near-boundary band");
        Complex lhs = 0.0;
        for (int i = 0; i < n; ++i) {
            lhs += sgn * field_kernel_dnu_y(fs, x, bd.node(i), bd.normal(i)) * trace[i] *
                   bd.weight(i);
            lhs -= sgn * field_kernel(fs, x, bd.node(i)) * dnu[i] * bd.weight(i);
        }
        bool own_side = (loc == Location::interior) == (p.side == Side::interior);
        Complex expect = own_side ? report.field.value(x) : Complex(0.0);
        res.push_back(std::abs(lhs - expect));
    }
    return res;
}

RadiationReport radiation_check(const std::function<Complex(Vector2d)>& value,
                                const std::function<Eigen::Vector2cd(Vector2d)>& gradient,
                                Complex k, const std::vector<double>& radii,
                                int directions) {
    if (directions < 4) throw DomainError("radiation_check: need >= 4 directions");
    RadiationReport rep;
    for (double R : radii) {
        double worst = 0.0;
        for (int j = 0; j < directions; ++j) {
            double th = 2.0 * pi * j / directions;
            Vector2d dir{std::cos(th), std::sin(th)};
            Vector2d x = R * dir;
            auto g = gradient(x);
            Complex dr = g[0] * dir.x() + g[1] * dir.y();
            worst = std::max(worst, std::abs(dr - iu * k * value(x)));
        }
        rep.samples.push_back({R, std::pow(R, 1.5) * std::exp(k.imag() * R) * worst});
    }
    double top = 0.0;
    for (const auto& s : rep.samples) top = std::max(top, s.q);
    double floor = 1e-12 * top;
    rep.pass = true;
    for (std::size_t j = 0; j + 1 < rep.samples.size(); ++j)
        if (rep.samples[j + 1].q > 1.2 * std::max(rep.samples[j].q, floor))
            rep.pass = false;
    return rep;
}

double second_green_residual_interior(const FieldData& u,
                                      const std::function<Complex(Vector2d)>& lap_u,
                                      const FieldData& v,
                                      const std::function<Complex(Vector2d)>& lap_v,
                                      const std::shared_ptr<const Boundary>& b,
                                      const DtNOperator& dtn, const AreaQuadrature& aq) {
    const Boundary& bd = *b;
    const int n = bd.total_size();
    const long na = aq.weights.size();

    VectorXcd ub(n), vb(n);
    Complex bnd_v_u = 0.0;
    for (int i = 0; i < n; ++i) {
        ub[i] = u.value(bd.node(i));
        vb[i] = v.value(bd.node(i));
        auto gv = v.gradient(bd.node(i));
        Complex dnv = gv[0] * bd.normal(i).x() + gv[1] * bd.normal(i).y();
        bnd_v_u += bd.weight(i) * dnv * ub[i];
    }

    distcalc::SchauderMinusOne f = distcalc::SchauderMinusOne::zero(aq, bd);
    Complex vol_u_lapv = 0.0;
    distcalc::SampledTestFunction vt;
    vt.val_area.resize(na);
    vt.grad1_area.resize(na);
    vt.grad2_area.resize(na);
    vt.val_bnd = vb;
    for (long j = 0; j < na; ++j) {
        const auto& q = aq.points[std::size_t(j)];
        f.f0_area[j] = lap_u(q);
        vt.val_area[j] = v.value(q);
        auto gv = v.gradient(q);
        vt.grad1_area[j] = gv[0];
        vt.grad2_area[j] = gv[1];
        vol_u_lapv += aq.weights[j] * u.value(q) * lap_v(q);
    }

    Complex lhs = distcalc::e_sharp_pair(f, vt, bd, aq) - vol_u_lapv;
    Complex dist = distcalc::dist_normal_derivative(ub, f, vb, dtn, bd, aq);
    Complex rhs = dist - bnd_v_u;
    return std::abs(lhs - rhs);
}

double second_green_residual_exterior(const FieldData& u, const FieldData& v,
                                      const std::shared_ptr<const Boundary>& b) {
    const Boundary& bd = *b;
    Complex s = 0.0;
    for (int i = 0; i < bd.total_size(); ++i) {
        auto x = bd.node(i);
        auto nu = bd.normal(i); // outward of the domain; complement normal is -nu
        auto gu = u.gradient(x);
        auto gv = v.gradient(x);
        Complex dnu_u = -(gu[0] * nu.x() + gu[1] * nu.y());
        Complex dnu_v = -(gv[0] * nu.x() + gv[1] * nu.y());
        s += bd.weight(i) * (dnu_u * v.value(x) - dnu_v * u.value(x));
    }
    return std::abs(s);
}

} // namespace hbie::solver
