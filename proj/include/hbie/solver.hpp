// Copyright (c) 2026 the hbie authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HBIE_SOLVER_HPP
#define HBIE_SOLVER_HPP

#include <functional>
#include <optional>

#include "hbie/distcalc.hpp"
#include "hbie/layerpot.hpp"

namespace hbie::solver {

using distcalc::DensityPair;
using distcalc::DtNOperator;
using Eigen::Vector2d;
using Eigen::VectorXcd;
using geometry::AreaQuadrature;
using geometry::Boundary;
using layerpot::Side;
using layerpot::SolutionField;

/// Tolerances that gate the breakdown-wavenumber handling.
struct SolverOptions {
    double dip_threshold = 1e-6;     // sigma_min < dip_threshold * sigma_max
    double defect_tolerance = 1e-6;  // relative size of the incompatible part
};

struct NeumannProblem {
    Side side = Side::exterior;
    Complex k{1.0, 0.0};
    std::shared_ptr<const Boundary> boundary;
    DensityPair data;
};

struct SolveReport {
    VectorXcd phi;
    SolutionField field;
    double sigma_min = 0.0;
    double sigma_max = 0.0;
    double compatibility_defect = 0.0;
    double residual_boundary = 0.0;
    bool least_squares = false;
};

/// Solve the Neumann problem through the second-kind equation
/// (-1/2 I + W^t) phi = g (interior) or (+1/2 I + W^t) phi = g (exterior),
/// with g the nodal lowering of the density pair; the solution field is the
/// single-layer potential of phi on the requested side.
///
/// At a breakdown wavenumber (sigma_min below the dip threshold) the solve
/// falls back to a truncated-SVD least-squares solution; if the datum has a
/// component on the numerical cokernel larger than the defect tolerance an
/// IncompatibleDataError is raised.
SolveReport solve_neumann(const NeumannProblem& p, const SolverOptions& opt = {});

/// Smallest/largest singular value of the boundary operator at one k.
struct OperatorConditioning {
    double sigma_min, sigma_max;
};
OperatorConditioning operator_conditioning(const std::shared_ptr<const Boundary>& b,
                                           Side side, Complex k);

/// sigma_min(k) sampled over [k_min, k_max].
std::vector<std::pair<double, double>> eigen_scan(
    const std::shared_ptr<const Boundary>& b, Side side, double k_min, double k_max,
    int samples);

/// Local minima of a scan refined by golden-section search.
std::vector<double> detect_dips(const std::shared_ptr<const Boundary>& b, Side side,
                                const std::vector<std::pair<double, double>>& scan,
                                double relative_threshold = 0.2);

/// Golden-section refinement of sigma_min around a bracket.
double refine_dip(const std::shared_ptr<const Boundary>& b, Side side, double k_lo,
                  double k_hi, double tol = 1e-9);

/// Breakdown-wavenumber eigenfunction: the trace is the right singular vector
/// of (-+1/2 I + W) at sigma_min and the field its double layer on the side.
struct Eigenfunction {
    VectorXcd trace;
    SolutionField field;
    double sigma_min;
};
Eigenfunction neumann_eigenfunction(const std::shared_ptr<const Boundary>& b, Complex k,
                                    Side side, const SolverOptions& opt = {});

/// A closed-form field: value, gradient, and normal derivative at nodes.
struct FieldData {
    std::function<Complex(Vector2d)> value;
    std::function<Eigen::Vector2cd(Vector2d)> gradient;
};

/// Residual of the direct representation at probe points: the combination
/// double-layer(trace) - single-layer(normal derivative) must reproduce the
/// field on its own side of the boundary and vanish on the other.
std::vector<double> green_identity_residual(const FieldData& u,
                                            const std::shared_ptr<const Boundary>& b,
                                            Complex k, Side side,
                                            const std::vector<Vector2d>& probes);

/// Same residual for a solver-produced single-layer field; its boundary trace
/// and normal derivative come from the on-boundary operators.
std::vector<double> green_identity_residual(const SolveReport& report,
                                            const NeumannProblem& p,
                                            const std::vector<Vector2d>& probes);

/// One row of the far-field decay table.
struct RadiationSample {
    double radius;
    double q; // R^{(n+1)/2} e^{Im k R} max_theta |du/dr - i k u|
};
struct RadiationReport {
    std::vector<RadiationSample> samples;
    bool pass;
};

/// Weighted Sommerfeld-condition diagnostic: q(R) over the given radii with
/// the boundedness rule q(2R) <= 1.2 max(q(R), floor).
RadiationReport radiation_check(const std::function<Complex(Vector2d)>& value,
                                const std::function<Eigen::Vector2cd(Vector2d)>& gradient,
                                Complex k, const std::vector<double>& radii,
                                int directions);

/// Interior second-Green-identity residual
/// |<E[lap u], v> - int u lap v - <d_nu u, v> + int (d_nu v) u|,
/// with <d_nu u, v> computed through the distributional route.
double second_green_residual_interior(const FieldData& u,
                                      const std::function<Complex(Vector2d)>& lap_u,
                                      const FieldData& v,
                                      const std::function<Complex(Vector2d)>& lap_v,
                                      const std::shared_ptr<const Boundary>& b,
                                      const DtNOperator& dtn, const AreaQuadrature& aq);

/// Exterior radiating-pair form |<d_nu u, v> - int (d_nu v) u| (both taken
/// with the complement-side normal); vanishes for radiating solutions.
double second_green_residual_exterior(const FieldData& u, const FieldData& v,
                                      const std::shared_ptr<const Boundary>& b);

} // namespace hbie::solver

#endif
