// Copyright (c) 2026 the hbie authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HBIE_LAYERPOT_HPP
#define HBIE_LAYERPOT_HPP

#include <Eigen/Dense>
#include <memory>

#include "hbie/geometry.hpp"
#include "hbie/specfun.hpp"

namespace hbie::layerpot {

using Eigen::MatrixXcd;
using Eigen::Vector2d;
using Eigen::VectorXcd;
using geometry::Boundary;
using specfun::FundamentalSolution;

enum class OperatorKind {
    single_layer,        // V
    double_layer,        // W
    adjoint_double_layer // W^t, the quadrature-weighted transpose of W
};

/// Dense collocation realization of a boundary integral operator.
///
/// Same-component blocks use the periodic log-splitting quadrature
/// K(t,s) = K1(t,s) log(4 sin^2((t-s)/2)) + K2(t,s); cross-component blocks
/// are smooth and use the plain trapezoid rule.
struct NystromOperator {
    OperatorKind kind;
    FundamentalSolution fs;
    std::shared_ptr<const Boundary> boundary;
    MatrixXcd matrix;

    VectorXcd apply(const VectorXcd& density) const { return matrix * density; }
};

NystromOperator assemble(OperatorKind kind, const FundamentalSolution& fs,
                         std::shared_ptr<const Boundary> boundary);

enum class Representation { single_layer, double_layer };
enum class Side { interior, exterior };

/// A layer-potential field with a nodal density, evaluated off the boundary.
class SolutionField {
public:
    SolutionField(FundamentalSolution fs, std::shared_ptr<const Boundary> boundary,
                  Representation rep, Side side, VectorXcd density);

    /// Value at x.  Throws NearBoundaryError inside the near band and
    /// DomainError when x lies on the wrong side for this field.
    Complex value(const Vector2d& x) const;
    /// Gradient at x, same access rules.
    Eigen::Vector2cd gradient(const Vector2d& x) const;

    Side side() const { return side_; }
    Representation representation() const { return rep_; }
    const VectorXcd& density() const { return density_; }
    const FundamentalSolution& kernel() const { return fs_; }
    const std::shared_ptr<const Boundary>& boundary() const { return boundary_; }

private:
    FundamentalSolution fs_;
    std::shared_ptr<const Boundary> boundary_;
    Representation rep_;
    Side side_;
    VectorXcd density_;
};

/// Result of the boundary-limit check of the double layer at one node.
struct JumpCheck {
    Complex w_plus;      // extrapolated limit from the enclosed side
    Complex w_minus;     // extrapolated limit from the complement side
    Complex w_boundary;  // on-boundary operator value (W mu) at the node
    double err_plus;     // |w_plus - (+1/2 mu + W mu)|
    double err_minus;    // |w_minus - (-1/2 mu + W mu)|
};

/// Verify the double-layer jump relation at a boundary node by extrapolating
/// the off-boundary field along the normal from both sides.
///
/// op must be a double_layer operator; the extrapolation evaluates the field
/// on refined nodes (trigonometric upsampling of density and geometry), with
/// offsets h / 2^j, j = 0..5, h = 4 grid spacings, combined by Neville
/// extrapolation to the boundary.
JumpCheck jump_check(const NystromOperator& op, const VectorXcd& mu, int node);

/// Same check at several nodes, sharing the refined evaluation data.
std::vector<JumpCheck> jump_check_batch(const NystromOperator& op, const VectorXcd& mu,
                                        const std::vector<int>& nodes);

/// Boundary limit of the normal derivative of a field at a node, by the same
/// refined-evaluation extrapolation from the given side.
Complex normal_derivative_limit(const SolutionField& field, int node);

/// Trigonometric interpolation of per-component nodal data onto a grid
/// refined by an integer factor.
VectorXcd upsample_periodic(const VectorXcd& values, int factor);

namespace detail {

/// Refined copy of a boundary for near-boundary field evaluation: exact
/// geometry at factor-times-finer equispaced parameters, densities upsampled
/// by trigonometric interpolation.
class FineEvaluator {
public:
    FineEvaluator(const Boundary& boundary, const FundamentalSolution& fs,
                  Representation rep, const VectorXcd& density, int factor);

    Complex value(const Vector2d& x) const;
    Eigen::Vector2cd gradient(const Vector2d& x) const;

private:
    FundamentalSolution fs_;
    Representation rep_;
    std::vector<Vector2d> nodes_, normals_;
    std::vector<double> weights_;
    VectorXcd density_;
};

} // namespace detail

} // namespace hbie::layerpot

#endif
