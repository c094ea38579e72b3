// Copyright (c) 2026 the hbie authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HBIE_DISTCALC_HPP
#define HBIE_DISTCALC_HPP

#include <Eigen/Dense>
#include <memory>

#include "hbie/geometry.hpp"
#include "hbie/layerpot.hpp"

namespace hbie::distcalc {

using Eigen::MatrixXd;
using Eigen::Vector2d;
using Eigen::VectorXcd;
using geometry::AreaQuadrature;
using geometry::Boundary;

/// A distribution f = f0 + d/dx1 f1 + d/dx2 f2 with the component functions
/// sampled at the area-quadrature points and at the boundary nodes.
///
/// The Holder exponent of the underlying function classes is analytic
/// metadata only; nothing in this module consumes it.
struct SchauderMinusOne {
    VectorXcd f0_area, f1_area, f2_area;
    VectorXcd f1_bnd, f2_bnd;

    static SchauderMinusOne zero(const AreaQuadrature& aq, const Boundary& b);
};

/// A boundary functional represented by the pair (mu0, mu1): its action on a
/// test function v is  int mu0 v dsigma + int mu1 (DtN v) dsigma.
struct DensityPair {
    VectorXcd mu0, mu1;

    static DensityPair classical(VectorXcd mu0_);
};

/// Test data for the extension pairing: values and gradients at the area
/// quadrature points plus values at the boundary nodes.
struct SampledTestFunction {
    VectorXcd val_area;
    VectorXcd grad1_area, grad2_area;
    VectorXcd val_bnd;
};

/// Dirichlet-to-Neumann map of the Laplace operator on a boundary, built
/// from the single-layer ansatz u = V[sigma] + c with the rank-one
/// augmentation (extra constant unknown, zero-mean constraint) that removes
/// the logarithmic-capacity degeneracy.  Also provides the harmonic
/// extension itself for interior evaluation.
class DtNOperator {
public:
    explicit DtNOperator(std::shared_ptr<const Boundary> boundary);

    const MatrixXd& matrix() const { return dtn_; }
    const Boundary& boundary() const { return *boundary_; }
    const std::shared_ptr<const Boundary>& boundary_ptr() const { return boundary_; }

    Eigen::VectorXd apply(const Eigen::VectorXd& v) const { return dtn_ * v; }
    VectorXcd apply(const VectorXcd& v) const;

    /// Density and additive constant of the harmonic extension of v.
    std::pair<VectorXcd, Complex> extension_density(const VectorXcd& v) const;

    /// Harmonic extension of nodal data v evaluated at interior points,
    /// with gradients.  Uses refined-boundary evaluation so that points close
    /// to the boundary (one grid spacing and beyond) stay accurate.
    void extend(const VectorXcd& v, const std::vector<Vector2d>& points,
                VectorXcd& values, VectorXcd& grad1, VectorXcd& grad2) const;

private:
    std::shared_ptr<const Boundary> boundary_;
    MatrixXd dtn_;
    Eigen::PartialPivLU<MatrixXd> augmented_lu_; // [V 1; w^T 0]
    MatrixXd neumann_trace_;                     // -1/2 I + W^t (Laplace)
};

DtNOperator build_dtn(std::shared_ptr<const Boundary> boundary);

/// Extension pairing <E f, v> = int f0 v + int_bnd (nu1 f1 + nu2 f2) v
///                              - int (f1 dv/dx1 + f2 dv/dx2).
Complex e_sharp_pair(const SchauderMinusOne& f, const SampledTestFunction& v,
                     const Boundary& b, const AreaQuadrature& aq);

/// Action of the density pair on nodal test values.
Complex pair_density(const DensityPair& g, const VectorXcd& v, const DtNOperator& dtn,
                     const Boundary& b);

/// Nodal right-hand side h with  sum w_i h_i v_i = <g, v>  for every v.
VectorXcd lower_density(const DensityPair& g, const DtNOperator& dtn);

/// Distributional normal derivative paired against nodal test values:
/// <d_nu u, v> = int u (DtN v) dsigma + <E[lap_u], G[v]>, where G[v] is the
/// harmonic extension of v.
Complex dist_normal_derivative(const VectorXcd& u_bnd, const SchauderMinusOne& lap_u,
                               const VectorXcd& v_bnd, const DtNOperator& dtn,
                               const Boundary& b, const AreaQuadrature& aq);

} // namespace hbie::distcalc

#endif
