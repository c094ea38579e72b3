// Copyright (c) 2026 the hbie authors
// SPDX-License-Identifier: Apache-2.0

#ifndef HBIE_GEOMETRY_HPP
#define HBIE_GEOMETRY_HPP

#include <Eigen/Dense>
#include <functional>
#include <memory>
#include <vector>

#include "hbie/common.hpp"

namespace hbie::geometry {

using Eigen::Vector2d;

/// Smooth 2pi-periodic parametrization with first and second derivatives.
struct Parametrization {
    std::function<Vector2d(double)> position;
    std::function<Vector2d(double)> velocity;
    std::function<Vector2d(double)> acceleration;
};

enum class Orientation { outer, inner };

/// One closed curve with its equispaced quadrature data.
///
/// All parametrizations traverse counterclockwise; for inner components
/// (hole boundaries) the stored normal is flipped so that it always points
/// out of the domain, and the stored signed curvature is taken with respect
/// to that normal (kappa = -accel . normal / speed^2).
class CurveComponent {
public:
    CurveComponent(Parametrization param, Orientation orientation, int nodes);

    int size() const { return n_; }
    Orientation orientation() const { return orientation_; }
    double node_param(int i) const { return 2.0 * pi * i / n_; }
    const Vector2d& node(int i) const { return nodes_[i]; }
    const Vector2d& tangent(int i) const { return tangents_[i]; }
    const Vector2d& normal(int i) const { return normals_[i]; }
    double speed(int i) const { return speeds_[i]; }
    double curvature(int i) const { return curvatures_[i]; }
    double weight(int i) const { return weights_[i]; }
    double max_speed() const { return max_speed_; }
    /// Parameter-space width of the near-boundary band, 2 pi max|x'| / N.
    double grid_spacing() const { return 2.0 * pi * max_speed_ / n_; }

    // evaluation anywhere on the curve (used by refined quadratures)
    Vector2d position(double t) const { return param_.position(t); }
    Vector2d velocity(double t) const { return param_.velocity(t); }
    Vector2d outward_normal(double t) const;
    double normal_sign() const { return orientation_ == Orientation::outer ? 1.0 : -1.0; }

private:
    Parametrization param_;
    Orientation orientation_;
    int n_;
    std::vector<Vector2d> nodes_, tangents_, normals_;
    std::vector<double> speeds_, curvatures_, weights_;
    double max_speed_ = 0.0;
};

/// A multi-component boundary: one or more disjoint closed curves.
class Boundary {
public:
    explicit Boundary(std::vector<CurveComponent> components);

    int num_components() const { return int(components_.size()); }
    const CurveComponent& component(int c) const { return components_[c]; }
    int total_size() const { return total_; }

    /// number of connected components of the enclosed open set
    int kappa_plus() const { return kappa_plus_; }
    /// number of bounded connected components of the complement
    int kappa_minus() const { return kappa_minus_; }

    // global node indexing across components
    int component_of(int i) const;
    int local_index(int i) const;
    int component_offset(int c) const { return offsets_[c]; }
    const Vector2d& node(int i) const;
    const Vector2d& normal(int i) const;
    double speed(int i) const;
    double curvature(int i) const;
    double weight(int i) const;
    Eigen::VectorXd weights() const;

    /// smallest near-boundary band width over the components
    double min_feature() const;

private:
    std::vector<CurveComponent> components_;
    std::vector<int> offsets_;
    int total_ = 0;
    int kappa_plus_ = 0, kappa_minus_ = 0;
};

enum class Location { interior, exterior, near_boundary };

/// Winding-number classification of a point, with a one-grid-spacing band
/// around the nodes reported as near_boundary.
Location locate(const Boundary& b, const Vector2d& x);

/// Named curve families understood by make_boundary.
struct CurveSpec {
    enum class Family { circle, ellipse, kite, annulus, star };
    Family family = Family::circle;
    Vector2d center{0.0, 0.0};
    double radius = 1.0;                  // circle
    double semi_axis_a = 1.0;             // ellipse
    double semi_axis_b = 0.5;             // ellipse
    double inner_radius = 0.5;            // annulus
    double outer_radius = 1.0;            // annulus
    double base_radius = 1.0;             // star
    std::vector<double> cos_coef, sin_coef; // star radius Fourier series
    int nodes = 128;                      // per component, even, >= 16
};

Boundary make_boundary(const CurveSpec& spec);

/// Interior quadrature (points and weights) built by sweeping the domain:
/// a star-shaped sweep from a center for one-component boundaries, a blend
/// between the two curves for annulus-like ones.
struct AreaQuadrature {
    std::vector<Vector2d> points;
    Eigen::VectorXd weights;
};

AreaQuadrature area_quadrature(const Boundary& b, const Vector2d& star_center,
                               int radial_nodes);

/// Gauss-Legendre rule on [0, 1].
void gauss_legendre_01(int n, std::vector<double>& x, std::vector<double>& w);

} // namespace hbie::geometry

#endif
