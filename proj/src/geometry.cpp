// Copyright (c) 2026 the hbie authors
// SPDX-License-Identifier: Apache-2.0

#include "hbie/geometry.hpp"

#include <algorithm>
#include <cmath>

namespace hbie::geometry {

CurveComponent::CurveComponent(Parametrization param, Orientation orientation,
                               int nodes)
    : param_(std::move(param)), orientation_(orientation), n_(nodes) {
    if (n_ < 16 || n_ % 2 != 0)
        throw DomainError("curve component: node count must be even and >= 16");
    nodes_.resize(n_);
    tangents_.resize(n_);
    normals_.resize(n_);
    speeds_.resize(n_);
    curvatures_.resize(n_);
    weights_.resize(n_);
    double sign = normal_sign();
    for (int i = 0; i < n_; ++i) {
        double t = node_param(i);
        Vector2d x = param_.position(t);
        Vector2d v = param_.velocity(t);
        Vector2d a = param_.acceleration(t);
        double sp = v.norm();
        if (sp < 1e-10)
            throw DomainError("curve component: parametrization is irregular (|x'| ~ 0)");
        nodes_[i] = x;
        tangents_[i] = v;
        speeds_[i] = sp;
        normals_[i] = sign * Vector2d(v.y(), -v.x()) / sp;
        // signed curvature with respect to the stored outward normal
        curvatures_[i] = -a.dot(normals_[i]) / (sp * sp);
        weights_[i] = 2.0 * pi / n_ * sp;
        max_speed_ = std::max(max_speed_, sp);
    }
    // cheap self-intersection proxy: parameter-distant nodes must not collide
    for (int i = 0; i < n_; ++i) {
        for (int j = i + n_ / 8; j <= i + n_ / 2; ++j) {
            int jj = j % n_;
            if ((nodes_[i] - nodes_[jj]).norm() < 1e-8 * max_speed_)
                throw DomainError("curve component: parametrization self-intersects");
        }
    }
}

Vector2d CurveComponent::outward_normal(double t) const {
    Vector2d v = param_.velocity(t);
    return normal_sign() * Vector2d(v.y(), -v.x()) / v.norm();
}

Boundary::Boundary(std::vector<CurveComponent> components)
    : components_(std::move(components)) {
    if (components_.empty()) throw DomainError("boundary: no components");
    offsets_.resize(components_.size());
    for (std::size_t c = 0; c < components_.size(); ++c) {
        offsets_[c] = total_;
        total_ += components_[c].size();
        if (components_[c].orientation() == Orientation::outer)
            ++kappa_plus_;
        else
            ++kappa_minus_;
    }
    if (kappa_plus_ == 0) throw DomainError("boundary: needs at least one outer component");
    // components must be pairwise disjoint
    for (std::size_t a = 0; a < components_.size(); ++a)
        for (std::size_t b = a + 1; b < components_.size(); ++b)
            for (int i = 0; i < components_[a].size(); ++i)
                for (int j = 0; j < components_[b].size(); ++j)
                    if ((components_[a].node(i) - components_[b].node(j)).norm() < 1e-12)
                        throw DomainError("boundary: components touch");
}

int Boundary::component_of(int i) const {
    for (int c = num_components() - 1; c >= 0; --c)
        if (i >= offsets_[c]) return c;
    throw DomainError("boundary: bad node index");
}

int Boundary::local_index(int i) const { return i - offsets_[component_of(i)]; }

const Vector2d& Boundary::node(int i) const {
    int c = component_of(i);
    return components_[c].node(i - offsets_[c]);
}

const Vector2d& Boundary::normal(int i) const {
    int c = component_of(i);
    return components_[c].normal(i - offsets_[c]);
}

double Boundary::speed(int i) const {
    int c = component_of(i);
    return components_[c].speed(i - offsets_[c]);
}

double Boundary::curvature(int i) const {
    int c = component_of(i);
    return components_[c].curvature(i - offsets_[c]);
}

double Boundary::weight(int i) const {
    int c = component_of(i);
    return components_[c].weight(i - offsets_[c]);
}

Eigen::VectorXd Boundary::weights() const {
    Eigen::VectorXd w(total_);
    for (int i = 0; i < total_; ++i) w[i] = weight(i);
    return w;
}

double Boundary::min_feature() const {
    double g = std::numeric_limits<double>::max();
    for (const auto& c : components_) g = std::min(g, c.grid_spacing());
    return g;
}

Location locate(const Boundary& b, const Vector2d& x) {
    // near-boundary band: within one grid spacing of a node
    for (int c = 0; c < b.num_components(); ++c) {
        const auto& comp = b.component(c);
        double band = comp.grid_spacing();
        for (int i = 0; i < comp.size(); ++i)
            if ((comp.node(i) - x).norm() < band) return Location::near_boundary;
    }
    // winding number through the quadrature of the double-layer of 1
    double w = 0.0;
    for (int c = 0; c < b.num_components(); ++c) {
        const auto& comp = b.component(c);
        for (int i = 0; i < comp.size(); ++i) {
            Vector2d d = comp.node(i) - x;
            w += d.dot(comp.normal(i)) / (2.0 * pi * d.squaredNorm()) * comp.weight(i);
        }
    }
    return w > 0.5 ? Location::interior : Location::exterior;
}

namespace {

Parametrization circle_param(Vector2d c, double r) {
    return {[=](double t) { return Vector2d(c.x() + r * std::cos(t), c.y() + r * std::sin(t)); },
            [=](double t) { return Vector2d(-r * std::sin(t), r * std::cos(t)); },
            [=](double t) { return Vector2d(-r * std::cos(t), -r * std::sin(t)); }};
}

Parametrization ellipse_param(Vector2d c, double a, double b) {
    return {[=](double t) { return Vector2d(c.x() + a * std::cos(t), c.y() + b * std::sin(t)); },
            [=](double t) { return Vector2d(-a * std::sin(t), b * std::cos(t)); },
            [=](double t) { return Vector2d(-a * std::cos(t), -b * std::sin(t)); }};
}

Parametrization kite_param(Vector2d c) {
    return {[=](double t) {
                return Vector2d(c.x() + std::cos(t) + 0.65 * std::cos(2 * t) - 0.65,
                                c.y() + 1.5 * std::sin(t));
            },
            [=](double t) {
                return Vector2d(-std::sin(t) - 1.3 * std::sin(2 * t), 1.5 * std::cos(t));
            },
            [=](double t) {
                return Vector2d(-std::cos(t) - 2.6 * std::cos(2 * t), -1.5 * std::sin(t));
            }};
}

Parametrization star_param(Vector2d c, double r0, std::vector<double> ac,
                           std::vector<double> as) {
    auto radius = [=](double t) {
        double r = r0;
        for (std::size_t j = 0; j < ac.size(); ++j) r += ac[j] * std::cos((j + 1) * t);
        for (std::size_t j = 0; j < as.size(); ++j) r += as[j] * std::sin((j + 1) * t);
        return r;
    };
    auto dradius = [=](double t) {
        double r = 0.0;
        for (std::size_t j = 0; j < ac.size(); ++j) r -= ac[j] * (j + 1) * std::sin((j + 1) * t);
        for (std::size_t j = 0; j < as.size(); ++j) r += as[j] * (j + 1) * std::cos((j + 1) * t);
        return r;
    };
    auto ddradius = [=](double t) {
        double r = 0.0;
        for (std::size_t j = 0; j < ac.size(); ++j)
            r -= ac[j] * (j + 1) * (j + 1) * std::cos((j + 1) * t);
        for (std::size_t j = 0; j < as.size(); ++j)
            r -= as[j] * (j + 1) * (j + 1) * std::sin((j + 1) * t);
        return r;
    };
    return {[=](double t) {
                double r = radius(t);
                return Vector2d(c.x() + r * std::cos(t), c.y() + r * std::sin(t));
            },
            [=](double t) {
                double r = radius(t), dr = dradius(t);
                return Vector2d(dr * std::cos(t) - r * std::sin(t),
                                dr * std::sin(t) + r * std::cos(t));
            },
            [=](double t) {
                double r = radius(t), dr = dradius(t), ddr = ddradius(t);
                return Vector2d(ddr * std::cos(t) - 2 * dr * std::sin(t) - r * std::cos(t),
                                ddr * std::sin(t) + 2 * dr * std::cos(t) - r * std::sin(t));
            }};
}

} // namespace

Boundary make_boundary(const CurveSpec& spec) {
    using F = CurveSpec::Family;
    std::vector<CurveComponent> comps;
    switch (spec.family) {
    case F::circle:
        if (spec.radius <= 0.0) throw DomainError("circle: radius must be positive");
        comps.emplace_back(circle_param(spec.center, spec.radius), Orientation::outer,
                           spec.nodes);
        break;
    case F::ellipse:
        if (spec.semi_axis_a <= 0.0 || spec.semi_axis_b <= 0.0)
            throw DomainError("ellipse: semi-axes must be positive");
        comps.emplace_back(ellipse_param(spec.center, spec.semi_axis_a, spec.semi_axis_b),
                           Orientation::outer, spec.nodes);
        break;
    case F::kite:
        comps.emplace_back(kite_param(spec.center), Orientation::outer, spec.nodes);
        break;
    case F::annulus:
        if (!(0.0 < spec.inner_radius && spec.inner_radius < spec.outer_radius))
            throw DomainError("annulus: need 0 < inner radius < outer radius");
        comps.emplace_back(circle_param(spec.center, spec.outer_radius),
                           Orientation::outer, spec.nodes);
        comps.emplace_back(circle_param(spec.center, spec.inner_radius),
                           Orientation::inner, spec.nodes);
        break;
    case F::star:
        comps.emplace_back(star_param(spec.center, spec.base_radius, spec.cos_coef,
                                      spec.sin_coef),
                           Orientation::outer, spec.nodes);
        break;
    }
    return Boundary(std::move(comps));
}

void gauss_legendre_01(int n, std::vector<double>& x, std::vector<double>& w) {
    // Newton iteration on P_n over [-1, 1], then map to [0, 1]
    x.resize(n);
    w.resize(n);
    for (int i = 0; i < n; ++i) {
        double t = std::cos(pi * (i + 0.75) / (n + 0.5));
        double p0 = 0.0, p1 = 0.0, dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1);
            }
            dp = n * (t * p0 - p1) / (t * t - 1.0);
            double dt = p0 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-16) break;
        }
        x[i] = 0.5 * (1.0 - t); // reversed order is fine
        w[i] = 1.0 / ((1.0 - t * t) * dp * dp);
    }
}

AreaQuadrature area_quadrature(const Boundary& b, const Vector2d& star_center,
                               int radial_nodes) {
    if (radial_nodes < 2) throw DomainError("area quadrature: need >= 2 radial nodes");
    std::vector<double> gx, gw;
    gauss_legendre_01(radial_nodes, gx, gw);
    AreaQuadrature aq;

    if (b.num_components() == 1) {
        const auto& comp = b.component(0);
        int nt = comp.size();
        // star-shaped sweep y = c + rho (x(t) - c); Jacobian rho cross(x-c, x')
        std::vector<double> cr(nt);
        for (int j = 0; j < nt; ++j) {
            Vector2d d = comp.node(j) - star_center;
            Vector2d v = comp.tangent(j);
            cr[j] = d.x() * v.y() - d.y() * v.x();
            if (cr[j] <= 0.0)
                throw UnsupportedDomainError(
                    "area quadrature: domain is not star-shaped about the given center");
        }
        aq.points.reserve(std::size_t(nt) * radial_nodes);
        std::vector<double> wts;
        wts.reserve(std::size_t(nt) * radial_nodes);
        for (int j = 0; j < nt; ++j) {
            Vector2d d = comp.node(j) - star_center;
            for (int i = 0; i < radial_nodes; ++i) {
                aq.points.push_back(star_center + gx[i] * d);
                wts.push_back(gw[i] * gx[i] * cr[j] * (2.0 * pi / nt));
            }
        }
        aq.weights = Eigen::Map<Eigen::VectorXd>(wts.data(), long(wts.size()));
        return aq;
    }

    if (b.num_components() == 2) {
        // blended sweep y(t, rho) = (1 - rho) x_in(t) + rho x_out(t)
        const CurveComponent* outer = nullptr;
        const CurveComponent* inner = nullptr;
        for (int c = 0; c < 2; ++c) {
            if (b.component(c).orientation() == Orientation::outer)
                outer = &b.component(c);
            else
                inner = &b.component(c);
        }
        if (!outer || !inner)
            throw UnsupportedDomainError("area quadrature: need one outer and one inner curve");
        if (outer->size() != inner->size())
            throw UnsupportedDomainError(
                "area quadrature: components must share the node count for the blend");
        int nt = outer->size();
        std::vector<double> wts;
        for (int j = 0; j < nt; ++j) {
            Vector2d xi = inner->node(j), xo = outer->node(j);
            Vector2d vi = inner->tangent(j), vo = outer->tangent(j);
            Vector2d dr = xo - xi;
            for (int i = 0; i < radial_nodes; ++i) {
                Vector2d vt = (1.0 - gx[i]) * vi + gx[i] * vo;
                double jac = vt.x() * dr.y() - vt.y() * dr.x();
                if (jac == 0.0)
                    throw UnsupportedDomainError("area quadrature: degenerate blend");
                aq.points.push_back((1.0 - gx[i]) * xi + gx[i] * xo);
                wts.push_back(gw[i] * std::abs(jac) * (2.0 * pi / nt));
            }
        }
        aq.weights = Eigen::Map<Eigen::VectorXd>(wts.data(), long(wts.size()));
        return aq;
    }

    throw UnsupportedDomainError("area quadrature: more than two components");
}

} // namespace hbie::geometry
