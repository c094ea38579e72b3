// Copyright (c) 2026 the hbie authors
// SPDX-License-Identifier: Apache-2.0

#include "hbie/runner.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <memory>
#include <sstream>

#include "hbie/solver.hpp"

namespace hbie::cli {

using distcalc::DensityPair;
using Eigen::Vector2d;
using Eigen::VectorXcd;
using geometry::Boundary;
using geometry::CurveSpec;
using layerpot::Side;
using solver::FieldData;
using solver::NeumannProblem;
using solver::SolveReport;
using solver::SolverOptions;
using specfun::FundamentalSolution;

namespace {

std::string fmt(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

std::string csv_quote(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') out += '"';
    }
    out += '"';
    return out;
}

struct CsvWriter {
    std::ostringstream body;
    void comment(const std::string& text) { body << "# " << text << "\n"; }
    void row(const std::vector<std::string>& cells) {
        for (std::size_t i = 0; i < cells.size(); ++i) {
            if (i) body << ',';
            body << csv_quote(cells[i]);
        }
        body << '\n';
    }
};

struct Report {
    std::ostringstream body;
    bool all_pass = true;
    void line(const std::string& s) { body << s << '\n'; }
    void check(const std::string& name, double value, double bound) {
        bool ok = value < bound;
        all_pass = all_pass && ok;
        body << (ok ? "[PASS] " : "[FAIL] ") << name << ": " << fmt(value)
             << (ok ? " < " : " >= ") << fmt(bound) << '\n';
    }
    void check_flag(const std::string& name, bool ok) {
        all_pass = all_pass && ok;
        body << (ok ? "[PASS] " : "[FAIL] ") << name << '\n';
    }
};

CurveSpec curve_spec(const RunConfig& cfg) {
    CurveSpec s;
    std::string kind = cfg.require("curve", "kind");
    if (kind == "circle")
        s.family = CurveSpec::Family::circle;
    else if (kind == "ellipse")
        s.family = CurveSpec::Family::ellipse;
    else if (kind == "kite")
        s.family = CurveSpec::Family::kite;
    else if (kind == "annulus")
        s.family = CurveSpec::Family::annulus;
    else if (kind == "star")
        s.family = CurveSpec::Family::star;
    else
        throw ConfigError("[curve] kind: unknown curve '" + kind + "'");
    s.center = cfg.get_point("curve", "center", {0.0, 0.0});
    s.radius = cfg.get_double("curve", "radius", 1.0);
    s.semi_axis_a = cfg.get_double("curve", "semi_axis_a", 1.0);
    s.semi_axis_b = cfg.get_double("curve", "semi_axis_b", 0.5);
    s.inner_radius = cfg.get_double("curve", "inner_radius", 0.5);
    s.outer_radius = cfg.get_double("curve", "outer_radius", 1.0);
    s.base_radius = cfg.get_double("curve", "base_radius", 1.0);
    s.cos_coef = cfg.get_double_list("curve", "cos_coef");
    s.sin_coef = cfg.get_double_list("curve", "sin_coef");
    s.nodes = cfg.get_int("curve", "nodes", 128);
    return s;
}

std::shared_ptr<const Boundary> build_boundary(const RunConfig& cfg) {
    try {
        return std::make_shared<Boundary>(geometry::make_boundary(curve_spec(cfg)));
    } catch (const DomainError& e) {
        throw ConfigError(std::string("curve: ") + e.what());
    }
}

FieldData point_source_field(Complex k, Vector2d z) {
    auto fs = FundamentalSolution::radiating(2, k);
    return {[=](Vector2d x) { return fundamental_value_radial(fs, (x - z).norm()); },
            [=](Vector2d x) {
                Vector2d d = x - z;
                double r = d.norm();
                Complex s1 = specfun::fundamental_derivative_radial(fs, r);
                return Eigen::Vector2cd(s1 * d.x() / r, s1 * d.y() / r);
            }};
}

FieldData plane_wave_field(Complex k, double angle) {
    Vector2d d{std::cos(angle), std::sin(angle)};
    return {[=](Vector2d x) { return std::exp(iu * k * (d.x() * x.x() + d.y() * x.y())); },
            [=](Vector2d x) {
                Complex v = std::exp(iu * k * (d.x() * x.x() + d.y() * x.y()));
                return Eigen::Vector2cd(iu * k * d.x() * v, iu * k * d.y() * v);
            }};
}

struct ProblemData {
    DensityPair data;
    std::optional<FieldData> exact; // closed-form solution when manufactured
};

VectorXcd neumann_trace_of(const Boundary& b, const FieldData& u) {
    VectorXcd g(b.total_size());
    for (int i = 0; i < b.total_size(); ++i) {
        auto gr = u.gradient(b.node(i));
        g[i] = gr[0] * b.normal(i).x() + gr[1] * b.normal(i).y();
    }
    return g;
}

ProblemData build_data(const RunConfig& cfg, const Boundary& b, Side side, Complex k) {
    const int n = b.total_size();
    std::string kind = cfg.require("data", "kind");
    if (kind == "point_source") {
        Vector2d z = cfg.get_point("data", "source", {0.2, 0.0});
        FieldData u = point_source_field(k, z);
        geometry::Location loc = geometry::locate(b, z);
        bool manufactured = (side == Side::exterior &&
                             loc == geometry::Location::interior) ||
                            (side == Side::interior &&
                             loc == geometry::Location::exterior);
        ProblemData pd{DensityPair::classical(neumann_trace_of(b, u)), std::nullopt};
        if (manufactured) pd.exact = u;
        return pd;
    }
    if (kind == "plane_wave") {
        double angle = cfg.get_double("data", "angle", 0.0);
        FieldData u = plane_wave_field(k, angle);
        ProblemData pd{DensityPair::classical(neumann_trace_of(b, u)), std::nullopt};
        if (side == Side::interior) pd.exact = u; // plane waves do not radiate
        return pd;
    }
    if (kind == "trig") {
        int mode = cfg.get_int("data", "mode", 1);
        std::string part = cfg.get("data", "part", "cos");
        std::string comp = cfg.get("data", "component", "mu0");
        double amp = cfg.get_double("data", "amplitude", 1.0);
        if (part != "cos" && part != "sin")
            throw ConfigError("[data] part: expected cos or sin");
        VectorXcd v = VectorXcd::Zero(n);
        for (int c = 0; c < b.num_components(); ++c) {
            const auto& cc = b.component(c);
            for (int i = 0; i < cc.size(); ++i) {
                double t = cc.node_param(i);
                v[b.component_offset(c) + i] =
                    amp * (part == "cos" ? std::cos(mode * t) : std::sin(mode * t));
            }
        }
        DensityPair g{VectorXcd::Zero(n), VectorXcd::Zero(n)};
        if (comp == "mu0")
            g.mu0 = v;
        else if (comp == "mu1")
            g.mu1 = v;
        else
            throw ConfigError("[data] component: expected mu0 or mu1");
        return {std::move(g), std::nullopt};
    }
    if (kind == "file") {
        std::string path = cfg.require("data", "file");
        std::ifstream in(path);
        if (!in) throw ConfigError("[data] file: cannot open '" + path + "'");
        DensityPair g{VectorXcd::Zero(n), VectorXcd::Zero(n)};
        std::string line;
        int row = 0;
        while (std::getline(in, line)) {
            if (line.empty() || line[0] == '#') continue;
            if (row >= n) throw ConfigError("[data] file: more rows than nodes");
            std::istringstream ls(line);
            std::string cell;
            std::vector<double> vals;
            while (std::getline(ls, cell, ',')) vals.push_back(std::atof(cell.c_str()));
            if (vals.size() != 2 && vals.size() != 4)
                throw ConfigError("[data] file: expected 2 or 4 columns per row");
            g.mu0[row] = Complex(vals[0], vals[1]);
            if (vals.size() == 4) g.mu1[row] = Complex(vals[2], vals[3]);
            ++row;
        }
        if (row != n) throw ConfigError("[data] file: fewer rows than nodes");
        return {std::move(g), std::nullopt};
    }
    throw ConfigError("[data] kind: unknown data family '" + kind + "'");
}

double boundary_radius(const Boundary& b) {
    double r = 0.0;
    for (int i = 0; i < b.total_size(); ++i) r = std::max(r, b.node(i).norm());
    return r;
}

std::vector<Vector2d> default_probes(const Boundary& b, Side side) {
    std::vector<Vector2d> out;
    double R = boundary_radius(b);
    if (side == Side::exterior) {
        out = {{2.5 * R, 0.0}, {0.0, 2.5 * R}, {-2.5 * R, 0.8 * R}};
    } else if (b.num_components() == 2) {
        // between the two curves
        const auto& outer = b.component(0);
        const auto& inner = b.component(1);
        for (int i : {0, outer.size() / 4, outer.size() / 2})
            out.push_back(0.5 * (outer.node(i) + inner.node(i % inner.size())));
    } else {
        Vector2d c{0.0, 0.0};
        for (int i = 0; i < b.total_size(); ++i) c += b.node(i);
        c /= b.total_size();
        out = {c, c + Vector2d{0.25 * R, 0.1 * R}, c - Vector2d{0.2 * R, 0.15 * R}};
    }
    return out;
}

void write_artifacts(const RunConfig& cfg, const CsvWriter& csv, const Report& rep) {
    std::string csv_path = cfg.get("output", "csv", "");
    if (!csv_path.empty()) {
        std::ofstream out(csv_path, std::ios::binary);
        if (!out) throw ConfigError("[output] csv: cannot write '" + csv_path + "'");
        out << csv.body.str();
    }
    std::string rep_path = cfg.get("output", "report", "");
    if (!rep_path.empty()) {
        std::ofstream out(rep_path, std::ios::binary);
        if (!out) throw ConfigError("[output] report: cannot write '" + rep_path + "'");
        out << rep.body.str();
    }
}

void echo_config(Report& rep, const RunConfig& cfg, const std::string& command) {
    rep.line("command: " + command);
    rep.line("config-hash: " + cfg.hash());
    rep.line("config:");
    std::istringstream in(cfg.canonical());
    std::string line;
    while (std::getline(in, line)) rep.line("  " + line);
}

void append_field_grid(CsvWriter& csv, const RunConfig& cfg, const Boundary& b,
                       const SolveReport& sol, Side side) {
    if (!cfg.has("grid", "kind")) return;
    std::string kind = cfg.require("grid", "kind");
    auto emit = [&](Vector2d x) {
        if (geometry::locate(b, x) !=
            (side == Side::interior ? geometry::Location::interior
                                    : geometry::Location::exterior))
            return; // masked: near band or wrong side
        Complex u = sol.field.value(x);
        csv.row({"grid", fmt(x.x()), fmt(x.y()), fmt(u.real()), fmt(u.imag()), "", ""});
    };
    if (kind == "polar") {
        std::vector<double> radii = cfg.get_double_list("grid", "radii");
        int angles = cfg.get_int("grid", "angles", 64);
        if (radii.empty()) throw ConfigError("[grid] radii: required for a polar grid");
        for (double r : radii)
            for (int j = 0; j < angles; ++j) {
                double th = 2.0 * pi * j / angles;
                emit({r * std::cos(th), r * std::sin(th)});
            }
    } else if (kind == "cartesian") {
        int nx = cfg.get_int("grid", "nx", 32), ny = cfg.get_int("grid", "ny", 32);
        double R = boundary_radius(b) * 1.05;
        for (int i = 0; i < nx; ++i)
            for (int j = 0; j < ny; ++j)
                emit({-R + 2.0 * R * i / (nx - 1), -R + 2.0 * R * j / (ny - 1)});
    } else {
        throw ConfigError("[grid] kind: expected polar or cartesian");
    }
}

int run_solve(const RunConfig& cfg, Side side, bool verify_suite) {
    auto b = build_boundary(cfg);
    Complex k = cfg.get_complex("problem", "k", Complex(1.0, 0.0));
    SolverOptions opt;
    opt.dip_threshold = cfg.get_double("tolerances", "dip_threshold", 1e-6);
    opt.defect_tolerance = cfg.get_double("tolerances", "defect_tolerance", 1e-6);
    double green_tol = cfg.get_double("tolerances", "green_identity", 1e-6);
    double field_tol = cfg.get_double("tolerances", "field_error", 1e-8);
    double residual_tol = cfg.get_double("tolerances", "boundary_residual", 1e-8);
    double jump_tol = cfg.get_double("tolerances", "jump_error", 1e-6);

    ProblemData pd = build_data(cfg, *b, side, k);
    NeumannProblem prob{side, k, b, pd.data};
    SolveReport sol = solver::solve_neumann(prob, opt);

    std::vector<Vector2d> probes = cfg.get_points("probes", "points");
    if (probes.empty()) probes = default_probes(*b, side);

    Report rep;
    echo_config(rep, cfg, verify_suite ? "verify"
                                       : (side == Side::interior ? "solve-interior"
                                                                 : "solve-exterior"));
    rep.line("sigma_min: " + fmt(sol.sigma_min));
    rep.line("sigma_max: " + fmt(sol.sigma_max));
    rep.line("residual_boundary: " + fmt(sol.residual_boundary));
    rep.line("compatibility_defect: " + fmt(sol.compatibility_defect));
    rep.line(std::string("least_squares: ") + (sol.least_squares ? "yes" : "no"));

    CsvWriter csv;
    csv.comment("config-hash: " + cfg.hash());
    csv.row({"kind", "x", "y", "re_u", "im_u", "re_ref", "abs_err"});
    double probe_err = 0.0;
    for (const auto& x : probes) {
        Complex u = sol.field.value(x);
        if (pd.exact) {
            Complex ref = pd.exact->value(x);
            probe_err = std::max(probe_err, std::abs(u - ref));
            csv.row({"probe", fmt(x.x()), fmt(x.y()), fmt(u.real()), fmt(u.imag()),
                     fmt(ref.real()), fmt(std::abs(u - ref))});
        } else {
            csv.row({"probe", fmt(x.x()), fmt(x.y()), fmt(u.real()), fmt(u.imag()), "",
                     ""});
        }
    }
    append_field_grid(csv, cfg, *b, sol, side);

    if (!sol.least_squares) rep.check("boundary residual", sol.residual_boundary, residual_tol);
    if (pd.exact) rep.check("field error at probes", probe_err, field_tol);

    auto green = solver::green_identity_residual(sol, prob, probes);
    double gmax = 0.0;
    for (double g : green) gmax = std::max(gmax, g);
    rep.check("green identity residual", gmax, green_tol);

    if (side == Side::exterior) {
        double R0 = 1.0 + 2.0 * boundary_radius(*b);
        auto rc = solver::radiation_check(
            [&](Vector2d x) { return sol.field.value(x); },
            [&](Vector2d x) { return sol.field.gradient(x); }, k,
            {R0, 2.0 * R0, 4.0 * R0, 8.0 * R0}, 32);
        for (const auto& s : rc.samples)
            rep.line("radiation q(" + fmt(s.radius) + "): " + fmt(s.q));
        rep.check_flag("radiation condition bounded", rc.pass);
    }

    if (verify_suite) {
        // jump-relation spot check on the double layer of the solved trace
        auto fs = FundamentalSolution::radiating(2, k);
        auto V = layerpot::assemble(layerpot::OperatorKind::single_layer, fs, b);
        auto W = layerpot::assemble(layerpot::OperatorKind::double_layer, fs, b);
        VectorXcd trace = V.apply(sol.phi);
        std::vector<int> nodes;
        for (int c = 0; c < b->num_components(); ++c)
            nodes.push_back(b->component_offset(c) + b->component(c).size() / 3);
        auto jcs = layerpot::jump_check_batch(W, trace, nodes);
        double jmax = 0.0;
        for (const auto& jc : jcs) jmax = std::max({jmax, jc.err_plus, jc.err_minus});
        rep.check("jump relation spot check", jmax, jump_tol);
    }

    rep.line(rep.all_pass ? "result: PASS" : "result: FAIL");
    write_artifacts(cfg, csv, rep);
    return rep.all_pass ? 0 : 4;
}

int run_scan(const RunConfig& cfg) {
    auto b = build_boundary(cfg);
    std::string side_s = cfg.get("problem", "side", "interior");
    Side side = side_s == "exterior" ? Side::exterior : Side::interior;
    if (side_s != "interior" && side_s != "exterior")
        throw ConfigError("[problem] side: expected interior or exterior");
    double kmin = cfg.require_double("scan", "k_min");
    double kmax = cfg.require_double("scan", "k_max");
    int samples = cfg.get_int("scan", "samples", 101);
    double threshold = cfg.get_double("scan", "dip_detect_threshold", 0.2);

    auto scan = solver::eigen_scan(b, side, kmin, kmax, samples);
    auto dips = solver::detect_dips(b, side, scan, threshold);

    CsvWriter csv;
    csv.comment("config-hash: " + cfg.hash());
    csv.row({"k", "sigma_min"});
    for (const auto& s : scan) csv.row({fmt(s.first), fmt(s.second)});

    Report rep;
    echo_config(rep, cfg, "eig-scan");
    rep.line("samples: " + std::to_string(samples));
    for (double d : dips) rep.line("dip: " + fmt(d));
    rep.line("result: PASS");
    write_artifacts(cfg, csv, rep);
    return 0;
}

int run_converge(const RunConfig& cfg, Side side) {
    int n_min = cfg.get_int("converge", "n_min", 32);
    int n_max = cfg.get_int("converge", "n_max", 256);
    if (n_min < 16 || n_max < n_min) throw ConfigError("[converge] bad n range");
    Complex k = cfg.get_complex("problem", "k", Complex(1.0, 0.0));
    double field_tol = cfg.get_double("tolerances", "field_error", 1e-8);

    CsvWriter csv;
    csv.comment("config-hash: " + cfg.hash());
    csv.row({"nodes", "field_error", "ratio"});
    Report rep;
    echo_config(rep, cfg, "converge");

    double prev = 0.0, last = 0.0;
    bool factors_ok = true;
    for (int n = n_min; n <= n_max; n *= 2) {
        RunConfig local = cfg;
        local.override_key("curve.nodes", std::to_string(n));
        auto b = build_boundary(local);
        ProblemData pd = build_data(local, *b, side, k);
        if (!pd.exact)
            throw ConfigError("converge: needs manufactured data "
                              "(point_source or an interior plane_wave)");
        NeumannProblem prob{side, k, b, pd.data};
        auto sol = solver::solve_neumann(prob);
        std::vector<Vector2d> probes = local.get_points("probes", "points");
        if (probes.empty()) probes = default_probes(*b, side);
        double err = 0.0;
        for (const auto& x : probes)
            err = std::max(err, std::abs(sol.field.value(x) - pd.exact->value(x)));
        double ratio = prev > 0.0 ? err / prev : 0.0;
        csv.row({std::to_string(n), fmt(err), prev > 0.0 ? fmt(ratio) : ""});
        if (prev > 0.0 && !(ratio <= 0.1 || err < 1e-10)) factors_ok = false;
        prev = err;
        last = err;
    }
    rep.check_flag("convergence factor >= 10 per doubling", factors_ok);
    rep.check("final field error", last, field_tol);
    rep.line(rep.all_pass ? "result: PASS" : "result: FAIL");
    write_artifacts(cfg, csv, rep);
    return rep.all_pass ? 0 : 4;
}

} // namespace

Command parse_command(const std::string& name) {
    if (name == "solve-interior") return Command::solve_interior;
    if (name == "solve-exterior") return Command::solve_exterior;
    if (name == "eig-scan") return Command::eig_scan;
    if (name == "verify") return Command::verify;
    if (name == "converge") return Command::converge;
    throw ConfigError("unknown command '" + name + "'");
}

int run(Command cmd, const RunConfig& cfg) {
    try {
        switch (cmd) {
        case Command::solve_interior:
            return run_solve(cfg, Side::interior, false);
        case Command::solve_exterior:
            return run_solve(cfg, Side::exterior, false);
        case Command::eig_scan:
            return run_scan(cfg);
        case Command::verify: {
            std::string side_s = cfg.get("problem", "side", "exterior");
            if (side_s != "interior" && side_s != "exterior")
                throw ConfigError("[problem] side: expected interior or exterior");
            return run_solve(cfg, side_s == "interior" ? Side::interior : Side::exterior,
                             true);
        }
        case Command::converge: {
            std::string side_s = cfg.get("problem", "side", "exterior");
            if (side_s != "interior" && side_s != "exterior")
                throw ConfigError("[problem] side: expected interior or exterior");
            return run_converge(cfg, side_s == "interior" ? Side::interior
                                                          : Side::exterior);
        }
        }
        return 2;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return 2;
    } catch (const IncompatibleDataError& e) {
        std::fprintf(stderr, "incompatible data: %s (defect %.3e)\n", e.what(), e.defect);
        return 3;
    } catch (const Error& e) {
        std::fprintf(stderr, "numerical failure: %s\n", e.what());
        return 4;
    }
}

} // namespace hbie::cli
