#include "qsgeom/curvature.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "qsgeom/linalg.hpp"

namespace qsg {

namespace {

constexpr double kPi = std::numbers::pi;

void check_field_point(const MetricField& field, const Point& p) {
    if (static_cast<int>(p.size()) != field.dim)
        throw DomainError("metric field '" + field.name + "' expects " +
                          std::to_string(field.dim) + " coordinates");
}

std::vector<double> metric_flat(const MetricField& field, const Point& p) {
    MetricTensor g = field.eval(p);
    if (g.dim != field.dim) throw NumericalError("metric field returned a wrong dimension");
    for (double v : g.m)
        if (!std::isfinite(v)) throw NumericalError("metric field returned a non-finite entry");
    return g.m;
}

DMatrix inverse_metric(const MetricField& field, const Point& p) {
    const auto flat = metric_flat(field, p);
    DMatrix g(field.dim, field.dim);
    g.a = flat;
    return invert_symmetric(g);
}

void check_stencil_margin(const MetricField& field, const Point& p,
                          const DifferentiationScheme& scheme, double extra_factor) {
    for (int b = 0; b < field.dim; ++b) {
        const auto& spec = field.domain[b];
        const double step = scheme.step_for(b, p[b]) * extra_factor;
        const double extent = scheme.stencil_halfwidth() * step;
        if (p[b] - extent < spec.lower || p[b] + extent > spec.upper)
            throw DomainError("curvature stencil leaves the domain of " + spec.name);
    }
}

}  // namespace

MetricField constant_field(const MetricTensor& g, double box_halfwidth) {
    MetricField field;
    field.name = "constant";
    field.dim = g.dim;
    for (int i = 0; i < g.dim; ++i)
        field.domain.push_back({"x" + std::to_string(i + 1), -box_halfwidth, box_halfwidth, false});
    field.eval = [g](const Point&) { return g; };
    return field;
}

MetricField sphere2_field() {
    MetricField field;
    field.name = "sphere2";
    field.dim = 2;
    field.domain = {{"theta", 0.0, kPi, false}, {"phi", 0.0, 2.0 * kPi, true}};
    field.exclusions = {{0, 0.0, 0.9}, {0, kPi, 0.9}};
    field.eval = [](const Point& p) {
        const double s = std::sin(p[0]);
        return MetricTensor::diagonal({1.0, s * s});
    };
    return field;
}

MetricField polar2_field() {
    MetricField field;
    field.name = "polar2";
    field.dim = 2;
    field.domain = {{"rho", 0.0, 8.0, false}, {"phi", 0.0, 2.0 * kPi, true}};
    field.exclusions = {{0, 0.0, 0.5}};
    field.eval = [](const Point& p) {
        return MetricTensor::diagonal({1.0, p[0] * p[0]});
    };
    return field;
}

MetricField s3_round_field(double r) {
    if (!(r > 0.0)) throw DomainError("s3_round_field needs r > 0");
    MetricField field;
    field.name = "s3_round";
    field.dim = 3;
    field.domain = {{"theta", 0.0, kPi, false},
                    {"phi", 0.0, 2.0 * kPi, true},
                    {"chi", 0.0, 4.0 * kPi, true}};
    field.exclusions = {{0, 0.0, 0.8}, {0, kPi, 0.8}};
    field.eval = [r](const Point& p) {
        const double q = r * r / 4.0;
        MetricTensor g(3);
        g.at(0, 0) = q;
        g.at(1, 1) = q;
        g.at(2, 2) = q;
        g.at(1, 2) = g.at(2, 1) = q * std::cos(p[0]);
        return g;
    };
    return field;
}

MetricField pullback_field(const MetricTensor& target, const ChartMap& chart,
                           const DifferentiationScheme& scheme) {
    MetricField field;
    field.name = "pullback(" + chart.name + ")";
    field.dim = chart.source_dim();
    field.domain = chart.source;
    field.exclusions = chart.exclusions;
    field.eval = [target, chart, scheme](const Point& p) {
        return pullback_metric(target, chart, p, scheme);
    };
    return field;
}

MetricField builtin_metric_field(const std::string& name) {
    if (name == "sphere2") return sphere2_field();
    if (name == "polar2") return polar2_field();
    if (name == "s3_round") return s3_round_field(1.0);
    throw DomainError("unknown built-in metric field '" + name + "'");
}

std::vector<double> christoffel(const MetricField& field, const Point& p,
                                const DifferentiationScheme& scheme) {
    check_field_point(field, p);
    scheme.validate();
    check_stencil_margin(field, p, scheme, 1.0);

    const int n = field.dim;
    const DMatrix ginv = inverse_metric(field, p);

    // dg[c] holds d g_ab / d x_c, flattened row-major
    std::vector<std::vector<double>> dg(n);
    for (int c = 0; c < n; ++c)
        dg[c] = fd_derivative([&field](const Point& q) { return metric_flat(field, q); }, p, c,
                              scheme);

    auto dgat = [n, &dg](int c, int a, int b) { return dg[c][static_cast<std::size_t>(a) * n + b]; };

    std::vector<double> gamma(static_cast<std::size_t>(n) * n * n, 0.0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c) {
                double s = 0.0;
                for (int d = 0; d < n; ++d)
                    s += ginv.at(a, d) * (dgat(b, d, c) + dgat(c, d, b) - dgat(d, b, c));
                gamma[(static_cast<std::size_t>(a) * n + b) * n + c] = 0.5 * s;
            }
    return gamma;
}

double RiemannResult::max_abs() const {
    double m = 0.0;
    for (double v : r) m = std::max(m, std::abs(v));
    return m;
}

RiemannResult riemann(const MetricField& field, const Point& p,
                      const DifferentiationScheme& scheme) {
    check_field_point(field, p);
    scheme.validate();

    // outer Gamma derivatives: central-2 with a 10x larger step, so the
    // inner christoffel stencils stay clear of h^2 noise amplification; the
    // step is capped at 1e-2 to keep the truncation error from the larger
    // stencil bounded once the caller raises h
    auto outer_step = [](double h) { return std::max(h, std::min(10.0 * h, 1e-2)); };
    DifferentiationScheme outer = scheme;
    outer.kind = FdKind::Central2;
    outer.h = outer_step(scheme.h);
    outer.per_axis_h.clear();
    for (const auto& [axis, step] : scheme.per_axis_h) outer.per_axis_h[axis] = outer_step(step);
    check_stencil_margin(field, p, scheme, 12.0);

    const int n = field.dim;
    const auto gamma = christoffel(field, p, scheme);
    std::vector<std::vector<double>> dgamma(n);
    for (int c = 0; c < n; ++c)
        dgamma[c] = fd_derivative(
            [&field, &scheme](const Point& q) { return christoffel(field, q, scheme); }, p, c,
            outer);

    auto g_at = [n, &gamma](int a, int b, int c) {
        return gamma[(static_cast<std::size_t>(a) * n + b) * n + c];
    };
    auto dg_at = [n, &dgamma](int c, int a, int d, int b) {
        return dgamma[c][(static_cast<std::size_t>(a) * n + d) * n + b];
    };

    RiemannResult res;
    res.dim = n;
    res.r.assign(static_cast<std::size_t>(n) * n * n * n, 0.0);
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                for (int d = 0; d < n; ++d) {
                    double v = dg_at(c, a, d, b) - dg_at(d, a, c, b);
                    for (int e = 0; e < n; ++e)
                        v += g_at(a, c, e) * g_at(e, d, b) - g_at(a, d, e) * g_at(e, c, b);
                    res.r[(static_cast<std::size_t>((a * n + b) * n + c)) * n + d] = v;
                }

    const DMatrix ginv = inverse_metric(field, p);
    double scalar = 0.0;
    for (int b = 0; b < n; ++b)
        for (int d = 0; d < n; ++d)
            for (int a = 0; a < n; ++a) scalar += ginv.at(b, d) * res.at(a, b, a, d);
    res.scalar = scalar;
    return res;
}

CurvatureReport flatness_scan(const MetricField& field, int n_points, double tol,
                              std::uint64_t seed, const DifferentiationScheme& scheme) {
    if (n_points < 1) throw DomainError("flatness_scan needs n_points >= 1");
    if (!(tol > 0.0)) throw DomainError("flatness_scan tolerance must be > 0");
    scheme.validate();

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    auto sample_point = [&]() -> Point {
        for (int attempt = 0; attempt < 10000; ++attempt) {
            Point p(field.dim);
            bool ok = true;
            for (int b = 0; b < field.dim && ok; ++b) {
                const auto& spec = field.domain[b];
                // margin large enough for the nested riemann stencils
                const double coord_scale = std::max({1.0, std::abs(spec.lower), std::abs(spec.upper)});
                const double margin = 12.0 * scheme.stencil_halfwidth() *
                                      scheme.base_step(b) * coord_scale;
                const double lo = spec.lower + margin;
                const double hi = spec.upper - margin;
                if (!(lo < hi)) {
                    ok = false;
                    break;
                }
                p[b] = lo + (hi - lo) * unit(rng);
            }
            if (!ok) throw DomainError("empty sampling region after stencil margins");
            bool excluded = false;
            for (const auto& band : field.exclusions)
                if (std::abs(p[band.axis] - band.center) < band.halfwidth + 1e-12) excluded = true;
            if (!excluded) return p;
        }
        throw DomainError("empty sampling region: all samples fell in exclusion bands");
    };

    CurvatureReport report;
    report.tol = tol;
    report.h = scheme.h;
    report.order = scheme.order();
    report.seed = seed;
    report.global_max = 0.0;

    for (int i = 0; i < n_points; ++i) {
        CurvaturePointRecord rec;
        rec.p = sample_point();
        const RiemannResult rr = riemann(field, rec.p, scheme);
        rec.max_abs_riemann = rr.max_abs();
        rec.scalar = rr.scalar;
        report.points.push_back(rec);
        report.global_max = std::max(report.global_max, rec.max_abs_riemann);
    }
    report.flat = report.global_max < tol;
    return report;
}

}  // namespace qsg
