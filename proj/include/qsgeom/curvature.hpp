#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "qsgeom/charts.hpp"
#include "qsgeom/fd.hpp"

namespace qsg {

/// A metric tensor field over a chart: constant, closed-form built-in, or a
/// composed pullback pipeline.
struct MetricField {
    std::string name;
    int dim = 0;
    std::vector<ParamSpec> domain;
    std::vector<ExclusionBand> exclusions;
    std::function<MetricTensor(const Point&)> eval;
};

MetricField constant_field(const MetricTensor& g, double box_halfwidth = 5.0);

/// Unit 2-sphere, diag(1, sin^2 theta) on (theta, phi).
MetricField sphere2_field();

/// Plane polar coordinates, diag(1, rho^2) on (rho, phi).
MetricField polar2_field();

/// Closed-form round 3-sphere of radius r in Euler coordinates:
/// (r^2/4) [[1,0,0],[0,1,cos theta],[0,cos theta,1]] on (theta, phi, chi).
MetricField s3_round_field(double r);

/// Pullback of `target` through `chart` at every point (twist folded by
/// pullback_metric).
MetricField pullback_field(const MetricTensor& target, const ChartMap& chart,
                           const DifferentiationScheme& scheme = {});

MetricField builtin_metric_field(const std::string& name);

/// Gamma^a_{bc} = g^{ad} (d_b g_{dc} + d_c g_{db} - d_d g_{bc}) / 2,
/// flattened as gamma[(a*d + b)*d + c].  Throws NumericalError for a
/// singular metric.
std::vector<double> christoffel(const MetricField& field, const Point& p,
                                const DifferentiationScheme& scheme = {});

struct RiemannResult {
    int dim = 0;
    std::vector<double> r;  // R^a_{bcd} flattened as ((a*d + b)*d + c)*d + d_
    double scalar = 0.0;    // g^{bd} R^a_{bad}

    double at(int a, int b, int c, int d) const {
        const int n = dim;
        return r[static_cast<std::size_t>(((a * n + b) * n + c)) * n + d];
    }
    double max_abs() const;
};

/// R^a_{bcd} = d_c Gamma^a_{db} - d_d Gamma^a_{cb}
///           + Gamma^a_{ce} Gamma^e_{db} - Gamma^a_{de} Gamma^e_{cb}.
/// The outer Gamma derivatives use central-2 at 10x the scheme step.
RiemannResult riemann(const MetricField& field, const Point& p,
                      const DifferentiationScheme& scheme = {});

struct CurvaturePointRecord {
    Point p;
    double max_abs_riemann = 0.0;
    double scalar = 0.0;
};

struct CurvatureReport {
    std::vector<CurvaturePointRecord> points;
    double global_max = 0.0;
    bool flat = false;
    double tol = 0.0;
    double h = 0.0;
    int order = 0;
    std::uint64_t seed = 0;
};

/// Samples n_points uniformly (seeded, reproducible) from the interior of
/// the field's domain, away from stencil margins and exclusion bands, and
/// evaluates riemann at each.  flat iff global max |R^a_{bcd}| < tol.
CurvatureReport flatness_scan(const MetricField& field, int n_points, double tol,
                              std::uint64_t seed, const DifferentiationScheme& scheme = {});

}  // namespace qsg
