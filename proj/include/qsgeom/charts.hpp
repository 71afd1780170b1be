#pragma once

#include <array>
#include <complex>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "qsgeom/expr.hpp"
#include "qsgeom/family.hpp"
#include "qsgeom/linalg.hpp"

namespace qsg {

/// Real symmetric matrix of metric components at a point.
struct MetricTensor {
    int dim = 0;
    std::vector<double> m;  // row-major dim*dim

    MetricTensor() = default;
    explicit MetricTensor(int d) : dim(d), m(static_cast<std::size_t>(d) * d, 0.0) {}

    double& at(int i, int j) { return m[static_cast<std::size_t>(i) * dim + j]; }
    double at(int i, int j) const { return m[static_cast<std::size_t>(i) * dim + j]; }

    static MetricTensor diagonal(const std::vector<double>& d);
    static MetricTensor identity(int d);

    void symmetrize();
    bool is_symmetric(double rel_tol = 1e-13) const;
    double max_abs() const;
};

/// Band around a coordinate singularity, excluded from random sampling.
struct ExclusionBand {
    int axis = 0;
    double center = 0.0;
    double halfwidth = 0.0;
};

/// A differentiable map between real coordinate charts, with an optional
/// per-target-axis sign twist applied to the flat target metric.  A twisted
/// axis stands for a formally imaginary coordinate: folding the twist into a
/// target metric multiplies G_ab by re(i^{t_a} * i^{t_b}), which is -1 when
/// both axes are twisted, 0 across a twisted/untwisted pair, +1 otherwise.
struct ChartMap {
    std::string name;
    std::vector<ParamSpec> source;  // dim m with bounds
    int target_dim = 0;             // k >= m
    std::function<std::vector<double>(const Point&)> map;
    std::vector<int> twist;         // size k, entries +-1; empty = all +1
    bool linear = false;
    DMatrix linear_jacobian;        // k x m, set when linear
    std::vector<ExclusionBand> exclusions;

    int source_dim() const { return static_cast<int>(source.size()); }
    int twist_sign(int axis) const {
        return twist.empty() ? 1 : twist[static_cast<std::size_t>(axis)];
    }
};

/// dx^2 + dy^2 + dz^2 - c^2 dt^2 for a 4-displacement (dx, dy, dz, dt).
double minkowski_line_element(const std::vector<double>& d, double c);

/// (x1, x2, x3, x4) -> (x1 + i x2, x3 + i x4) and its inverse.
std::pair<Complex, Complex> complexify_pairs(const std::array<double, 4>& x);
std::array<double, 4> split_pairs(Complex z1, Complex z2);

/// g11 |dZ1|^2 + g22 |dZ2|^2.
double complex_pair_line_element(Complex dz1, Complex dz2, double g11, double g22);

/// Same with the second pair twisted: g11 |dZ1|^2 + g22 re(dZ2^2), which
/// turns |dz + i c dt|^2 into dz^2 - c^2 dt^2.
double wick_twisted_pair_line_element(Complex dz1, Complex dz2, double g11, double g22);

/// (x, y, z, t) -> (x, y, z, c t) with twist (+1, +1, +1, -1).  Pulling back
/// the flat target metric yields diag(1, 1, 1, -c^2).
ChartMap wick_chart(double c);

/// (theta, phi, chi) -> 4 reals with x1 + i x2 = r cos(theta/2) e^{i(chi+phi)/2},
/// x3 + i x4 = r sin(theta/2) e^{i(chi-phi)/2}.  theta in {0, pi} are
/// coordinate singularities and carry exclusion bands of halfwidth 1e-2.
ChartMap hopf_chart(double r);

/// Variant with r as a fourth free source coordinate.
ChartMap hopf_chart_free_r();

ChartMap identity_chart(int dim, double half_extent = 1e6);

ChartMap chart_from_definition(const ChartDefinition& def,
                               const std::map<std::string, double>& constant_overrides = {});

/// J[a][b] = d target_a / d source_b.  Exact for linear built-ins, numerical
/// otherwise.  Throws NumericalError inside an exclusion band (rank-deficient
/// Jacobian at a coordinate singularity).
DMatrix jacobian(const ChartMap& chart, const Point& p,
                 const DifferentiationScheme& scheme = {});

/// G_source = J^T fold(G_target) J, symmetrized, where fold applies the
/// chart's twist signs as described on ChartMap.
MetricTensor pullback_metric(const MetricTensor& target, const ChartMap& chart, const Point& p,
                             const DifferentiationScheme& scheme = {});

}  // namespace qsg
