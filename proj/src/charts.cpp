#include "qsgeom/charts.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qsg {

namespace {

constexpr double kPi = std::numbers::pi;

void check_source_point(const ChartMap& chart, const Point& p) {
    if (static_cast<int>(p.size()) != chart.source_dim()) {
        std::ostringstream os;
        os << "chart '" << chart.name << "' expects " << chart.source_dim()
           << " source coordinates, got " << p.size();
        throw DomainError(os.str());
    }
    for (double v : p)
        if (!std::isfinite(v)) throw DomainError("non-finite coordinate");
    for (const auto& band : chart.exclusions) {
        if (std::abs(p[band.axis] - band.center) < band.halfwidth) {
            std::ostringstream os;
            os << "rank-deficient Jacobian: coordinate " << chart.source[band.axis].name
               << " lies within " << band.halfwidth << " of the singularity at " << band.center
               << " of chart '" << chart.name << "'";
            throw NumericalError(os.str());
        }
    }
}

}  // namespace

MetricTensor MetricTensor::diagonal(const std::vector<double>& d) {
    MetricTensor g(static_cast<int>(d.size()));
    for (int i = 0; i < g.dim; ++i) g.at(i, i) = d[i];
    return g;
}

MetricTensor MetricTensor::identity(int d) {
    MetricTensor g(d);
    for (int i = 0; i < d; ++i) g.at(i, i) = 1.0;
    return g;
}

void MetricTensor::symmetrize() {
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j) {
            const double v = 0.5 * (at(i, j) + at(j, i));
            at(i, j) = at(j, i) = v;
        }
}

bool MetricTensor::is_symmetric(double rel_tol) const {
    const double scale = std::max(1.0, max_abs());
    for (int i = 0; i < dim; ++i)
        for (int j = i + 1; j < dim; ++j)
            if (std::abs(at(i, j) - at(j, i)) > rel_tol * scale) return false;
    return true;
}

double MetricTensor::max_abs() const {
    double m = 0.0;
    for (double v : this->m) m = std::max(m, std::abs(v));
    return m;
}

double minkowski_line_element(const std::vector<double>& d, double c) {
    if (d.size() != 4) throw DomainError("minkowski_line_element needs a 4-displacement");
    if (!(c > 0.0)) throw DomainError("c must be > 0");
    return d[0] * d[0] + d[1] * d[1] + d[2] * d[2] - c * c * d[3] * d[3];
}

std::pair<Complex, Complex> complexify_pairs(const std::array<double, 4>& x) {
    return {Complex(x[0], x[1]), Complex(x[2], x[3])};
}

std::array<double, 4> split_pairs(Complex z1, Complex z2) {
    return {z1.real(), z1.imag(), z2.real(), z2.imag()};
}

double complex_pair_line_element(Complex dz1, Complex dz2, double g11, double g22) {
    return g11 * std::norm(dz1) + g22 * std::norm(dz2);
}

double wick_twisted_pair_line_element(Complex dz1, Complex dz2, double g11, double g22) {
    return g11 * std::norm(dz1) + g22 * (dz2 * dz2).real();
}

ChartMap wick_chart(double c) {
    if (!(c > 0.0)) throw DomainError("wick_chart needs c > 0");
    ChartMap chart;
    chart.name = "wick";
    chart.source = {{"x", -1e6, 1e6, false},
                    {"y", -1e6, 1e6, false},
                    {"z", -1e6, 1e6, false},
                    {"t", -1e6, 1e6, false}};
    chart.target_dim = 4;
    chart.twist = {1, 1, 1, -1};
    chart.map = [c](const Point& p) {
        return std::vector<double>{p[0], p[1], p[2], c * p[3]};
    };
    chart.linear = true;
    chart.linear_jacobian = DMatrix(4, 4);
    for (int i = 0; i < 3; ++i) chart.linear_jacobian.at(i, i) = 1.0;
    chart.linear_jacobian.at(3, 3) = c;
    return chart;
}

ChartMap hopf_chart(double r) {
    if (!(r > 0.0)) throw DomainError("hopf_chart needs r > 0");
    ChartMap chart;
    chart.name = "hopf";
    chart.source = {{"theta", 0.0, kPi, false},
                    {"phi", 0.0, 2.0 * kPi, true},
                    {"chi", 0.0, 4.0 * kPi, true}};
    chart.target_dim = 4;
    chart.exclusions = {{0, 0.0, 1e-2}, {0, kPi, 1e-2}};
    chart.map = [r](const Point& p) {
        const double theta = p[0], phi = p[1], chi = p[2];
        const double ch = std::cos(theta / 2.0), sh = std::sin(theta / 2.0);
        const double ap = 0.5 * (chi + phi), am = 0.5 * (chi - phi);
        return std::vector<double>{r * ch * std::cos(ap), r * ch * std::sin(ap),
                                   r * sh * std::cos(am), r * sh * std::sin(am)};
    };
    return chart;
}

ChartMap hopf_chart_free_r() {
    ChartMap chart = hopf_chart(1.0);
    chart.name = "hopf_free_r";
    chart.source.push_back({"r", 1e-6, 1e6, false});
    chart.map = [](const Point& p) {
        const double theta = p[0], phi = p[1], chi = p[2], r = p[3];
        const double ch = std::cos(theta / 2.0), sh = std::sin(theta / 2.0);
        const double ap = 0.5 * (chi + phi), am = 0.5 * (chi - phi);
        return std::vector<double>{r * ch * std::cos(ap), r * ch * std::sin(ap),
                                   r * sh * std::cos(am), r * sh * std::sin(am)};
    };
    return chart;
}

ChartMap identity_chart(int dim, double half_extent) {
    ChartMap chart;
    chart.name = "identity";
    for (int i = 0; i < dim; ++i)
        chart.source.push_back({"x" + std::to_string(i + 1), -half_extent, half_extent, false});
    chart.target_dim = dim;
    chart.map = [](const Point& p) { return p; };
    chart.linear = true;
    chart.linear_jacobian = DMatrix::identity(dim);
    return chart;
}

ChartMap chart_from_definition(const ChartDefinition& def,
                               const std::map<std::string, double>& constant_overrides) {
    ChartMap chart;
    chart.name = def.name;
    chart.source = def.parameters;
    chart.target_dim = 2 * static_cast<int>(def.components.size());
    chart.twist = def.twist;

    auto constants = def.constants;
    for (const auto& [k, v] : constant_overrides) constants[k] = v;
    auto components = def.components;
    auto params = def.parameters;
    chart.map = [components, constants, params](const Point& p) {
        std::map<std::string, Complex> bindings;
        for (const auto& [k, v] : constants) bindings[k] = Complex(v, 0.0);
        for (std::size_t a = 0; a < params.size(); ++a) bindings[params[a].name] = Complex(p[a], 0.0);
        std::vector<double> out;
        out.reserve(2 * components.size());
        for (const auto& comp : components) {
            const Complex z = eval_expression(*comp, bindings);
            out.push_back(z.real());
            out.push_back(z.imag());
        }
        return out;
    };
    return chart;
}

DMatrix jacobian(const ChartMap& chart, const Point& p, const DifferentiationScheme& scheme) {
    check_source_point(chart, p);
    if (chart.linear) return chart.linear_jacobian;
    scheme.validate();

    const int m = chart.source_dim();
    DMatrix j(chart.target_dim, m);
    for (int b = 0; b < m; ++b) {
        const auto& spec = chart.source[b];
        const double step = scheme.step_for(b, p[b]);
        const double extent = scheme.stencil_halfwidth() * step;
        if (p[b] - extent < spec.lower || p[b] + extent > spec.upper)
            throw DomainError("jacobian stencil leaves the domain of " + spec.name);
        auto col = fd_derivative(chart.map, p, b, scheme);
        for (int a = 0; a < chart.target_dim; ++a) {
            if (!std::isfinite(col[a])) throw NumericalError("non-finite Jacobian entry");
            j.at(a, b) = col[a];
        }
    }
    return j;
}

MetricTensor pullback_metric(const MetricTensor& target, const ChartMap& chart, const Point& p,
                             const DifferentiationScheme& scheme) {
    if (target.dim != chart.target_dim)
        throw DomainError("pullback: target metric dimension does not match chart target");

    // fold the twist: G_ab -> re(i^{t_a} i^{t_b}) G_ab
    MetricTensor folded = target;
    if (!chart.twist.empty()) {
        for (int a = 0; a < target.dim; ++a)
            for (int b = 0; b < target.dim; ++b) {
                const double w = 0.5 * (chart.twist_sign(a) + chart.twist_sign(b));
                folded.at(a, b) *= w;
            }
    }

    const DMatrix j = jacobian(chart, p, scheme);
    DMatrix gt(target.dim, target.dim);
    for (int a = 0; a < target.dim; ++a)
        for (int b = 0; b < target.dim; ++b) gt.at(a, b) = folded.at(a, b);

    const DMatrix pulled = matmul(transpose(j), matmul(gt, j));
    MetricTensor out(chart.source_dim());
    for (int a = 0; a < out.dim; ++a)
        for (int b = 0; b < out.dim; ++b) out.at(a, b) = pulled.at(a, b);
    out.symmetrize();
    return out;
}

}  // namespace qsg
