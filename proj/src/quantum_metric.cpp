#include "qsgeom/quantum_metric.hpp"

#include <cmath>

#include "qsgeom/linalg.hpp"

namespace qsg {

std::string convention_name(Convention c) {
    return c == Convention::Projective ? "projective" : "raw";
}

Convention convention_from_name(const std::string& name) {
    if (name == "projective") return Convention::Projective;
    if (name == "raw") return Convention::Raw;
    throw DomainError("unknown convention '" + name + "' (use projective or raw)");
}

MetricTensor HermitianTensor::real_part() const {
    MetricTensor g(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) g.at(i, j) = at(i, j).real();
    return g;
}

double HermitianTensor::max_abs() const {
    double m = 0.0;
    for (const Complex& v : q) m = std::max(m, std::abs(v));
    return m;
}

double HermitianTensor::hermiticity_defect() const {
    double m = 0.0;
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j)
            m = std::max(m, std::abs(at(i, j) - std::conj(at(j, i))));
    return m;
}

namespace {

double state_norm_squared(const StateVector& psi) {
    const Complex n = inner_product(psi, psi);
    if (!(n.real() > 0.0) || !std::isfinite(n.real()))
        throw NumericalError("zero-norm state: <Psi|Psi> must be positive");
    return n.real();
}

Complex hermitian_form(const StateVector& u, const StateVector& v, const StateVector& psi,
                       double norm2, Convention convention) {
    Complex q = inner_product(u, v) / norm2;
    if (convention == Convention::Projective)
        q -= inner_product(u, psi) * inner_product(psi, v) / (norm2 * norm2);
    return q;
}

}  // namespace

HermitianTensor qgt(const StateFamily& family, const Point& p, const DifferentiationScheme& scheme,
                    Convention convention) {
    const int m = family.param_dim();
    const StateVector psi = evaluate_state(family, p);
    const double norm2 = state_norm_squared(psi);

    std::vector<StateVector> deriv(m);
    for (int a = 0; a < m; ++a) deriv[a] = differentiate_state(family, p, a, scheme);

    HermitianTensor q(m, convention);
    for (int a = 0; a < m; ++a)
        for (int b = 0; b < m; ++b)
            q.at(a, b) = hermitian_form(deriv[a], deriv[b], psi, norm2, convention);

    // (Q + Q^dagger)/2 cleanup of finite-difference asymmetry
    for (int a = 0; a < m; ++a)
        for (int b = a; b < m; ++b) {
            const Complex v = 0.5 * (q.at(a, b) + std::conj(q.at(b, a)));
            q.at(a, b) = v;
            q.at(b, a) = std::conj(v);
        }
    return q;
}

Complex g_component_wirtinger(const StateFamily& family, const Point& p, int axis_a, int axis_b,
                              double second_axis_scale, const DifferentiationScheme& scheme,
                              Convention convention) {
    if (axis_a == axis_b) throw DomainError("wirtinger pair axes must be distinct");
    if (!(second_axis_scale > 0.0)) throw DomainError("second-axis scale must be > 0");

    const StateVector psi = evaluate_state(family, p);
    const double norm2 = state_norm_squared(psi);
    const StateVector da = differentiate_state(family, p, axis_a, scheme);
    const StateVector db = differentiate_state(family, p, axis_b, scheme);

    // u = (d_a - (i/s) d_b) / 2 realizes d/dZ for Z = x_a + i s x_b
    StateVector u(psi.size());
    const Complex half(0.5, 0.0);
    const Complex iw = Complex(0.0, 1.0) / second_axis_scale;
    for (std::size_t k = 0; k < u.size(); ++k) u[k] = half * (da[k] - iw * db[k]);

    return hermitian_form(u, u, psi, norm2, convention);
}

MetricTensor assemble_real_metric(double g11, double g22, double c) {
    if (!(c > 0.0)) throw DomainError("assemble_real_metric needs c > 0");
    if (!std::isfinite(g11) || !std::isfinite(g22))
        throw DomainError("metric coefficients must be finite");
    return MetricTensor::diagonal({g11, g11, g22, -c * c * g22});
}

EtaReport eta_coefficients(const MetricTensor& g, double c, double tol) {
    if (g.dim != 4) throw DomainError("eta_coefficients needs a 4x4 metric");
    if (!(c > 0.0)) throw DomainError("eta_coefficients needs c > 0");
    if (!(tol > 0.0)) throw DomainError("eta tolerance must be > 0");

    const double off_tol = tol * std::max(1.0, g.max_abs());
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            if (i != j && std::abs(g.at(i, j)) > off_tol)
                throw DomainError("eta_coefficients: metric is not diagonal within tolerance");

    EtaReport rep;
    rep.eta11 = g.at(0, 0);
    rep.eta22 = g.at(1, 1);
    rep.eta33 = g.at(2, 2);
    rep.eta44 = g.at(3, 3) / (-c * c);
    rep.residual12 = std::abs(rep.eta11 - rep.eta22);
    rep.residual34 = std::abs(rep.eta33 - rep.eta44);
    rep.tol = tol;
    const double scale = std::max({1.0, std::abs(rep.eta11), std::abs(rep.eta33)});
    rep.pass = rep.residual12 <= tol * scale && rep.residual34 <= tol * scale;
    return rep;
}

SignatureTriple signature(const MetricTensor& g, double zero_tol) {
    if (!g.is_symmetric())
        throw DomainError("signature needs a symmetric metric");
    DMatrix a(g.dim, g.dim);
    for (int i = 0; i < g.dim; ++i)
        for (int j = 0; j < g.dim; ++j) a.at(i, j) = g.at(i, j);

    const auto dec = jacobi_eigen(a);
    double lmax = 0.0;
    for (double l : dec.values) lmax = std::max(lmax, std::abs(l));
    const double threshold = zero_tol * std::max(1.0, lmax);

    SignatureTriple sig;
    for (double l : dec.values) {
        if (l > threshold)
            ++sig.n_plus;
        else if (l < -threshold)
            ++sig.n_minus;
        else
            ++sig.n_zero;
    }
    return sig;
}

}  // namespace qsg
