#pragma once

#include <complex>
#include <string>
#include <vector>

#include "qsgeom/charts.hpp"
#include "qsgeom/family.hpp"

namespace qsg {

/// projective subtracts the <dPsi|Psi><Psi|dPsi> term (ray-space metric);
/// raw keeps only the derivative overlap (embedding metric).
enum class Convention { Projective, Raw };

std::string convention_name(Convention c);
Convention convention_from_name(const std::string& name);

/// Complex Hermitian matrix Q_ab over a family's parameter chart.
struct HermitianTensor {
    int dim = 0;
    std::vector<Complex> q;  // row-major dim*dim
    Convention convention = Convention::Projective;

    HermitianTensor() = default;
    HermitianTensor(int d, Convention conv)
        : dim(d), q(static_cast<std::size_t>(d) * d, Complex{}), convention(conv) {}

    Complex& at(int i, int j) { return q[static_cast<std::size_t>(i) * dim + j]; }
    Complex at(int i, int j) const { return q[static_cast<std::size_t>(i) * dim + j]; }

    MetricTensor real_part() const;
    double max_abs() const;
    double hermiticity_defect() const;  // max |Q - Q^dagger|
};

struct SignatureTriple {
    int n_plus = 0;
    int n_minus = 0;
    int n_zero = 0;

    bool operator==(const SignatureTriple&) const = default;
};

struct EtaReport {
    double eta11 = 0, eta22 = 0, eta33 = 0, eta44 = 0;
    double residual12 = 0;  // |eta11 - eta22|
    double residual34 = 0;  // |eta33 - eta44|
    double tol = 0;
    bool pass = false;
};

/// Quantum geometric tensor from real-parameter derivative overlaps:
///   Q_ab = <d_a Psi|d_b Psi>/<Psi|Psi> - [projective] <d_a Psi|Psi><Psi|d_b Psi>/<Psi|Psi>^2
/// followed by (Q + Q^dagger)/2 cleanup.
HermitianTensor qgt(const StateFamily& family, const Point& p,
                    const DifferentiationScheme& scheme = {},
                    Convention convention = Convention::Projective);

/// Diagonal complex-coordinate metric component for Z = x_a + i * s * x_b
/// where s is the second-axis scale (c for a (z, t) pair, 1 otherwise):
/// with u = (d_a - (i/s) d_b)/2 applied to the state,
///   g = <u|u>/<Psi|Psi> - [projective] <u|Psi><Psi|u>/<Psi|Psi>^2.
Complex g_component_wirtinger(const StateFamily& family, const Point& p, int axis_a, int axis_b,
                              double second_axis_scale,
                              const DifferentiationScheme& scheme = {},
                              Convention convention = Convention::Projective);

/// diag(g11, g11, g22, -c^2 g22) on the (x, y, z, t) chart:
/// ds^2 = g11 (dx^2 + dy^2) + g22 (dz^2 - c^2 dt^2).
MetricTensor assemble_real_metric(double g11, double g22, double c);

/// eta11 = G11, eta22 = G22, eta33 = G33, eta44 = G44/(-c^2) (the dt^2
/// coefficient with the Lorentzian factor stripped).  pass iff both equality
/// residuals are <= tol * max(1, |eta11|, |eta33|).  Requires G diagonal up
/// to tol * max|G| off-diagonal.
EtaReport eta_coefficients(const MetricTensor& g, double c, double tol = 1e-12);

/// Eigenvalue inertia (n+, n-, n0) with threshold zero_tol * max(1, max|lambda|).
SignatureTriple signature(const MetricTensor& g, double zero_tol = 1e-9);

}  // namespace qsg
