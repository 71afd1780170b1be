#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <fstream>
#include <numbers>
#include <random>
#include <sstream>

#include "oracles.hpp"
#include "qsgeom/family.hpp"

using namespace qsg;

namespace {

constexpr double kPi = std::numbers::pi;

double max_component_error(const StateVector& a, const StateVector& b) {
    REQUIRE(a.size() == b.size());
    double m = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
    return m;
}

}  // namespace

TEST_CASE("hopf_s3 pole values") {
    StateFamily fam = builtin_family("hopf_s3");
    StateVector psi = evaluate_state(fam, {0.0, 0.0, 0.0});
    CHECK(std::abs(psi[0] - Complex(1.0, 0.0)) < 1e-15);
    CHECK(std::abs(psi[1]) < 1e-15);
    psi = evaluate_state(fam, {kPi, 0.0, 0.0});
    CHECK(std::abs(psi[0]) < 1e-15);
    CHECK(std::abs(psi[1] - Complex(1.0, 0.0)) < 1e-15);
}

TEST_CASE("hopf_s3 norm equals r^2 at 1000 random points") {
    std::mt19937_64 rng(101);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (double r : {1.0, 1.7}) {
        StateFamily fam = builtin_family("hopf_s3", {{"r", r}});
        for (int k = 0; k < 1000; ++k) {
            const Point p = {kPi * unit(rng), 2.0 * kPi * unit(rng), 4.0 * kPi * unit(rng)};
            const StateVector psi = evaluate_state(fam, p);
            CHECK(std::abs(inner_product(psi, psi).real() - r * r) < 1e-14 * std::max(1.0, r * r));
        }
    }
}

TEST_CASE("hopf_s3 file family matches the builtin") {
    std::ifstream f(std::string(QSGEOM_FAMILY_DIR) + "/hopf_s3.family");
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    StateFamily from_file = family_from_definition(parse_family_file(ss.str()));
    StateFamily builtin = builtin_family("hopf_s3");
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (int k = 0; k < 50; ++k) {
        const Point p = {kPi * unit(rng), 2.0 * kPi * unit(rng), 4.0 * kPi * unit(rng)};
        CHECK(max_component_error(evaluate_state(from_file, p), evaluate_state(builtin, p)) <
              1e-14);
    }
}

TEST_CASE("bloch_cp1 values") {
    StateFamily fam = builtin_family("bloch_cp1");
    const StateVector psi = evaluate_state(fam, {kPi / 2.0, 0.0});
    CHECK(std::abs(psi[0] - Complex(std::sqrt(2.0) / 2.0, 0.0)) < 1e-15);
    CHECK(std::abs(psi[1] - Complex(std::sqrt(2.0) / 2.0, 0.0)) < 1e-15);
}

TEST_CASE("plane_wave and constant_state") {
    StateFamily pw = builtin_family("plane_wave", {{"k", 1.0}, {"omega", 1.0}});
    CHECK(std::abs(evaluate_state(pw, {0.0, 0.0})[0] - Complex(1.0, 0.0)) < 1e-15);
    CHECK_THROWS_AS(builtin_family("plane_wave", {{"k", 1.0}}), DomainError);  // missing omega
    CHECK_THROWS_AS(builtin_family("no_such_family"), DomainError);

    StateFamily cs = constant_state_family({Complex(1.0, 2.0), Complex(0.0, 0.0)});
    const StateVector v = evaluate_state(cs, {0.3, -0.7});
    CHECK(v[0] == Complex(1.0, 2.0));
    CHECK(v[1] == Complex(0.0, 0.0));

    StateFamily cs2 = builtin_family("constant_state", {{"re0", 1.0}, {"im0", 2.0}, {"re1", 0.0}});
    CHECK(evaluate_state(cs2, {0.0, 0.0}) == v);
}

TEST_CASE("out-of-bounds evaluation is rejected") {
    StateFamily fam = builtin_family("bloch_cp1");
    CHECK_THROWS_AS(evaluate_state(fam, {-0.1, 0.0}), DomainError);
    CHECK_THROWS_AS(evaluate_state(fam, {0.0}), DomainError);  // arity
}

TEST_CASE("derivative of a constant family vanishes") {
    StateFamily cs = constant_state_family({Complex(1.0, 2.0), Complex(3.0, 0.0)});
    for (int axis : {0, 1}) {
        const StateVector d = differentiate_state(cs, {0.4, 0.9}, axis);
        CHECK(max_component_error(d, {Complex(0.0, 0.0), Complex(0.0, 0.0)}) < 1e-15);
    }
}

TEST_CASE("derivative of exp(i a) at 0") {
    const FamilyDefinition def = parse_family_file("family f\nparam a in [-10, 10]\nstate: [exp(i*a)]\n");
    StateFamily fam = family_from_definition(def);
    DifferentiationScheme s;
    s.h = 1e-3;
    const StateVector d = differentiate_state(fam, {0.0}, 0, s);
    CHECK(std::abs(d[0] - Complex(0.0, 1.0)) < 1e-10);
}

TEST_CASE("bloch derivative matches the closed-form oracle") {
    StateFamily fam = builtin_family("bloch_cp1");
    const Point p = {1.0, 0.0};
    const StateVector d = differentiate_state(fam, p, 0);
    const StateVector want = oracles::bloch_dtheta(1.0, 0.0);
    CHECK(max_component_error(d, want) < 1e-9);
    CHECK(std::abs(d[0] - Complex(-std::sin(0.5) / 2.0, 0.0)) < 1e-9);
    CHECK(std::abs(d[1] - Complex(std::cos(0.5) / 2.0, 0.0)) < 1e-9);

    const StateVector dphi = differentiate_state(fam, {1.0, 2.5}, 1);
    CHECK(max_component_error(dphi, oracles::bloch_dphi(1.0, 2.5)) < 1e-9);
}

TEST_CASE("differentiation schemes agree and richardson needs levels") {
    StateFamily fam = builtin_family("bloch_cp1");
    const Point p = {1.2, 3.0};
    DifferentiationScheme c2{FdKind::Central2, 1e-4, 3, {}};
    DifferentiationScheme c4{FdKind::Central4, 1e-3, 3, {}};
    DifferentiationScheme rich{FdKind::Richardson, 1e-2, 4, {}};
    const StateVector want = oracles::bloch_dtheta(1.2, 3.0);
    CHECK(max_component_error(differentiate_state(fam, p, 0, c2), want) < 1e-7);
    CHECK(max_component_error(differentiate_state(fam, p, 0, c4), want) < 1e-11);
    CHECK(max_component_error(differentiate_state(fam, p, 0, rich), want) < 1e-10);

    DifferentiationScheme bad{FdKind::Richardson, 1e-2, 1, {}};
    CHECK_THROWS_AS(differentiate_state(fam, p, 0, bad), DomainError);
}

TEST_CASE("central-4 convergence: halving h cuts the error by >= 8x") {
    StateFamily fam = builtin_family("bloch_cp1");
    const Point p = {1.0, 0.3};
    const StateVector want = oracles::bloch_dtheta(1.0, 0.3);
    double prev = -1.0;
    for (double h : {0.05, 0.025, 0.0125}) {
        DifferentiationScheme s{FdKind::Central4, h, 3, {}};
        const double err = max_component_error(differentiate_state(fam, p, 0, s), want);
        if (prev > 0.0 && prev > 1e-11) CHECK(prev / err >= 8.0);
        prev = err;
    }
}

TEST_CASE("hopf_s3_nohalf keeps the norm but changes the phases") {
    StateFamily half = builtin_family("hopf_s3");
    StateFamily nohalf = builtin_family("hopf_s3_nohalf");
    const Point p = {1.0, 2.0, 3.0};
    const StateVector a = evaluate_state(half, p);
    const StateVector b = evaluate_state(nohalf, p);
    CHECK(std::abs(inner_product(b, b).real() - 1.0) < 1e-14);
    CHECK(std::abs(a[0] - b[0]) > 1e-3);
    CHECK(std::abs(std::abs(a[0]) - std::abs(b[0])) < 1e-15);
}

TEST_CASE("per-axis step overrides are honored") {
    StateFamily fam = builtin_family("bloch_cp1");
    DifferentiationScheme s;
    s.h = 0.2;  // too coarse to pass a tight check on its own
    s.per_axis_h[0] = 1e-3;
    const StateVector d = differentiate_state(fam, {1.0, 0.3}, 0, s);
    CHECK(max_component_error(d, oracles::bloch_dtheta(1.0, 0.3)) < 1e-11);
    // the unoverridden axis still uses the coarse base step near a boundary
    CHECK_THROWS_AS(differentiate_state(fam, {1.0, 0.3}, 1, s), DomainError);
}

TEST_CASE("state lists may span multiple lines") {
    const char* src = R"(family wrapped
param a in [0, 1]
state: [
  a,
  exp(i*a)   # trailing comment
]
)";
    const FamilyDefinition def = parse_family_file(src);
    CHECK(def.components.size() == 2);
    StateFamily fam = family_from_definition(def);
    const StateVector psi = evaluate_state(fam, {0.5});
    CHECK(std::abs(psi[0] - Complex(0.5, 0.0)) < 1e-15);
}

TEST_CASE("stencil bounds are enforced for differentiation") {
    StateFamily fam = builtin_family("bloch_cp1");
    DifferentiationScheme s;
    s.h = 1e-3;
    CHECK_THROWS_AS(differentiate_state(fam, {1e-4, 0.0}, 0, s), DomainError);
    CHECK_THROWS_AS(differentiate_state(fam, {1.0, 0.0}, 5, s), DomainError);  // bad axis
    CHECK_NOTHROW(differentiate_state(fam, {1.0, 0.0}, 0, s));
}

TEST_CASE("inner product basics") {
    CHECK(inner_product({Complex(1, 0), Complex(0, 0)}, {Complex(0, 0), Complex(1, 0)}) ==
          Complex(0, 0));
    CHECK(inner_product({Complex(0, 1)}, {Complex(0, 1)}) == Complex(1, 0));
    CHECK(inner_product({Complex(1, 1), Complex(2, 0)}, {Complex(1, 0), Complex(0, 1)}) ==
          Complex(1, 1));
    CHECK_THROWS_AS(inner_product({Complex(1, 0)}, {Complex(1, 0), Complex(0, 0)}), DomainError);
}

TEST_CASE("inner product properties") {
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 200; ++k) {
        StateVector a(3), b(3), c(3);
        for (int i = 0; i < 3; ++i) {
            a[i] = Complex(u(rng), u(rng));
            b[i] = Complex(u(rng), u(rng));
            c[i] = Complex(u(rng), u(rng));
        }
        // conjugate symmetry, exactly
        const Complex ab = inner_product(a, b);
        const Complex ba = inner_product(b, a);
        CHECK(ab.real() == ba.real());
        CHECK(ab.imag() == -ba.imag());
        // <a|a> real and nonnegative
        const Complex aa = inner_product(a, a);
        CHECK(aa.imag() == 0.0);
        CHECK(aa.real() >= 0.0);
        // linearity in the second argument
        const Complex alpha(u(rng), u(rng));
        StateVector combo(3);
        for (int i = 0; i < 3; ++i) combo[i] = alpha * b[i] + c[i];
        const Complex lhs = inner_product(a, combo);
        const Complex rhs = alpha * ab + inner_product(a, c);
        CHECK(std::abs(lhs - rhs) <= 1e-15 * std::max(1.0, std::abs(rhs)));
    }
}
