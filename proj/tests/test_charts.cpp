#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "qsgeom/charts.hpp"
#include "qsgeom/quantum_metric.hpp"

using namespace qsg;

namespace {

constexpr double kPi = std::numbers::pi;

double metric_diff(const MetricTensor& a, const MetricTensor& b) {
    REQUIRE(a.dim == b.dim);
    double m = 0.0;
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) m = std::max(m, std::abs(a.at(i, j) - b.at(i, j)));
    return m;
}

}  // namespace

TEST_CASE("minkowski line element") {
    CHECK(minkowski_line_element({1, 0, 0, 1}, 1.0) == 0.0);
    CHECK(minkowski_line_element({0, 0, 0, 1}, 2.0) == -4.0);
    CHECK(minkowski_line_element({3, 4, 0, 0}, 0.7) == 25.0);
    CHECK_THROWS_AS(minkowski_line_element({1, 2, 3}, 1.0), DomainError);
    CHECK_THROWS_AS(minkowski_line_element({1, 2, 3, 4}, 0.0), DomainError);
}

TEST_CASE("complexify pairs and inverse") {
    const auto [z1, z2] = complexify_pairs({1, 2, 3, 4});
    CHECK(z1 == Complex(1, 2));
    CHECK(z2 == Complex(3, 4));
    CHECK(complexify_pairs({1, 0, 0, 0}).first == Complex(1, 0));

    std::mt19937_64 rng(3);
    std::uniform_real_distribution<double> u(-10.0, 10.0);
    for (int k = 0; k < 1000; ++k) {
        const std::array<double, 4> x = {u(rng), u(rng), u(rng), u(rng)};
        const auto [w1, w2] = complexify_pairs(x);
        CHECK(split_pairs(w1, w2) == x);
    }
}

TEST_CASE("complex pair line element") {
    CHECK(complex_pair_line_element(Complex(1, 1), Complex(0, 0), 1.0, 1.0) ==
          doctest::Approx(2.0).epsilon(1e-15));
    CHECK(complex_pair_line_element(Complex(0, 0), Complex(0, 1), 5.0, 3.0) ==
          doctest::Approx(3.0).epsilon(1e-15));
}

TEST_CASE("line-element consistency: flat form vs twisted complex pairs") {
    // worked instance first
    {
        const double c = 1.0;
        const std::vector<double> d = {0.3, -0.2, 0.7, 0.4};
        const auto [dz1, dz2] = complexify_pairs({d[0], d[1], d[2], c * d[3]});
        const double lhs = minkowski_line_element(d, c);
        const double rhs = wick_twisted_pair_line_element(dz1, dz2, 1.0, 1.0);
        CHECK(std::abs(lhs - rhs) < 1e-15);
    }
    std::mt19937_64 rng(17);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (double c : {1.0, 2.5, 0.3}) {
        for (int k = 0; k < 1000; ++k) {
            const std::vector<double> d = {u(rng), u(rng), u(rng), u(rng)};
            const auto [dz1, dz2] = complexify_pairs({d[0], d[1], d[2], c * d[3]});
            CHECK(std::abs(minkowski_line_element(d, c) -
                           wick_twisted_pair_line_element(dz1, dz2, 1.0, 1.0)) < 1e-13);
        }
    }
}

TEST_CASE("wick chart") {
    const ChartMap w = wick_chart(2.5);
    CHECK_THROWS_AS(wick_chart(0.0), DomainError);
    const DMatrix j = jacobian(w, {0.1, 0.2, 0.3, 0.4});
    CHECK(j.at(0, 0) == 1.0);
    CHECK(j.at(3, 3) == 2.5);
    CHECK(j.at(0, 3) == 0.0);

    const MetricTensor g = pullback_metric(MetricTensor::identity(4), w, {0, 0, 0, 0});
    CHECK(metric_diff(g, MetricTensor::diagonal({1, 1, 1, -6.25})) < 1e-15);
    CHECK(signature(g) == SignatureTriple{3, 1, 0});

    const MetricTensor g1 = pullback_metric(MetricTensor::identity(4), wick_chart(1.0), {0, 0, 0, 0});
    CHECK(metric_diff(g1, MetricTensor::diagonal({1, 1, 1, -1})) < 1e-15);
}

TEST_CASE("hopf chart geometry") {
    const ChartMap h = hopf_chart(1.0);
    CHECK_THROWS_AS(hopf_chart(-1.0), DomainError);

    const auto x = h.map({0.0, 0.0, 0.0});
    CHECK(std::abs(x[0] - 1.0) < 1e-15);
    CHECK(std::abs(x[1]) + std::abs(x[2]) + std::abs(x[3]) < 1e-15);

    // image lies on the sphere of radius r
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    for (double r : {1.0, 2.0}) {
        const ChartMap hr = hopf_chart(r);
        for (int k = 0; k < 1000; ++k) {
            const Point p = {kPi * unit(rng), 2.0 * kPi * unit(rng), 4.0 * kPi * unit(rng)};
            const auto y = hr.map(p);
            const double norm2 = y[0] * y[0] + y[1] * y[1] + y[2] * y[2] + y[3] * y[3];
            CHECK(std::abs(norm2 - r * r) < 1e-14 * std::max(1.0, r * r));
        }
    }

    // pullback of the flat 4-metric at theta = pi/2 is diag(1/4, 1/4, 1/4)
    const MetricTensor g = pullback_metric(MetricTensor::identity(4), h, {kPi / 2.0, 0.3, 1.1});
    CHECK(metric_diff(g, MetricTensor::diagonal({0.25, 0.25, 0.25})) < 1e-8);

    // and matches the closed-form round metric elsewhere
    for (const Point& p : {Point{1.0, 0.5, 2.0}, Point{2.0, 4.0, 9.0}}) {
        const MetricTensor gp = pullback_metric(MetricTensor::identity(4), h, p);
        CHECK(metric_diff(gp, oracles::s3_round_metric(1.0, p[0])) < 1e-8);
    }
}

TEST_CASE("jacobian matches the closed-form oracle at 100 random interior points") {
    const ChartMap h = hopf_chart(1.3);
    std::mt19937_64 rng(23);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    int tested = 0;
    while (tested < 100) {
        const Point p = {0.2 + (kPi - 0.4) * unit(rng), 0.2 + 5.8 * unit(rng),
                         0.2 + 12.0 * unit(rng)};
        const DMatrix j = jacobian(h, p);
        const DMatrix want = oracles::hopf_jacobian(1.3, p[0], p[1], p[2]);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 3; ++b) CHECK(std::abs(j.at(a, b) - want.at(a, b)) < 1e-9);
        ++tested;
    }

    // linear charts are exact
    const DMatrix jw = jacobian(wick_chart(3.0), {1, 2, 3, 4});
    CHECK(jw.at(3, 3) == 3.0);
    const DMatrix ji = jacobian(identity_chart(3), {0.5, 0.5, 0.5});
    CHECK(ji.at(0, 0) == 1.0);
    CHECK(ji.at(0, 1) == 0.0);
}

TEST_CASE("rank-deficient chart points are diagnosed") {
    const ChartMap h = hopf_chart(1.0);
    CHECK_THROWS_AS(jacobian(h, {0.005, 1.0, 1.0}), NumericalError);
    CHECK_THROWS_AS(pullback_metric(MetricTensor::identity(4), h, {kPi - 0.001, 1.0, 1.0}),
                    NumericalError);
}

TEST_CASE("pullback basics") {
    // identity map returns the metric exactly
    MetricTensor g(3);
    g.at(0, 0) = 2.0;
    g.at(1, 1) = 3.0;
    g.at(2, 2) = 5.0;
    g.at(0, 1) = g.at(1, 0) = 0.5;
    CHECK(metric_diff(pullback_metric(g, identity_chart(3), {0, 0, 0}), g) == 0.0);

    // uniform scaling x -> 2x on R^2 pulls the flat metric to 4 I
    ChartMap scale2;
    scale2.name = "scale2";
    scale2.source = {{"x", -10, 10, false}, {"y", -10, 10, false}};
    scale2.target_dim = 2;
    scale2.map = [](const Point& p) { return std::vector<double>{2.0 * p[0], 2.0 * p[1]}; };
    const MetricTensor s = pullback_metric(MetricTensor::identity(2), scale2, {0.3, 0.4});
    CHECK(metric_diff(s, MetricTensor::diagonal({4.0, 4.0})) < 1e-9);

    CHECK_THROWS_AS(pullback_metric(MetricTensor::identity(3), scale2, {0, 0}), DomainError);
}

TEST_CASE("pullback functoriality under composition") {
    // a: (u,v) -> (u+0.2 v^2, v);  b: (p,q) -> (p q, p - q, 0.3 p^2)
    ChartMap a;
    a.name = "a";
    a.source = {{"u", -2, 2, false}, {"v", -2, 2, false}};
    a.target_dim = 2;
    a.map = [](const Point& p) { return std::vector<double>{p[0] + 0.2 * p[1] * p[1], p[1]}; };
    ChartMap b;
    b.name = "b";
    b.source = {{"p", -3, 3, false}, {"q", -3, 3, false}};
    b.target_dim = 3;
    b.map = [](const Point& p) {
        return std::vector<double>{p[0] * p[1], p[0] - p[1], 0.3 * p[0] * p[0]};
    };
    ChartMap ba;
    ba.name = "b(a)";
    ba.source = a.source;
    ba.target_dim = 3;
    ba.map = [amap = a.map, bmap = b.map](const Point& p) { return bmap(amap(p)); };

    MetricTensor target(3);
    target.at(0, 0) = 1.0;
    target.at(1, 1) = 2.0;
    target.at(2, 2) = 0.5;
    target.at(0, 2) = target.at(2, 0) = 0.1;

    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    for (int k = 0; k < 20; ++k) {
        const Point p = {u(rng), u(rng)};
        const MetricTensor direct = pullback_metric(target, ba, p);
        const MetricTensor mid = pullback_metric(target, b, a.map(p));
        ChartMap mid_field = a;  // pull the intermediate metric back through a
        const MetricTensor seq = pullback_metric(mid, mid_field, p);
        CHECK(metric_diff(direct, seq) < 1e-7);
    }
}

TEST_CASE("pullback outputs are symmetric") {
    std::mt19937_64 rng(41);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    const ChartMap h = hopf_chart(1.0);
    for (int k = 0; k < 50; ++k) {
        const Point p = {0.3 + (kPi - 0.6) * unit(rng), 6.0 * unit(rng), 12.0 * unit(rng)};
        const MetricTensor g = pullback_metric(MetricTensor::identity(4), h, p);
        CHECK(g.is_symmetric());
    }
}

TEST_CASE("chart loaded from a file behaves like the builtin") {
    std::ifstream f(std::string(QSGEOM_FAMILY_DIR) + "/wick.chart");
    REQUIRE(f.good());
    std::stringstream ss;
    ss << f.rdbuf();
    const ChartMap from_file = chart_from_definition(parse_chart_file(ss.str()), {{"c", 2.0}});
    const ChartMap builtin = wick_chart(2.0);
    const Point p = {0.4, -0.8, 1.2, 0.5};
    const auto y1 = from_file.map(p);
    const auto y2 = builtin.map(p);
    for (int i = 0; i < 4; ++i) CHECK(std::abs(y1[i] - y2[i]) < 1e-15);
    const MetricTensor g = pullback_metric(MetricTensor::identity(4), from_file, p);
    CHECK(metric_diff(g, MetricTensor::diagonal({1, 1, 1, -4})) < 1e-9);
}

TEST_CASE("free-radius hopf chart has a 4d source") {
    const ChartMap h = hopf_chart_free_r();
    CHECK(h.source_dim() == 4);
    const auto y = h.map({kPi / 2.0, 0.0, 0.0, 2.0});
    const double norm2 = y[0] * y[0] + y[1] * y[1] + y[2] * y[2] + y[3] * y[3];
    CHECK(std::abs(norm2 - 4.0) < 1e-14);
}
