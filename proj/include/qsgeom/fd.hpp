#pragma once

#include <cmath>
#include <cstdlib>
#include <map>
#include <vector>

#include "qsgeom/errors.hpp"

namespace qsg {

enum class FdKind { Central2, Central4, Richardson };

/// Finite-difference configuration.  The effective step along an axis is
/// (override or h) * max(1, |coordinate|); Richardson runs central-2 at
/// h, h/2, ... over `richardson_levels` levels and extrapolates.
struct DifferentiationScheme {
    FdKind kind = FdKind::Central4;
    double h = 1e-3;
    int richardson_levels = 3;
    std::map<int, double> per_axis_h;

    double base_step(int axis) const {
        auto it = per_axis_h.find(axis);
        return it == per_axis_h.end() ? h : it->second;
    }

    double step_for(int axis, double coordinate) const {
        return base_step(axis) * std::max(1.0, std::abs(coordinate));
    }

    /// Farthest stencil offset from the center, in multiples of the step.
    int stencil_halfwidth() const {
        switch (kind) {
            case FdKind::Central2: return 1;
            case FdKind::Central4: return 2;
            case FdKind::Richardson: return 1;  // widest level is the base step
        }
        return 2;
    }

    int order() const { return kind == FdKind::Central2 ? 2 : 4; }

    void validate() const {
        if (!(h > 0.0)) throw DomainError("differentiation step h must be > 0");
        if (kind == FdKind::Richardson && richardson_levels < 2)
            throw DomainError("richardson extrapolation needs >= 2 levels");
        for (const auto& [axis, step] : per_axis_h)
            if (!(step > 0.0)) throw DomainError("per-axis step must be > 0");
    }
};

namespace detail {

template <class Vec>
Vec axpy(double alpha, const Vec& x, const Vec& y) {  // alpha*x + y
    Vec out = y;
    for (std::size_t i = 0; i < x.size(); ++i) out[i] += alpha * x[i];
    return out;
}

template <class Vec>
Vec scaled(double alpha, const Vec& x) {
    Vec out = x;
    for (auto& v : out) v *= alpha;
    return out;
}

}  // namespace detail

/// d f / d x_axis of a vector-valued f at p, one axis at a time.
template <class F>
auto fd_derivative(F&& f, std::vector<double> p, int axis, const DifferentiationScheme& scheme)
    -> decltype(f(p)) {
    scheme.validate();
    const double x0 = p[axis];
    const double step = scheme.step_for(axis, x0);
    auto eval_at = [&](double offset) {
        p[axis] = x0 + offset;
        return f(p);
    };

    using Vec = decltype(f(p));
    auto central2 = [&](double hh) -> Vec {
        Vec plus = eval_at(hh);
        Vec minus = eval_at(-hh);
        return detail::axpy(-1.0 / (2.0 * hh), minus, detail::scaled(1.0 / (2.0 * hh), plus));
    };

    switch (scheme.kind) {
        case FdKind::Central2:
            return central2(step);
        case FdKind::Central4: {
            Vec p1 = eval_at(step);
            Vec m1 = eval_at(-step);
            Vec p2 = eval_at(2.0 * step);
            Vec m2 = eval_at(-2.0 * step);
            Vec out = detail::scaled(8.0 / (12.0 * step), p1);
            out = detail::axpy(-8.0 / (12.0 * step), m1, out);
            out = detail::axpy(-1.0 / (12.0 * step), p2, out);
            out = detail::axpy(1.0 / (12.0 * step), m2, out);
            return out;
        }
        case FdKind::Richardson: {
            const int levels = scheme.richardson_levels;
            std::vector<Vec> row(levels);
            double hh = step;
            for (int l = 0; l < levels; ++l, hh *= 0.5) row[l] = central2(hh);
            // Romberg-style table; central-2 error expands in h^2.
            for (int j = 1; j < levels; ++j) {
                const double w = std::pow(4.0, j);
                for (int l = levels - 1; l >= j; --l) {
                    row[l] = detail::scaled(1.0 / (w - 1.0),
                                            detail::axpy(-1.0, row[l - 1], detail::scaled(w, row[l])));
                }
            }
            return row[levels - 1];
        }
    }
    throw DomainError("unknown differentiation kind");
}

}  // namespace qsg
