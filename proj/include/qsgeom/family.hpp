#pragma once

#include <complex>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qsgeom/expr.hpp"
#include "qsgeom/fd.hpp"

namespace qsg {

/// Ordered real coordinates in a family's or chart's parameter chart.
using Point = std::vector<double>;

/// Ordered complex amplitudes; not required to be normalized.
using StateVector = std::vector<Complex>;

/// A smooth map from a real parameter chart to a complex state vector.
/// Immutable after construction; evaluation is pure and reentrant.
struct StateFamily {
    std::string name;
    std::vector<ParamSpec> parameters;  // chart dimension and bounds
    int state_dim = 0;
    std::map<std::string, double> constants;
    std::function<StateVector(const Point&)> eval;

    int param_dim() const { return static_cast<int>(parameters.size()); }
};

/// Built-in names: hopf_s3, hopf_s3_nohalf, bloch_cp1, plane_wave,
/// constant_state.  plane_wave requires constants k and omega; hopf takes an
/// optional radius r (default 1); constant_state reads amplitude pairs
/// re0/im0, re1/im1, ... (default vector {1}).
StateFamily builtin_family(const std::string& name,
                           const std::map<std::string, double>& constants = {});

StateFamily family_from_definition(const FamilyDefinition& def,
                                   const std::map<std::string, double>& constant_overrides = {});

StateFamily constant_state_family(StateVector amplitudes);

/// Throws DomainError outside the closed coordinate box, NumericalError on a
/// non-finite result.
StateVector evaluate_state(const StateFamily& family, const Point& p);

/// Componentwise numerical derivative along one chart axis.  The full
/// stencil must stay inside the declared bounds.
StateVector differentiate_state(const StateFamily& family, const Point& p, int axis,
                                const DifferentiationScheme& scheme = {});

/// <a|b> = sum conj(a_i) b_i, antilinear in the first slot.
Complex inner_product(const StateVector& a, const StateVector& b);

}  // namespace qsg
