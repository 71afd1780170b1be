#include "qsgeom/family.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qsg {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kWideBound = 1e6;

std::vector<ParamSpec> unbounded_params(std::initializer_list<const char*> names) {
    std::vector<ParamSpec> out;
    for (const char* n : names) out.push_back({n, -kWideBound, kWideBound, false});
    return out;
}

void check_point(const StateFamily& family, const Point& p) {
    if (static_cast<int>(p.size()) != family.param_dim()) {
        std::ostringstream os;
        os << "family '" << family.name << "' expects " << family.param_dim()
           << " coordinates, got " << p.size();
        throw DomainError(os.str());
    }
    for (std::size_t a = 0; a < p.size(); ++a) {
        if (!std::isfinite(p[a])) throw DomainError("non-finite coordinate");
        const auto& spec = family.parameters[a];
        if (p[a] < spec.lower || p[a] > spec.upper) {
            std::ostringstream os;
            os << "coordinate " << spec.name << "=" << p[a] << " outside ["
               << spec.lower << ", " << spec.upper << "]";
            throw DomainError(os.str());
        }
    }
}

double require_constant(const std::map<std::string, double>& constants, const std::string& name,
                        const std::string& family) {
    auto it = constants.find(name);
    if (it == constants.end())
        throw DomainError("family '" + family + "' is missing required constant '" + name + "'");
    return it->second;
}

}  // namespace

StateFamily constant_state_family(StateVector amplitudes) {
    if (amplitudes.empty()) throw DomainError("constant_state needs at least one amplitude");
    StateFamily fam;
    fam.name = "constant_state";
    fam.parameters = unbounded_params({"u", "v"});
    fam.state_dim = static_cast<int>(amplitudes.size());
    fam.eval = [amps = std::move(amplitudes)](const Point&) { return amps; };
    return fam;
}

StateFamily builtin_family(const std::string& name, const std::map<std::string, double>& constants) {
    StateFamily fam;
    fam.name = name;
    fam.constants = constants;

    if (name == "hopf_s3" || name == "hopf_s3_nohalf") {
        double r = 1.0;
        if (auto it = constants.find("r"); it != constants.end()) r = it->second;
        if (!(r > 0.0)) throw DomainError("hopf families need r > 0");
        fam.constants["r"] = r;
        fam.parameters = {{"theta", 0.0, kPi, false},
                          {"phi", 0.0, 2.0 * kPi, true},
                          {"chi", 0.0, 4.0 * kPi, true}};
        fam.state_dim = 2;
        const double expo_scale = (name == "hopf_s3") ? 0.5 : 1.0;
        fam.eval = [r, expo_scale](const Point& p) {
            const double theta = p[0], phi = p[1], chi = p[2];
            const Complex z1 = r * std::cos(theta / 2.0) *
                               std::exp(Complex(0.0, expo_scale * (chi + phi)));
            const Complex z2 = r * std::sin(theta / 2.0) *
                               std::exp(Complex(0.0, expo_scale * (chi - phi)));
            return StateVector{z1, z2};
        };
        return fam;
    }
    if (name == "bloch_cp1") {
        fam.parameters = {{"theta", 0.0, kPi, false}, {"phi", 0.0, 2.0 * kPi, true}};
        fam.state_dim = 2;
        fam.eval = [](const Point& p) {
            const double theta = p[0], phi = p[1];
            return StateVector{Complex(std::cos(theta / 2.0), 0.0),
                               std::sin(theta / 2.0) * std::exp(Complex(0.0, phi))};
        };
        return fam;
    }
    if (name == "plane_wave") {
        const double k = require_constant(constants, "k", name);
        const double omega = require_constant(constants, "omega", name);
        fam.parameters = unbounded_params({"z", "t"});
        fam.state_dim = 1;
        fam.eval = [k, omega](const Point& p) {
            return StateVector{std::exp(Complex(0.0, k * p[0] - omega * p[1]))};
        };
        return fam;
    }
    if (name == "constant_state") {
        StateVector amps;
        for (int idx = 0;; ++idx) {
            auto re = constants.find("re" + std::to_string(idx));
            auto im = constants.find("im" + std::to_string(idx));
            if (re == constants.end() && im == constants.end()) break;
            amps.emplace_back(re == constants.end() ? 0.0 : re->second,
                              im == constants.end() ? 0.0 : im->second);
        }
        if (amps.empty()) amps = {Complex(1.0, 0.0)};
        StateFamily out = constant_state_family(std::move(amps));
        out.constants = constants;
        return out;
    }
    throw DomainError("unknown built-in family '" + name + "'");
}

StateFamily family_from_definition(const FamilyDefinition& def,
                                   const std::map<std::string, double>& constant_overrides) {
    StateFamily fam;
    fam.name = def.name;
    fam.parameters = def.parameters;
    fam.state_dim = static_cast<int>(def.components.size());
    fam.constants = def.constants;
    for (const auto& [k, v] : constant_overrides) fam.constants[k] = v;

    auto components = def.components;
    auto constants = fam.constants;
    auto params = def.parameters;
    fam.eval = [components, constants, params](const Point& p) {
        std::map<std::string, Complex> bindings;
        for (const auto& [k, v] : constants) bindings[k] = Complex(v, 0.0);
        for (std::size_t a = 0; a < params.size(); ++a) bindings[params[a].name] = Complex(p[a], 0.0);
        StateVector out;
        out.reserve(components.size());
        for (const auto& comp : components) out.push_back(eval_expression(*comp, bindings));
        return out;
    };
    return fam;
}

StateVector evaluate_state(const StateFamily& family, const Point& p) {
    check_point(family, p);
    StateVector psi = family.eval(p);
    for (const Complex& v : psi)
        if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
            throw NumericalError("state evaluation produced a non-finite amplitude");
    return psi;
}

StateVector differentiate_state(const StateFamily& family, const Point& p, int axis,
                                const DifferentiationScheme& scheme) {
    check_point(family, p);
    scheme.validate();
    if (axis < 0 || axis >= family.param_dim())
        throw DomainError("derivative axis out of range");

    const auto& spec = family.parameters[axis];
    const double step = scheme.step_for(axis, p[axis]);
    const double extent = scheme.stencil_halfwidth() * step;
    if (p[axis] - extent < spec.lower || p[axis] + extent > spec.upper) {
        std::ostringstream os;
        os << "stencil of halfwidth " << extent << " leaves the declared bounds of "
           << spec.name;
        throw DomainError(os.str());
    }

    return fd_derivative([&family](const Point& q) { return family.eval(q); }, p, axis, scheme);
}

Complex inner_product(const StateVector& a, const StateVector& b) {
    if (a.size() != b.size()) throw DomainError("inner_product length mismatch");
    Complex acc{};
    for (std::size_t i = 0; i < a.size(); ++i) acc += std::conj(a[i]) * b[i];
    return acc;
}

}  // namespace qsg
