// qsgeom command-line front end: state-family metrics, curvature scans, grid
// sweeps, and the built-in verification pipeline.
//
// Exit codes: 0 success, 1 verification failure, 2 configuration error,
// 3 numerical failure.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qsgeom/charts.hpp"
#include "qsgeom/curvature.hpp"
#include "qsgeom/errors.hpp"
#include "qsgeom/expr.hpp"
#include "qsgeom/family.hpp"
#include "qsgeom/quantum_metric.hpp"

using json = nlohmann::json;
using namespace qsg;

namespace {

constexpr const char* kVersion = "0.1.0";

double checked(double v) {
    if (!std::isfinite(v)) throw NumericalError("report value is not finite");
    return v;
}

std::string fmt17(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", checked(v));
    return buf;
}

json matrix_json(const MetricTensor& g) {
    json rows = json::array();
    for (int i = 0; i < g.dim; ++i) {
        json row = json::array();
        for (int j = 0; j < g.dim; ++j) row.push_back(checked(g.at(i, j)));
        rows.push_back(row);
    }
    return rows;
}

json qgt_json(const HermitianTensor& q) {
    json rows = json::array();
    for (int i = 0; i < q.dim; ++i) {
        json row = json::array();
        for (int j = 0; j < q.dim; ++j)
            row.push_back(json::array({checked(q.at(i, j).real()), checked(q.at(i, j).imag())}));
        rows.push_back(row);
    }
    return rows;
}

json signature_json(const SignatureTriple& s) {
    return json{{"plus", s.n_plus}, {"minus", s.n_minus}, {"zero", s.n_zero}};
}

json point_json(const Point& p) {
    json a = json::array();
    for (double v : p) a.push_back(checked(v));
    return a;
}

void emit(const json& doc, const std::string& out_path) {
    const std::string text = doc.dump(2) + "\n";
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw DomainError("cannot open output file '" + out_path + "'");
    f << text;
}

void emit_text(const std::string& text, const std::string& out_path) {
    if (out_path.empty() || out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream f(out_path, std::ios::binary);
    if (!f) throw DomainError("cannot open output file '" + out_path + "'");
    f << text;
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw DomainError("cannot read file '" + path + "'");
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

std::vector<double> parse_csv_doubles(const std::string& text, const std::string& what) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string item;
    while (std::getline(ss, item, ',')) {
        try {
            std::size_t used = 0;
            out.push_back(std::stod(item, &used));
            while (used < item.size() && std::isspace(static_cast<unsigned char>(item[used])))
                ++used;
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::exception&) {
            throw DomainError("malformed number '" + item + "' in " + what);
        }
    }
    return out;
}

std::map<std::string, double> parse_const_args(const std::vector<std::string>& args) {
    std::map<std::string, double> out;
    for (const auto& kv : args) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw DomainError("constant must look like name=value, got '" + kv + "'");
        const std::string name = kv.substr(0, eq);
        const auto vals = parse_csv_doubles(kv.substr(eq + 1), "constant " + name);
        if (vals.size() != 1) throw DomainError("constant " + name + " needs one value");
        out[name] = vals[0];
    }
    return out;
}

struct SchemeOptions {
    double h = 1e-3;
    int order = 4;

    DifferentiationScheme scheme() const {
        DifferentiationScheme s;
        if (order == 2)
            s.kind = FdKind::Central2;
        else if (order == 4)
            s.kind = FdKind::Central4;
        else
            throw DomainError("order must be 2 or 4");
        s.h = h;
        s.validate();
        return s;
    }

    void attach(CLI::App* cmd) {
        cmd->set_help_flag("--help", "print this help message and exit");
        cmd->add_option("--h", h, "finite-difference step (default 1e-3)");
        cmd->add_option("--order", order, "stencil order, 2 or 4 (default 4)");
    }
};

json meta_json(const SchemeOptions& opts, std::optional<std::uint64_t> seed = {}) {
    json m{{"version", kVersion}, {"scheme", {{"h", checked(opts.h)}, {"order", opts.order}}}};
    if (seed) m["seed"] = *seed;
    return m;
}

StateFamily resolve_family(const std::string& name, const std::string& file,
                           const std::map<std::string, double>& constants) {
    if (name.empty() == file.empty())
        throw DomainError("give exactly one of --family or --file");
    if (!file.empty())
        return family_from_definition(parse_family_file(read_file(file)), constants);
    return builtin_family(name, constants);
}

// ---------------------------------------------------------------------------
// metric
// ---------------------------------------------------------------------------

struct MetricOptions {
    std::string family, file, convention = "projective", out = "-";
    std::vector<std::string> consts, points;
    SchemeOptions scheme;
};

int run_metric(const MetricOptions& opt) {
    StateFamily fam = resolve_family(opt.family, opt.file, parse_const_args(opt.consts));
    const Convention conv = convention_from_name(opt.convention);
    if (opt.points.empty()) throw DomainError("metric needs at least one --point");

    json entries = json::array();
    for (const auto& text : opt.points) {
        const Point p = parse_csv_doubles(text, "--point");
        if (static_cast<int>(p.size()) != fam.param_dim())
            throw DomainError("--point has " + std::to_string(p.size()) +
                              " coordinates, family '" + fam.name + "' expects " +
                              std::to_string(fam.param_dim()));
        const HermitianTensor q = qgt(fam, p, opt.scheme.scheme(), conv);
        entries.push_back(json{{"point", point_json(p)},
                               {"qgt", qgt_json(q)},
                               {"real_part", matrix_json(q.real_part())},
                               {"signature", signature_json(signature(q.real_part()))}});
    }

    json doc{{"meta", meta_json(opt.scheme)},
             {"family", fam.name},
             {"convention", opt.convention},
             {"points", entries}};
    emit(doc, opt.out);
    return 0;
}

// ---------------------------------------------------------------------------
// curvature
// ---------------------------------------------------------------------------

struct FieldOptions {
    std::string assemble, builtin, pullback, chart_file;
    double r = 1.0, c = 1.0;

    MetricField resolve(const DifferentiationScheme& scheme) const {
        const int sources = !assemble.empty() + !builtin.empty() + !pullback.empty() +
                            !chart_file.empty();
        if (sources != 1)
            throw DomainError(
                "give exactly one of --assemble, --builtin, --pullback, --chart-file");
        if (!assemble.empty()) {
            const auto v = parse_csv_doubles(assemble, "--assemble");
            if (v.size() != 3) throw DomainError("--assemble needs g11,g22,c");
            return constant_field(assemble_real_metric(v[0], v[1], v[2]));
        }
        if (!builtin.empty()) return builtin_metric_field(builtin);
        if (!pullback.empty()) {
            ChartMap chart;
            if (pullback == "hopf")
                chart = hopf_chart(r);
            else if (pullback == "wick")
                chart = wick_chart(c);
            else
                throw DomainError("--pullback accepts hopf or wick");
            return pullback_field(MetricTensor::identity(chart.target_dim), chart, scheme);
        }
        ChartMap chart = chart_from_definition(parse_chart_file(read_file(chart_file)));
        return pullback_field(MetricTensor::identity(chart.target_dim), chart, scheme);
    }

    void attach(CLI::App* cmd) {
        cmd->add_option("--assemble", assemble, "constant field diag(g11,g11,g22,-c^2*g22)");
        cmd->add_option("--builtin", builtin, "built-in field: sphere2, polar2, s3_round");
        cmd->add_option("--pullback", pullback, "flat-metric pullback through a chart: hopf, wick");
        cmd->add_option("--chart-file", chart_file, "pullback through a chart definition file");
        cmd->add_option("--r", r, "radius for --pullback hopf (default 1)");
        cmd->add_option("--c", c, "speed constant for --pullback wick (default 1)");
    }
};

struct CurvatureOptions {
    FieldOptions field;
    int points = 50;
    double tol = 1e-6;
    std::uint64_t seed = 1;
    std::string out = "-";
    SchemeOptions scheme;
};

json curvature_report_json(const CurvatureReport& rep, const std::string& field_name) {
    json pts = json::array();
    for (const auto& rec : rep.points)
        pts.push_back(json{{"point", point_json(rec.p)},
                           {"max_abs_riemann", checked(rec.max_abs_riemann)},
                           {"scalar", checked(rec.scalar)}});
    return json{{"field", field_name},
                {"points", pts},
                {"global_max", checked(rep.global_max)},
                {"flat", rep.flat},
                {"tol", checked(rep.tol)},
                {"seed", rep.seed}};
}

int run_curvature(const CurvatureOptions& opt) {
    const DifferentiationScheme scheme = opt.scheme.scheme();
    const MetricField field = opt.field.resolve(scheme);
    const CurvatureReport rep = flatness_scan(field, opt.points, opt.tol, opt.seed, scheme);

    json doc = curvature_report_json(rep, field.name);
    doc["meta"] = meta_json(opt.scheme, opt.seed);
    emit(doc, opt.out);
    return 0;
}

// ---------------------------------------------------------------------------
// grid
// ---------------------------------------------------------------------------

struct AxisSpec {
    std::string name;
    double lo = 0, hi = 0;
    int count = 1;
};

AxisSpec parse_axis(const std::string& text) {
    auto eq = text.find('=');
    if (eq == std::string::npos) throw DomainError("--axis must look like name=min:max:count");
    AxisSpec ax;
    ax.name = text.substr(0, eq);
    const std::string rest = text.substr(eq + 1);
    std::vector<std::string> parts;
    std::stringstream ss(rest);
    std::string item;
    while (std::getline(ss, item, ':')) parts.push_back(item);
    if (parts.size() != 3) throw DomainError("--axis must look like name=min:max:count");
    ax.lo = parse_csv_doubles(parts[0], "--axis")[0];
    ax.hi = parse_csv_doubles(parts[1], "--axis")[0];
    ax.count = static_cast<int>(parse_csv_doubles(parts[2], "--axis")[0]);
    if (ax.count < 1) throw DomainError("--axis count must be >= 1");
    return ax;
}

struct GridOptions {
    std::string family, file, convention = "projective", format = "csv", out = "-";
    std::vector<std::string> consts, axes, pins, observables;
    FieldOptions field;
    SchemeOptions scheme;
};

struct Observable {
    std::string label;
    std::function<double(const Point&)> eval;
};

int run_grid(const GridOptions& opt) {
    const DifferentiationScheme scheme = opt.scheme.scheme();
    if (opt.axes.empty() || opt.axes.size() > 2)
        throw DomainError("grid needs 1 or 2 --axis specs (other axes pinned)");
    if (opt.observables.empty()) throw DomainError("grid needs at least one --observable");
    if (opt.format != "csv" && opt.format != "json")
        throw DomainError("--format must be csv or json");

    std::vector<AxisSpec> axes;
    for (const auto& a : opt.axes) axes.push_back(parse_axis(a));
    std::map<std::string, double> pins;
    for (const auto& p : opt.pins) {
        auto kv = parse_const_args({p});
        pins.insert(kv.begin(), kv.end());
    }

    // resolve the source: a state family or a metric field
    const bool family_source = !opt.family.empty() || !opt.file.empty();
    StateFamily fam;
    MetricField field;
    std::vector<ParamSpec> chart_params;
    if (family_source) {
        fam = resolve_family(opt.family, opt.file, parse_const_args(opt.consts));
        chart_params = fam.parameters;
    } else {
        field = opt.field.resolve(scheme);
        chart_params = field.domain;
    }

    // map axis/pin names onto chart coordinates
    std::vector<int> axis_index;
    for (const auto& ax : axes) {
        int found = -1;
        for (std::size_t i = 0; i < chart_params.size(); ++i)
            if (chart_params[i].name == ax.name) found = static_cast<int>(i);
        if (found < 0) throw DomainError("unknown axis '" + ax.name + "'");
        axis_index.push_back(found);
    }
    Point base(chart_params.size(), 0.0);
    std::vector<bool> covered(chart_params.size(), false);
    for (std::size_t i = 0; i < chart_params.size(); ++i) {
        if (auto it = pins.find(chart_params[i].name); it != pins.end()) {
            base[i] = it->second;
            covered[i] = true;
        }
    }
    for (std::size_t k = 0; k < axes.size(); ++k) covered[axis_index[k]] = true;
    for (std::size_t i = 0; i < chart_params.size(); ++i)
        if (!covered[i])
            throw DomainError("coordinate '" + chart_params[i].name +
                              "' is neither an --axis nor pinned with --pin");

    const Convention conv = convention_from_name(opt.convention);

    auto parse_pair = [](const std::string& spec, const std::string& head) {
        const auto v = parse_csv_doubles(spec.substr(head.size()), "--observable " + spec);
        if (v.size() != 2) throw DomainError("observable " + head + " needs two indices");
        return std::pair<int, int>{static_cast<int>(v[0]), static_cast<int>(v[1])};
    };

    std::vector<Observable> obs;
    for (const auto& spec : opt.observables) {
        Observable o;
        // index pairs are written a,b on the command line; keep column labels
        // free of the csv separator
        o.label = spec;
        for (auto& ch : o.label)
            if (ch == ',') ch = ':';
        if (family_source) {
            if (spec.rfind("reQ:", 0) == 0) {
                auto [a, b] = parse_pair(spec, "reQ:");
                o.eval = [=, &fam](const Point& p) {
                    return qgt(fam, p, scheme, conv).at(a, b).real();
                };
            } else if (spec.rfind("imQ:", 0) == 0) {
                auto [a, b] = parse_pair(spec, "imQ:");
                o.eval = [=, &fam](const Point& p) {
                    return qgt(fam, p, scheme, conv).at(a, b).imag();
                };
            } else if (spec == "sig_plus" || spec == "sig_minus" || spec == "sig_zero") {
                o.eval = [=, &fam](const Point& p) {
                    const SignatureTriple s = signature(qgt(fam, p, scheme, conv).real_part());
                    return static_cast<double>(spec == "sig_plus"    ? s.n_plus
                                               : spec == "sig_minus" ? s.n_minus
                                                                     : s.n_zero);
                };
            } else if (spec == "scalar_curv") {
                // scalar curvature of the real-part QGT metric field
                MetricField qfield;
                qfield.name = "qgt(" + fam.name + ")";
                qfield.dim = fam.param_dim();
                qfield.domain = fam.parameters;
                qfield.eval = [&fam, scheme, conv](const Point& p) {
                    return qgt(fam, p, scheme, conv).real_part();
                };
                o.eval = [qfield, scheme](const Point& p) {
                    return riemann(qfield, p, scheme).scalar;
                };
            } else {
                throw DomainError("unknown family observable '" + spec +
                                  "' (reQ:a,b imQ:a,b sig_plus sig_minus sig_zero scalar_curv)");
            }
        } else {
            if (spec.rfind("g:", 0) == 0) {
                auto [a, b] = parse_pair(spec, "g:");
                o.eval = [=, &field](const Point& p) { return field.eval(p).at(a, b); };
            } else if (spec == "sig_plus" || spec == "sig_minus" || spec == "sig_zero") {
                o.eval = [=, &field](const Point& p) {
                    const SignatureTriple s = signature(field.eval(p));
                    return static_cast<double>(spec == "sig_plus"    ? s.n_plus
                                               : spec == "sig_minus" ? s.n_minus
                                                                     : s.n_zero);
                };
            } else if (spec == "scalar_curv") {
                o.eval = [&field, scheme](const Point& p) {
                    return riemann(field, p, scheme).scalar;
                };
            } else {
                throw DomainError("unknown field observable '" + spec +
                                  "' (g:a,b sig_plus sig_minus sig_zero scalar_curv)");
            }
        }
        obs.push_back(std::move(o));
    }

    auto axis_value = [](const AxisSpec& ax, int i) {
        return ax.count == 1 ? ax.lo : ax.lo + (ax.hi - ax.lo) * i / (ax.count - 1);
    };

    std::vector<std::vector<double>> rows;
    const int n0 = axes[0].count;
    const int n1 = axes.size() == 2 ? axes[1].count : 1;
    for (int i = 0; i < n0; ++i) {
        for (int j = 0; j < n1; ++j) {
            Point p = base;
            p[axis_index[0]] = axis_value(axes[0], i);
            if (axes.size() == 2) p[axis_index[1]] = axis_value(axes[1], j);
            std::vector<double> row;
            row.push_back(p[axis_index[0]]);
            if (axes.size() == 2) row.push_back(p[axis_index[1]]);
            for (const auto& o : obs) row.push_back(o.eval(p));
            rows.push_back(std::move(row));
        }
    }

    std::vector<std::string> header;
    for (const auto& ax : axes) header.push_back(ax.name);
    for (const auto& o : obs) header.push_back(o.label);

    if (opt.format == "csv") {
        std::ostringstream os;
        for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
        os << "\n";
        for (const auto& row : rows) {
            for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << fmt17(row[i]);
            os << "\n";
        }
        emit_text(os.str(), opt.out);
    } else {
        json jrows = json::array();
        for (const auto& row : rows) {
            json r = json::array();
            for (double v : row) r.push_back(checked(v));
            jrows.push_back(r);
        }
        json doc{{"meta", meta_json(opt.scheme)}, {"columns", header}, {"rows", jrows}};
        emit(doc, opt.out);
    }
    return 0;
}

// ---------------------------------------------------------------------------
// parse (family-file lint)
// ---------------------------------------------------------------------------

int run_parse(const std::string& path, const std::string& out) {
    const std::string text = read_file(path);

    // route on the header keyword so diagnostics come from the right parser
    bool is_chart = false;
    {
        std::istringstream in(text);
        std::string line;
        while (std::getline(in, line)) {
            const auto hash = line.find('#');
            if (hash != std::string::npos) line.erase(hash);
            std::istringstream ls(line);
            std::string kw;
            if (ls >> kw) {
                is_chart = (kw == "chart");
                break;
            }
        }
    }

    json doc;
    auto params_json = [](const std::vector<ParamSpec>& ps) {
        json params = json::array();
        for (const auto& p : ps)
            params.push_back(json{{"name", p.name},
                                  {"lower", checked(p.lower)},
                                  {"upper", checked(p.upper)},
                                  {"upper_open", p.upper_open}});
        return params;
    };
    auto comps_json = [](const std::vector<ExprPtr>& cs) {
        json comps = json::array();
        for (const auto& c : cs) comps.push_back(canonical_print(*c));
        return comps;
    };

    if (is_chart) {
        const ChartDefinition def = parse_chart_file(text);
        doc["kind"] = "chart";
        doc["name"] = def.name;
        doc["parameters"] = params_json(def.parameters);
        doc["components"] = comps_json(def.components);
        doc["target_dim"] = 2 * static_cast<int>(def.components.size());
        json tw = json::array();
        for (int s : def.twist) tw.push_back(s);
        doc["twist"] = tw;
    } else {
        const FamilyDefinition def = parse_family_file(text);
        doc["kind"] = "family";
        doc["name"] = def.name;
        doc["parameters"] = params_json(def.parameters);
        doc["components"] = comps_json(def.components);
        json consts = json::object();
        for (const auto& [k, v] : def.constants) consts[k] = checked(v);
        doc["constants"] = consts;
    }
    doc["ok"] = true;
    emit(doc, out);
    return 0;
}

// ---------------------------------------------------------------------------
// verify-paper
// ---------------------------------------------------------------------------

struct VerifyOptions {
    double c = 1.0;
    std::uint64_t seed = 1;
    std::string out = "-";
    bool break_eta = false;
    SchemeOptions scheme;
};

struct CheckResult {
    std::string name, description, anchor;
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

int run_verify(const VerifyOptions& opt) {
    const DifferentiationScheme scheme = opt.scheme.scheme();
    std::vector<CheckResult> checks;
    std::mt19937_64 rng(opt.seed);
    std::uniform_real_distribution<double> sym(-1.0, 1.0);
    std::uniform_real_distribution<double> unit(0.0, 1.0);

    // (a) flat 4-space line element vs twisted complex-pair form
    {
        CheckResult cr;
        cr.name = "minkowski_complex_pair_identity";
        cr.description =
            "line element dx^2+dy^2+dz^2-c^2 dt^2 equals the twisted complex-pair form "
            "g11 |dZ1|^2 + g22 re(dZ2^2) with g11=g22=1 over random displacements";
        cr.anchor = "flat line element vs paired complex coordinates";
        cr.tolerance = 1e-13;
        std::vector<double> cs = {1.0, 2.5};
        if (opt.c != 1.0 && opt.c != 2.5) cs.push_back(opt.c);
        double worst = 0.0;
        for (double c : cs) {
            const ChartMap wick = wick_chart(c);
            for (int k = 0; k < 1000; ++k) {
                const Point d = {sym(rng), sym(rng), sym(rng), sym(rng)};
                const DMatrix j = jacobian(wick, {0, 0, 0, 0}, scheme);
                std::array<double, 4> twisted{};
                for (int a = 0; a < 4; ++a)
                    for (int b = 0; b < 4; ++b) twisted[a] += j.at(a, b) * d[b];
                const auto [dz1, dz2] = complexify_pairs(twisted);
                const double lhs = minkowski_line_element(d, c);
                const double rhs = wick_twisted_pair_line_element(dz1, dz2, 1.0, 1.0);
                worst = std::max(worst, std::abs(lhs - rhs));
            }
        }
        cr.residual = worst;
        cr.pass = worst < cr.tolerance;
        checks.push_back(cr);
    }

    // (b) |Z1|^2 + |Z2|^2 = r^2 on the three-sphere family
    {
        CheckResult cr;
        cr.name = "s3_norm_identity";
        cr.description = "hopf_s3 state norm <Psi|Psi> equals r^2 at random chart points";
        cr.anchor = "three-sphere norm identity";
        cr.tolerance = 1e-14;
        const StateFamily fam = builtin_family("hopf_s3", {{"r", 1.0}});
        double worst = 0.0;
        for (int k = 0; k < 1000; ++k) {
            Point p(3);
            for (int a = 0; a < 3; ++a) {
                const auto& spec = fam.parameters[a];
                p[a] = spec.lower + (spec.upper - spec.lower) * unit(rng);
            }
            const StateVector psi = evaluate_state(fam, p);
            worst = std::max(worst, std::abs(inner_product(psi, psi).real() - 1.0));
        }
        cr.residual = worst;
        cr.pass = worst < cr.tolerance;
        checks.push_back(cr);
    }

    // (c) eta equalities of the assembled diagonal metric
    {
        CheckResult cr;
        cr.name = "eta_equalities";
        cr.description =
            "assembled diag(g11,g11,g22,-c^2 g22) satisfies eta11=eta22 and eta33=eta44 for "
            "unit and random positive coefficients";
        cr.anchor = "diagonal metric element equalities";
        cr.tolerance = 1e-12;
        double worst = 0.0;
        bool all_pass = true;
        for (int k = 0; k < 101; ++k) {
            double g11 = 1.0, g22 = 1.0, c = opt.c;
            if (k > 0) {
                g11 = 0.1 + 9.9 * unit(rng);
                g22 = 0.1 + 9.9 * unit(rng);
                c = 0.1 + 9.9 * unit(rng);
            }
            MetricTensor g = assemble_real_metric(g11, g22, c);
            if (opt.break_eta && k == 0) g.at(1, 1) += 1e-3;  // test hook: negative control
            const EtaReport rep = eta_coefficients(g, c, cr.tolerance);
            worst = std::max({worst, rep.residual12, rep.residual34});
            all_pass = all_pass && rep.pass;
        }
        cr.residual = worst;
        cr.pass = all_pass && worst < cr.tolerance;
        checks.push_back(cr);
    }

    // (d) Lorentzian signature of the assembled metric
    {
        CheckResult cr;
        cr.name = "lorentzian_signature";
        cr.description = "signature of diag(1,1,1,-1) is (3,1,0)";
        cr.anchor = "metric signature (+,+,+,-)";
        cr.tolerance = 0.0;
        const SignatureTriple s = signature(assemble_real_metric(1.0, 1.0, 1.0));
        cr.residual = (s == SignatureTriple{3, 1, 0}) ? 0.0 : 1.0;
        cr.pass = cr.residual == 0.0;
        checks.push_back(cr);
    }

    // (e) constant-coefficient metric field is flat
    {
        CheckResult cr;
        cr.name = "constant_metric_flatness";
        cr.description =
            "flatness scan of the constant assembled metric: max |R^a_bcd| below tolerance";
        cr.anchor = "vanishing curvature of constant coefficients";
        cr.tolerance = 1e-6;
        const MetricField field = constant_field(assemble_real_metric(1.0, 1.0, opt.c));
        const CurvatureReport rep = flatness_scan(field, 50, cr.tolerance, opt.seed, scheme);
        cr.residual = rep.global_max;
        cr.pass = rep.flat;
        checks.push_back(cr);
    }

    // (f) projective gauge invariance spot check
    {
        CheckResult cr;
        cr.name = "projective_gauge_invariance";
        cr.description =
            "multiplying the state by exp(i alpha(params)) with a random quadratic alpha "
            "leaves the projective tensor unchanged";
        cr.anchor = "ray-space phase invariance";
        cr.tolerance = 1e-6;
        const StateFamily base = builtin_family("bloch_cp1");
        const double a0 = sym(rng), a1 = sym(rng), a2 = sym(rng), a11 = sym(rng),
                     a12 = sym(rng), a22 = sym(rng);
        StateFamily gauged = base;
        gauged.eval = [base, a0, a1, a2, a11, a12, a22](const Point& p) {
            const double alpha = a0 + a1 * p[0] + a2 * p[1] + a11 * p[0] * p[0] +
                                 a12 * p[0] * p[1] + a22 * p[1] * p[1];
            StateVector psi = base.eval(p);
            const Complex phase = std::exp(Complex(0.0, alpha));
            for (auto& v : psi) v *= phase;
            return psi;
        };
        double worst = 0.0;
        const std::vector<Point> pts = {{1.1, 0.7}, {2.0, 3.1}, {0.6, 5.2}};
        for (const auto& p : pts) {
            const HermitianTensor q0 = qgt(base, p, scheme, Convention::Projective);
            const HermitianTensor q1 = qgt(gauged, p, scheme, Convention::Projective);
            for (int i = 0; i < q0.dim; ++i)
                for (int j = 0; j < q0.dim; ++j)
                    worst = std::max(worst, std::abs(q0.at(i, j) - q1.at(i, j)));
        }
        cr.residual = worst;
        cr.pass = worst < cr.tolerance;
        checks.push_back(cr);
    }

    bool overall = true;
    json jchecks = json::array();
    for (const auto& cr : checks) {
        overall = overall && cr.pass;
        jchecks.push_back(json{{"name", cr.name},
                               {"description", cr.description},
                               {"anchor", cr.anchor},
                               {"residual", checked(cr.residual)},
                               {"tolerance", checked(cr.tolerance)},
                               {"pass", cr.pass}});
        std::cout << (cr.pass ? "[PASS] " : "[FAIL] ") << cr.name
                  << "  residual=" << fmt17(cr.residual) << "  tol=" << fmt17(cr.tolerance)
                  << "\n";
    }
    std::cout << (overall ? "overall: PASS" : "overall: FAIL") << " (" << checks.size()
              << " checks)\n";

    json doc{{"meta", meta_json(opt.scheme, opt.seed)},
             {"c", checked(opt.c)},
             {"checks", jchecks},
             {"overall_pass", overall}};
    emit(doc, opt.out);
    return overall ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"numerical differential geometry of parametrized quantum state families"};
    app.require_subcommand(1);

    MetricOptions metric_opt;
    auto* metric_cmd = app.add_subcommand("metric", "quantum geometric tensor at chart points");
    metric_cmd->add_option("--family", metric_opt.family, "built-in family name");
    metric_cmd->add_option("--file", metric_opt.file, "family definition file");
    metric_cmd->add_option("--const", metric_opt.consts, "family constant name=value");
    metric_cmd->add_option("--point", metric_opt.points, "chart point, comma-separated radians");
    metric_cmd->add_option("--convention", metric_opt.convention, "projective or raw");
    metric_cmd->add_option("--out", metric_opt.out, "output path (default stdout)");
    metric_opt.scheme.attach(metric_cmd);

    CurvatureOptions curv_opt;
    auto* curv_cmd = app.add_subcommand("curvature", "flatness scan over a metric field");
    curv_opt.field.attach(curv_cmd);
    curv_cmd->add_option("--points", curv_opt.points, "number of sample points (default 50)");
    curv_cmd->add_option("--tol", curv_opt.tol, "flatness tolerance on max |R| (default 1e-6)");
    curv_cmd->add_option("--seed", curv_opt.seed, "sampling seed (default 1)");
    curv_cmd->add_option("--out", curv_opt.out, "output path (default stdout)");
    curv_opt.scheme.attach(curv_cmd);

    GridOptions grid_opt;
    auto* grid_cmd = app.add_subcommand("grid", "scalar observables over a coordinate grid");
    grid_cmd->add_option("--family", grid_opt.family, "built-in family name");
    grid_cmd->add_option("--file", grid_opt.file, "family definition file");
    grid_cmd->add_option("--const", grid_opt.consts, "family constant name=value");
    grid_opt.field.attach(grid_cmd);
    grid_cmd->add_option("--axis", grid_opt.axes, "grid axis name=min:max:count (max 2)");
    grid_cmd->add_option("--pin", grid_opt.pins, "pin a coordinate name=value");
    grid_cmd->add_option("--observable", grid_opt.observables,
                         "reQ:a,b imQ:a,b g:a,b sig_plus sig_minus sig_zero scalar_curv");
    grid_cmd->add_option("--convention", grid_opt.convention, "projective or raw");
    grid_cmd->add_option("--format", grid_opt.format, "csv or json (default csv)");
    grid_cmd->add_option("--out", grid_opt.out, "output path (default stdout)");
    grid_opt.scheme.attach(grid_cmd);

    VerifyOptions verify_opt;
    auto* verify_cmd =
        app.add_subcommand("verify-paper", "run the built-in end-to-end verification checks");
    verify_cmd->add_option("--c", verify_opt.c, "speed constant (default 1)");
    verify_cmd->add_option("--seed", verify_opt.seed, "seed for random draws (default 1)");
    verify_cmd->add_option("--out", verify_opt.out, "report path (default stdout)");
    verify_cmd->add_flag("--break-eta", verify_opt.break_eta,
                         "test hook: perturb G22 by 1e-3 so the eta check fails");
    verify_opt.scheme.attach(verify_cmd);

    std::string parse_path, parse_out = "-";
    auto* parse_cmd = app.add_subcommand("parse", "lint a family or chart definition file");
    parse_cmd->add_option("file", parse_path, "definition file")->required();
    parse_cmd->add_option("--out", parse_out, "output path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 2;
    }

    try {
        if (*metric_cmd) return run_metric(metric_opt);
        if (*curv_cmd) return run_curvature(curv_opt);
        if (*grid_cmd) return run_grid(grid_opt);
        if (*verify_cmd) return run_verify(verify_opt);
        if (*parse_cmd) return run_parse(parse_path, parse_out);
    } catch (const ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const DomainError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}
