#include "qsgeom/expr.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <numbers>
#include <sstream>

namespace qsg {

ExprPtr ExprNode::constant(Complex v) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::Constant;
    n->value = v;
    return n;
}

ExprPtr ExprNode::param(std::string name) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::Param;
    n->name = std::move(name);
    return n;
}

ExprPtr ExprNode::unary_minus(ExprPtr child) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::Unary;
    n->lhs = std::move(child);
    return n;
}

ExprPtr ExprNode::binary(BinaryOp op, ExprPtr l, ExprPtr r) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::Binary;
    n->op = op;
    n->lhs = std::move(l);
    n->rhs = std::move(r);
    return n;
}

ExprPtr ExprNode::call(std::string fn, ExprPtr arg) {
    auto n = std::make_shared<ExprNode>();
    n->kind = ExprKind::Call;
    n->name = std::move(fn);
    n->lhs = std::move(arg);
    return n;
}

const std::set<std::string>& known_functions() {
    static const std::set<std::string> fns = {"sin", "cos", "tan",  "exp", "log",
                                              "sqrt", "conj", "re", "im",  "abs"};
    return fns;
}

namespace {

struct Parser {
    std::string_view src;
    std::size_t pos = 0;

    void skip_ws() {
        while (pos < src.size() && (src[pos] == ' ' || src[pos] == '\t' || src[pos] == '\r' ||
                                    src[pos] == '\n'))
            ++pos;
    }

    char peek() {
        skip_ws();
        return pos < src.size() ? src[pos] : '\0';
    }

    bool accept(char c) {
        if (peek() == c) {
            ++pos;
            return true;
        }
        return false;
    }

    [[noreturn]] void fail(const std::string& what, std::vector<std::string> expected) {
        std::ostringstream os;
        os << "syntax error at byte " << pos << ": " << what;
        if (!expected.empty()) {
            os << "; expected ";
            for (std::size_t i = 0; i < expected.size(); ++i)
                os << (i ? ", " : "") << expected[i];
        }
        throw ParseError(os.str(), pos, std::move(expected));
    }

    ExprPtr parse_expr() {
        ExprPtr lhs = parse_term();
        while (true) {
            if (accept('+'))
                lhs = ExprNode::binary(BinaryOp::Add, lhs, parse_term());
            else if (accept('-'))
                lhs = ExprNode::binary(BinaryOp::Sub, lhs, parse_term());
            else
                return lhs;
        }
    }

    ExprPtr parse_term() {
        ExprPtr lhs = parse_factor();
        while (true) {
            if (accept('*'))
                lhs = ExprNode::binary(BinaryOp::Mul, lhs, parse_factor());
            else if (accept('/'))
                lhs = ExprNode::binary(BinaryOp::Div, lhs, parse_factor());
            else
                return lhs;
        }
    }

    ExprPtr parse_factor() {
        if (accept('-')) return ExprNode::unary_minus(parse_factor());
        return parse_power();
    }

    ExprPtr parse_power() {
        ExprPtr base = parse_atom();
        if (accept('^')) return ExprNode::binary(BinaryOp::Pow, base, parse_factor());
        return base;
    }

    ExprPtr parse_atom() {
        const char c = peek();
        if (c == '(') {
            ++pos;
            ExprPtr inner = parse_expr();
            if (!accept(')')) fail("unbalanced parentheses", {"')'"});
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c))) return parse_number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return parse_ident();
        fail(c == '\0' ? "unexpected end of input" : std::string("unexpected character '") + c + "'",
             {"number", "'i'", "'pi'", "identifier", "'('"});
    }

    ExprPtr parse_number() {
        skip_ws();
        const std::size_t start = pos;
        while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        if (pos < src.size() && src[pos] == '.') {
            ++pos;
            while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
        }
        if (pos < src.size() && (src[pos] == 'e' || src[pos] == 'E')) {
            std::size_t mark = pos;
            ++pos;
            if (pos < src.size() && (src[pos] == '+' || src[pos] == '-')) ++pos;
            if (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) {
                while (pos < src.size() && std::isdigit(static_cast<unsigned char>(src[pos]))) ++pos;
            } else {
                pos = mark;  // the 'e' belongs to a following identifier, not the literal
            }
        }
        const std::string text(src.substr(start, pos - start));
        return ExprNode::constant(Complex(std::strtod(text.c_str(), nullptr), 0.0));
    }

    ExprPtr parse_ident() {
        skip_ws();
        const std::size_t start = pos;
        while (pos < src.size() &&
               (std::isalnum(static_cast<unsigned char>(src[pos])) || src[pos] == '_'))
            ++pos;
        const std::string name(src.substr(start, pos - start));
        if (name == "i") return ExprNode::constant(Complex(0.0, 1.0));
        if (name == "pi") return ExprNode::constant(Complex(std::numbers::pi, 0.0));
        if (peek() == '(') {
            if (!known_functions().count(name)) {
                pos = start;
                fail("unknown function name '" + name + "'", {"sin", "cos", "tan", "exp", "log",
                                                              "sqrt", "conj", "re", "im", "abs"});
            }
            ++pos;  // consume '('
            ExprPtr arg = parse_expr();
            if (!accept(')')) fail("unbalanced parentheses", {"')'"});
            return ExprNode::call(name, arg);
        }
        return ExprNode::param(name);
    }
};

bool is_imaginary_unit(const Complex& v) { return v.real() == 0.0 && v.imag() == 1.0; }

std::string format_real(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

void check_finite(const Complex& v, const char* what) {
    if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
        throw NumericalError(std::string("non-finite intermediate in ") + what);
}

// a negative-zero imaginary part would select the lower side of the branch
// cut; real arguments take the principal branch
Complex principal(Complex z) {
    if (z.imag() == 0.0) return Complex(z.real(), 0.0);
    return z;
}

}  // namespace

ExprPtr parse_expression(std::string_view src) {
    Parser p{src};
    ExprPtr ast = p.parse_expr();
    if (p.peek() != '\0')
        p.fail(std::string("trailing input '") + p.peek() + "'",
               {"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});
    return ast;
}

Complex eval_expression(const ExprNode& ast, const std::map<std::string, Complex>& bindings) {
    switch (ast.kind) {
        case ExprKind::Constant:
            return ast.value;
        case ExprKind::Param: {
            auto it = bindings.find(ast.name);
            if (it == bindings.end()) throw DomainError("unbound parameter '" + ast.name + "'");
            return it->second;
        }
        case ExprKind::Unary:
            return -eval_expression(*ast.lhs, bindings);
        case ExprKind::Binary: {
            const Complex l = eval_expression(*ast.lhs, bindings);
            const Complex r = eval_expression(*ast.rhs, bindings);
            Complex out;
            switch (ast.op) {
                case BinaryOp::Add: out = l + r; break;
                case BinaryOp::Sub: out = l - r; break;
                case BinaryOp::Mul: out = l * r; break;
                case BinaryOp::Div: out = l / r; break;
                case BinaryOp::Pow: out = std::pow(principal(l), principal(r)); break;
            }
            check_finite(out, "binary operator");
            return out;
        }
        case ExprKind::Call: {
            const Complex a = eval_expression(*ast.lhs, bindings);
            Complex out;
            if (ast.name == "sin") out = std::sin(a);
            else if (ast.name == "cos") out = std::cos(a);
            else if (ast.name == "tan") out = std::tan(a);
            else if (ast.name == "exp") out = std::exp(a);
            else if (ast.name == "log") out = std::log(principal(a));
            else if (ast.name == "sqrt") out = std::sqrt(principal(a));
            else if (ast.name == "conj") out = std::conj(a);
            else if (ast.name == "re") out = Complex(a.real(), 0.0);
            else if (ast.name == "im") out = Complex(a.imag(), 0.0);
            else if (ast.name == "abs") out = Complex(std::abs(a), 0.0);
            else throw DomainError("unknown function '" + ast.name + "'");
            check_finite(out, ast.name.c_str());
            return out;
        }
    }
    throw DomainError("corrupt expression node");
}

std::string canonical_print(const ExprNode& ast) {
    switch (ast.kind) {
        case ExprKind::Constant:
            if (is_imaginary_unit(ast.value)) return "i";
            return format_real(ast.value.real());
        case ExprKind::Param:
            return ast.name;
        case ExprKind::Unary:
            return "(-" + canonical_print(*ast.lhs) + ")";
        case ExprKind::Binary: {
            const char* op = "?";
            switch (ast.op) {
                case BinaryOp::Add: op = "+"; break;
                case BinaryOp::Sub: op = "-"; break;
                case BinaryOp::Mul: op = "*"; break;
                case BinaryOp::Div: op = "/"; break;
                case BinaryOp::Pow: op = "^"; break;
            }
            return "(" + canonical_print(*ast.lhs) + " " + op + " " + canonical_print(*ast.rhs) +
                   ")";
        }
        case ExprKind::Call:
            return ast.name + "(" + canonical_print(*ast.lhs) + ")";
    }
    return "?";
}

bool ast_equal(const ExprNode& a, const ExprNode& b) {
    if (a.kind != b.kind) return false;
    switch (a.kind) {
        case ExprKind::Constant:
            return a.value.real() == b.value.real() && a.value.imag() == b.value.imag();
        case ExprKind::Param:
            return a.name == b.name;
        case ExprKind::Unary:
            return ast_equal(*a.lhs, *b.lhs);
        case ExprKind::Binary:
            return a.op == b.op && ast_equal(*a.lhs, *b.lhs) && ast_equal(*a.rhs, *b.rhs);
        case ExprKind::Call:
            return a.name == b.name && ast_equal(*a.lhs, *b.lhs);
    }
    return false;
}

std::set<std::string> free_symbols(const ExprNode& ast) {
    std::set<std::string> out;
    switch (ast.kind) {
        case ExprKind::Constant:
            break;
        case ExprKind::Param:
            out.insert(ast.name);
            break;
        case ExprKind::Unary:
        case ExprKind::Call:
            out = free_symbols(*ast.lhs);
            break;
        case ExprKind::Binary: {
            out = free_symbols(*ast.lhs);
            auto r = free_symbols(*ast.rhs);
            out.insert(r.begin(), r.end());
            break;
        }
    }
    return out;
}

namespace {

// -------- definition files (family / chart) --------

struct DefinitionFile {
    std::string header_kind;  // "family" or "chart"
    std::string name;
    std::vector<ParamSpec> parameters;
    std::vector<ExprPtr> components;
    std::map<std::string, double> constants;
    std::vector<int> twist;
};

std::string strip_comment(std::string line) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    return line;
}

std::string trim(const std::string& s) {
    std::size_t b = s.find_first_not_of(" \t\r\n");
    if (b == std::string::npos) return "";
    std::size_t e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

double parse_bound_number(const std::string& text, const std::string& context) {
    const std::string t = trim(text);
    if (t.empty()) throw ParseError("missing number in " + context, 0);
    char* end = nullptr;
    double v = std::strtod(t.c_str(), &end);
    if (end != t.c_str() + t.size())
        throw ParseError("malformed number '" + t + "' in " + context, 0);
    return v;
}

std::vector<std::string> split_top_level_commas(const std::string& s) {
    std::vector<std::string> parts;
    int depth = 0;
    std::string cur;
    for (char c : s) {
        if (c == '(') ++depth;
        if (c == ')') --depth;
        if (c == ',' && depth == 0) {
            parts.push_back(cur);
            cur.clear();
        } else {
            cur += c;
        }
    }
    parts.push_back(cur);
    return parts;
}

DefinitionFile parse_definition_file(std::string_view src) {
    DefinitionFile def;
    std::istringstream in{std::string(src)};
    std::string raw;
    bool header_seen = false;
    bool state_seen = false;

    auto read_bracket_list = [&](std::string after_colon) {
        // gather lines until the closing ']'
        std::string body = after_colon;
        while (body.find(']') == std::string::npos) {
            if (!std::getline(in, raw))
                throw ParseError("unterminated '[' list (missing ']')", 0);
            body += " " + trim(strip_comment(raw));
        }
        auto open = body.find('[');
        auto close = body.rfind(']');
        if (open == std::string::npos || close == std::string::npos || close < open)
            throw ParseError("expected '[ ... ]' list", 0);
        return body.substr(open + 1, close - open - 1);
    };

    while (std::getline(in, raw)) {
        const std::string line = trim(strip_comment(raw));
        if (line.empty()) continue;

        std::istringstream ls(line);
        std::string keyword;
        ls >> keyword;

        if (keyword == "family" || keyword == "chart") {
            if (header_seen) throw ParseError("duplicate header line", 0);
            header_seen = true;
            def.header_kind = keyword;
            ls >> def.name;
            if (def.name.empty()) throw ParseError("missing name after '" + keyword + "'", 0);
            continue;
        }
        if (!header_seen)
            throw ParseError("file must start with 'family <name>' or 'chart <name>'", 0);

        if (keyword == "param") {
            std::string name, kw_in;
            ls >> name >> kw_in;
            if (name.empty() || kw_in != "in")
                throw ParseError("expected 'param <name> in [lo, hi)|[lo, hi]'", 0);
            std::string rest;
            std::getline(ls, rest);
            rest = trim(rest);
            if (rest.size() < 5 || rest.front() != '[')
                throw ParseError("parameter range must start with '['", 0);
            const char closer = rest.back();
            if (closer != ')' && closer != ']')
                throw ParseError("parameter range must end with ')' or ']'", 0);
            auto comma = rest.find(',');
            if (comma == std::string::npos)
                throw ParseError("parameter range needs 'lo, hi'", 0);
            ParamSpec spec;
            spec.name = name;
            spec.lower = parse_bound_number(rest.substr(1, comma - 1), "param " + name);
            spec.upper =
                parse_bound_number(rest.substr(comma + 1, rest.size() - comma - 2), "param " + name);
            spec.upper_open = (closer == ')');
            for (const auto& existing : def.parameters)
                if (existing.name == name)
                    throw ParseError("duplicate parameter '" + name + "'", 0);
            if (!std::isfinite(spec.lower) || !std::isfinite(spec.upper) ||
                !(spec.lower < spec.upper))
                throw ParseError("bound violation for parameter '" + name +
                                     "': need finite lower < upper",
                                 0);
            def.parameters.push_back(spec);
            continue;
        }
        if (keyword == "const") {
            std::string name, eq;
            ls >> name >> eq;
            if (name.empty() || eq != "=")
                throw ParseError("expected 'const <name> = <num>'", 0);
            std::string rest;
            std::getline(ls, rest);
            def.constants[name] = parse_bound_number(rest, "const " + name);
            continue;
        }
        if (keyword == "state:" || keyword == "twist:") {
            std::string rest;
            std::getline(ls, rest);
            const std::string body = read_bracket_list(rest);
            if (keyword == "twist:") {
                for (const auto& part : split_top_level_commas(body)) {
                    const double v = parse_bound_number(part, "twist");
                    if (v != 1.0 && v != -1.0)
                        throw ParseError("twist entries must be 1 or -1", 0);
                    def.twist.push_back(static_cast<int>(v));
                }
                continue;
            }
            state_seen = true;
            for (const auto& part : split_top_level_commas(body)) {
                const std::string text = trim(part);
                if (text.empty()) throw ParseError("empty component in state list", 0);
                def.components.push_back(parse_expression(text));
            }
            continue;
        }
        throw ParseError("unrecognized line '" + line + "'", 0);
    }

    if (!header_seen) throw ParseError("empty definition file", 0);
    if (!state_seen || def.components.empty())
        throw ParseError("definition '" + def.name + "' has an empty component list", 0);
    if (def.parameters.empty())
        throw ParseError("definition '" + def.name + "' declares no parameters", 0);

    // every free symbol must be a declared parameter or constant
    for (const auto& comp : def.components) {
        for (const auto& sym : free_symbols(*comp)) {
            bool known = def.constants.count(sym) > 0;
            for (const auto& p : def.parameters) known = known || p.name == sym;
            if (!known)
                throw ParseError("undeclared symbol '" + sym + "' in component of '" + def.name +
                                     "'",
                                 0);
        }
    }
    return def;
}

}  // namespace

FamilyDefinition parse_family_file(std::string_view src) {
    DefinitionFile def = parse_definition_file(src);
    if (def.header_kind != "family")
        throw ParseError("expected a 'family' header, found '" + def.header_kind + "'", 0);
    if (!def.twist.empty())
        throw ParseError("'twist:' is only valid in chart definitions", 0);
    return FamilyDefinition{def.name, def.parameters, def.components, def.constants};
}

ChartDefinition parse_chart_file(std::string_view src) {
    DefinitionFile def = parse_definition_file(src);
    if (def.header_kind != "chart")
        throw ParseError("expected a 'chart' header, found '" + def.header_kind + "'", 0);
    if (!def.twist.empty() && def.twist.size() != 2 * def.components.size())
        throw ParseError("twist length must equal 2 * number of components", 0);
    return ChartDefinition{def.name, def.parameters, def.components, def.constants, def.twist};
}

}  // namespace qsg
