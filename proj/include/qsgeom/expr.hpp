#pragma once

#include <complex>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "qsgeom/errors.hpp"

namespace qsg {

using Complex = std::complex<double>;

enum class ExprKind { Constant, Param, Unary, Binary, Call };
enum class BinaryOp { Add, Sub, Mul, Div, Pow };

struct ExprNode;
using ExprPtr = std::shared_ptr<const ExprNode>;

/// Immutable expression tree.  Constants reachable from the parser are
/// nonnegative reals and the imaginary unit (0,1); unary minus is a node.
struct ExprNode {
    ExprKind kind = ExprKind::Constant;
    Complex value{};       // Constant
    std::string name;      // Param name or Call function name
    BinaryOp op{};         // Binary
    ExprPtr lhs, rhs;      // Binary operands; Unary/Call operand in lhs

    static ExprPtr constant(Complex v);
    static ExprPtr param(std::string name);
    static ExprPtr unary_minus(ExprPtr child);
    static ExprPtr binary(BinaryOp op, ExprPtr l, ExprPtr r);
    static ExprPtr call(std::string fn, ExprPtr arg);
};

/// Function names accepted by the grammar.
const std::set<std::string>& known_functions();

/// Grammar:
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | power
///   power  := atom ('^' factor)?
///   atom   := NUMBER | 'i' | 'pi' | IDENT | IDENT '(' expr ')' | '(' expr ')'
/// Identifiers are case-sensitive; `i` and `pi` are reserved constants.
ExprPtr parse_expression(std::string_view src);

/// Recursive evaluation with principal branches.  Throws DomainError for an
/// unbound parameter and NumericalError for a non-finite intermediate.
Complex eval_expression(const ExprNode& ast, const std::map<std::string, Complex>& bindings);

/// Fully parenthesized canonical form; parse(canonical_print(a)) is
/// structurally equal to a.
std::string canonical_print(const ExprNode& ast);

bool ast_equal(const ExprNode& a, const ExprNode& b);

/// All parameter names referenced anywhere in the tree.
std::set<std::string> free_symbols(const ExprNode& ast);

struct ParamSpec {
    std::string name;
    double lower = 0.0;
    double upper = 0.0;
    bool upper_open = false;  // lower bound is always closed
};

struct FamilyDefinition {
    std::string name;
    std::vector<ParamSpec> parameters;
    std::vector<ExprPtr> components;
    std::map<std::string, double> constants;
};

/// Chart definitions share the family grammar under a `chart` header.  Each
/// complex component encodes two real target coordinates (re, im), so the
/// target dimension is 2 * components.size().  The optional `twist:` line
/// gives one sign per real target axis.
struct ChartDefinition {
    std::string name;
    std::vector<ParamSpec> parameters;
    std::vector<ExprPtr> components;
    std::map<std::string, double> constants;
    std::vector<int> twist;  // empty means all +1
};

/// Line-oriented format:
///   family <ident>
///   param <ident> in [<num>, <num>)   (or closed `]`)
///   const <ident> = <num>
///   state: [ <expr> (, <expr>)* ]
/// `#` starts a comment.  The state list may span lines up to the closing
/// bracket.  Every free symbol of every component must be a declared
/// parameter or constant.
FamilyDefinition parse_family_file(std::string_view src);

/// Same grammar with a `chart <ident>` header and an optional
/// `twist: [ <sign> (, <sign>)* ]` line.
ChartDefinition parse_chart_file(std::string_view src);

}  // namespace qsg
