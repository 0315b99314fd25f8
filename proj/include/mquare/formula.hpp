#pragma once

// Aggregation formulas: a small arithmetic language over measure and
// sub-characteristic aliases.
//
//   expr   := term (('+' | '-') term)*
//   term   := factor (('*' | '/') factor)*
//   factor := number | identifier | '(' expr ')' | 'mean' '(' expr (',' expr)* ')'

#include <cstddef>
#include <map>
#include <memory>
#include <set>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "mquare/error.hpp"

namespace mquare {

enum class BinaryOp { Add, Sub, Mul, Div };

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct NumberLiteral {
    double value = 0.0;
};
struct IdentifierRef {
    std::string name;
};
struct BinaryExpr {
    BinaryOp op = BinaryOp::Add;
    ExprPtr lhs;
    ExprPtr rhs;
};
struct MeanCall {
    std::vector<ExprPtr> args;
};

struct Expr {
    std::variant<NumberLiteral, IdentifierRef, BinaryExpr, MeanCall> node;
    std::size_t offset = 0;  ///< byte offset in the source text
};

/// Immutable expression tree. Equality is structural and ignores offsets.
class FormulaExpr {
public:
    explicit FormulaExpr(ExprPtr root);

    static FormulaExpr number(double value);
    static FormulaExpr identifier(std::string name);
    static FormulaExpr binary(BinaryOp op, const FormulaExpr& lhs, const FormulaExpr& rhs);
    static FormulaExpr mean(const std::vector<FormulaExpr>& args);

    const Expr& root() const noexcept { return *root_; }
    const ExprPtr& root_ptr() const noexcept { return root_; }

    /// Canonical text with minimal parentheses; parses back to an equal tree.
    std::string to_string() const;
    std::set<std::string> identifiers() const;

    friend bool operator==(const FormulaExpr& a, const FormulaExpr& b);

private:
    ExprPtr root_;
};

class FormulaSyntaxError : public Error {
public:
    FormulaSyntaxError(std::size_t offset, std::string expected);
    std::size_t offset() const noexcept { return offset_; }
    const std::string& expected() const noexcept { return expected_; }

private:
    std::size_t offset_;
    std::string expected_;
};

class UnboundIdentifier : public Error {
public:
    explicit UnboundIdentifier(std::string name);
    const std::string& name() const noexcept { return name_; }

private:
    std::string name_;
};

class DivisionByZero : public Error {
public:
    explicit DivisionByZero(std::size_t offset);
    std::size_t offset() const noexcept { return offset_; }

private:
    std::size_t offset_;
};

FormulaExpr parse_formula(std::string_view text);

double evaluate_formula(const FormulaExpr& expr, const std::map<std::string, double>& bindings);

}  // namespace mquare
