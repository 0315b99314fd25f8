#include "mquare/formula.hpp"

#include <cctype>
#include <charconv>
#include <system_error>

namespace mquare {

namespace {

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExprPtr parse() {
        auto e = expr();
        skip_ws();
        if (pos_ < text_.size()) fail("operator or end of input");
        return e;
    }

private:
    std::string_view text_;
    std::size_t pos_ = 0;

    [[noreturn]] void fail(const std::string& expected) const {
        throw FormulaSyntaxError(pos_, expected);
    }

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool peek(char c) {
        skip_ws();
        return pos_ < text_.size() && text_[pos_] == c;
    }

    static ExprPtr make(std::size_t offset, decltype(Expr::node) node) {
        auto e = std::make_shared<Expr>();
        e->node = std::move(node);
        e->offset = offset;
        return e;
    }

    ExprPtr expr() {
        auto lhs = term();
        while (peek('+') || peek('-')) {
            std::size_t at = pos_;
            BinaryOp op = text_[pos_] == '+' ? BinaryOp::Add : BinaryOp::Sub;
            ++pos_;
            auto rhs = term();
            lhs = make(at, BinaryExpr{op, std::move(lhs), std::move(rhs)});
        }
        return lhs;
    }

    ExprPtr term() {
        auto lhs = factor();
        while (peek('*') || peek('/')) {
            std::size_t at = pos_;
            BinaryOp op = text_[pos_] == '*' ? BinaryOp::Mul : BinaryOp::Div;
            ++pos_;
            auto rhs = factor();
            lhs = make(at, BinaryExpr{op, std::move(lhs), std::move(rhs)});
        }
        return lhs;
    }

    ExprPtr factor() {
        skip_ws();
        const char* hint = "number, identifier, '(' or 'mean'";
        if (pos_ >= text_.size()) fail(hint);
        const std::size_t start = pos_;
        const char c = text_[pos_];

        if (c == '(') {
            ++pos_;
            auto inner = expr();
            if (!peek(')')) fail("')'");
            ++pos_;
            return inner;
        }
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number(start);
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
            while (pos_ < text_.size() &&
                   (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
                ++pos_;
            std::string name(text_.substr(start, pos_ - start));
            if (name == "mean") return mean_call(start);
            return make(start, IdentifierRef{std::move(name)});
        }
        fail(hint);
    }

    ExprPtr number(std::size_t start) {
        auto digits = [&] {
            std::size_t n = 0;
            while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) {
                ++pos_;
                ++n;
            }
            return n;
        };
        std::size_t int_digits = digits();
        std::size_t frac_digits = 0;
        if (pos_ < text_.size() && text_[pos_] == '.') {
            ++pos_;
            frac_digits = digits();
        }
        if (int_digits + frac_digits == 0) {
            pos_ = start;
            fail("number");
        }
        if (pos_ < text_.size() && (text_[pos_] == 'e' || text_[pos_] == 'E')) {
            ++pos_;
            if (pos_ < text_.size() && (text_[pos_] == '+' || text_[pos_] == '-')) ++pos_;
            if (digits() == 0) fail("exponent digits");
        }
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + start, text_.data() + pos_, value);
        if (ec != std::errc{} || ptr != text_.data() + pos_) {
            pos_ = start;
            fail("representable number");
        }
        return make(start, NumberLiteral{value});
    }

    ExprPtr mean_call(std::size_t start) {
        if (!peek('(')) fail("'(' after mean");
        ++pos_;
        MeanCall call;
        call.args.push_back(expr());
        while (peek(',')) {
            ++pos_;
            call.args.push_back(expr());
        }
        if (!peek(')')) fail("',' or ')'");
        ++pos_;
        return make(start, std::move(call));
    }
};

int precedence(BinaryOp op) { return (op == BinaryOp::Add || op == BinaryOp::Sub) ? 1 : 2; }

char symbol(BinaryOp op) {
    switch (op) {
    case BinaryOp::Add: return '+';
    case BinaryOp::Sub: return '-';
    case BinaryOp::Mul: return '*';
    case BinaryOp::Div: return '/';
    }
    return '?';
}

void print(const Expr& e, int parent_prec, bool right_operand, std::string& out) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, NumberLiteral>) {
                char buf[64];
                auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, n.value);
                out.append(buf, ptr);
            } else if constexpr (std::is_same_v<T, IdentifierRef>) {
                out += n.name;
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                int p = precedence(n.op);
                bool parens = p < parent_prec || (right_operand && p == parent_prec);
                if (parens) out += '(';
                print(*n.lhs, p, false, out);
                out += ' ';
                out += symbol(n.op);
                out += ' ';
                print(*n.rhs, p, true, out);
                if (parens) out += ')';
            } else {
                out += "mean(";
                for (std::size_t i = 0; i < n.args.size(); ++i) {
                    if (i) out += ", ";
                    print(*n.args[i], 0, false, out);
                }
                out += ')';
            }
        },
        e.node);
}

bool equal(const Expr& a, const Expr& b) {
    if (a.node.index() != b.node.index()) return false;
    return std::visit(
        [&](const auto& x) -> bool {
            using T = std::decay_t<decltype(x)>;
            const auto& y = std::get<T>(b.node);
            if constexpr (std::is_same_v<T, NumberLiteral>) {
                return x.value == y.value;
            } else if constexpr (std::is_same_v<T, IdentifierRef>) {
                return x.name == y.name;
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                return x.op == y.op && equal(*x.lhs, *y.lhs) && equal(*x.rhs, *y.rhs);
            } else {
                if (x.args.size() != y.args.size()) return false;
                for (std::size_t i = 0; i < x.args.size(); ++i)
                    if (!equal(*x.args[i], *y.args[i])) return false;
                return true;
            }
        },
        a.node);
}

void collect(const Expr& e, std::set<std::string>& out) {
    std::visit(
        [&](const auto& n) {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, IdentifierRef>) {
                out.insert(n.name);
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                collect(*n.lhs, out);
                collect(*n.rhs, out);
            } else if constexpr (std::is_same_v<T, MeanCall>) {
                for (const auto& a : n.args) collect(*a, out);
            }
        },
        e.node);
}

double eval(const Expr& e, const std::map<std::string, double>& bindings) {
    return std::visit(
        [&](const auto& n) -> double {
            using T = std::decay_t<decltype(n)>;
            if constexpr (std::is_same_v<T, NumberLiteral>) {
                return n.value;
            } else if constexpr (std::is_same_v<T, IdentifierRef>) {
                auto it = bindings.find(n.name);
                if (it == bindings.end()) throw UnboundIdentifier(n.name);
                return it->second;
            } else if constexpr (std::is_same_v<T, BinaryExpr>) {
                double l = eval(*n.lhs, bindings);
                double r = eval(*n.rhs, bindings);
                switch (n.op) {
                case BinaryOp::Add: return l + r;
                case BinaryOp::Sub: return l - r;
                case BinaryOp::Mul: return l * r;
                case BinaryOp::Div:
                    if (r == 0.0) throw DivisionByZero(e.offset);
                    return l / r;
                }
                return 0.0;
            } else {
                double sum = 0.0;
                for (const auto& a : n.args) sum += eval(*a, bindings);
                return sum / static_cast<double>(n.args.size());
            }
        },
        e.node);
}

}  // namespace

FormulaExpr::FormulaExpr(ExprPtr root) : root_(std::move(root)) {}

FormulaExpr FormulaExpr::number(double value) {
    auto e = std::make_shared<Expr>();
    e->node = NumberLiteral{value};
    return FormulaExpr(std::move(e));
}

FormulaExpr FormulaExpr::identifier(std::string name) {
    auto e = std::make_shared<Expr>();
    e->node = IdentifierRef{std::move(name)};
    return FormulaExpr(std::move(e));
}

FormulaExpr FormulaExpr::binary(BinaryOp op, const FormulaExpr& lhs, const FormulaExpr& rhs) {
    auto e = std::make_shared<Expr>();
    e->node = BinaryExpr{op, lhs.root_, rhs.root_};
    return FormulaExpr(std::move(e));
}

FormulaExpr FormulaExpr::mean(const std::vector<FormulaExpr>& args) {
    if (args.empty()) throw Error("mean() needs at least one argument");
    MeanCall call;
    for (const auto& a : args) call.args.push_back(a.root_);
    auto e = std::make_shared<Expr>();
    e->node = std::move(call);
    return FormulaExpr(std::move(e));
}

std::string FormulaExpr::to_string() const {
    std::string out;
    print(*root_, 0, false, out);
    return out;
}

std::set<std::string> FormulaExpr::identifiers() const {
    std::set<std::string> out;
    collect(*root_, out);
    return out;
}

bool operator==(const FormulaExpr& a, const FormulaExpr& b) { return equal(*a.root_, *b.root_); }

FormulaSyntaxError::FormulaSyntaxError(std::size_t offset, std::string expected)
    : Error("syntax error at offset " + std::to_string(offset) + ": expected " + expected),
      offset_(offset),
      expected_(std::move(expected)) {}

UnboundIdentifier::UnboundIdentifier(std::string name)
    : Error("unbound identifier: " + name), name_(std::move(name)) {}

DivisionByZero::DivisionByZero(std::size_t offset)
    : Error("division by zero at offset " + std::to_string(offset)), offset_(offset) {}

FormulaExpr parse_formula(std::string_view text) { return FormulaExpr(Parser(text).parse()); }

double evaluate_formula(const FormulaExpr& expr, const std::map<std::string, double>& bindings) {
    return eval(expr.root(), bindings);
}

}  // namespace mquare
