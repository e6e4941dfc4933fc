#include "qcurve/expr.hpp"

#include <cctype>
#include <charconv>
#include <sstream>

namespace qcurve {
namespace {

ExprPtr node(Expr::Kind kind, ExprPtr lhs = nullptr, ExprPtr rhs = nullptr) {
    auto e = std::make_shared<Expr>();
    e->kind = kind;
    e->lhs = std::move(lhs);
    e->rhs = std::move(rhs);
    return e;
}

ExprPtr number_node(double v) {
    auto e = std::make_shared<Expr>();
    e->kind = Expr::Kind::Number;
    e->number = v;
    return e;
}

class Parser {
public:
    explicit Parser(std::string_view text) : text_(text) {}

    ExprPtr run() {
        skip_ws();
        ExprPtr e = expr();
        skip_ws();
        if (pos_ != text_.size()) throw ParseError("unexpected trailing input", pos_);
        return e;
    }

private:
    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool eof() const { return pos_ >= text_.size(); }
    char peek() const { return text_[pos_]; }

    bool consume(char c) {
        skip_ws();
        if (!eof() && peek() == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    ExprPtr expr() {
        ExprPtr lhs = term();
        for (;;) {
            skip_ws();
            if (consume('+'))
                lhs = node(Expr::Kind::Add, lhs, term());
            else if (consume('-'))
                lhs = node(Expr::Kind::Sub, lhs, term());
            else
                return lhs;
        }
    }

    ExprPtr term() {
        ExprPtr lhs = factor();
        for (;;) {
            skip_ws();
            if (consume('*'))
                lhs = node(Expr::Kind::Mul, lhs, factor());
            else if (consume('/'))
                lhs = node(Expr::Kind::Div, lhs, factor());
            else
                return lhs;
        }
    }

    // '-' applies after any exponent: -s^2 parses as -(s^2).
    ExprPtr factor() {
        skip_ws();
        if (consume('-')) return node(Expr::Kind::Neg, factor());
        ExprPtr base = atom();
        skip_ws();
        if (consume('^')) {
            auto e = std::make_shared<Expr>();
            e->kind = Expr::Kind::Pow;
            e->exponent = parse_uint();
            e->lhs = base;
            return e;
        }
        return base;
    }

    unsigned parse_uint() {
        skip_ws();
        const std::size_t start = pos_;
        if (eof() || !std::isdigit(static_cast<unsigned char>(peek())))
            throw ParseError("malformed exponent: expected a non-negative integer", pos_);
        unsigned value = 0;
        auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
        if (ec != std::errc{}) throw ParseError("malformed exponent", start);
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        if (pos_ < text_.size() && peek() == '.')
            throw ParseError("malformed exponent: expected a non-negative integer", start);
        return value;
    }

    ExprPtr atom() {
        skip_ws();
        if (eof()) throw ParseError("unexpected end of input", pos_);
        const char c = peek();
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c))) return identifier();
        if (consume('(')) {
            ExprPtr e = expr();
            if (!consume(')')) throw ParseError("unbalanced parenthesis", pos_);
            return e;
        }
        throw ParseError(std::string("unexpected token '") + c + "'", pos_);
    }

    ExprPtr number() {
        const std::size_t start = pos_;
        double value = 0.0;
        auto [ptr, ec] = std::from_chars(text_.data() + pos_, text_.data() + text_.size(), value);
        if (ec != std::errc{} || ptr == text_.data() + pos_)
            throw ParseError("lexical error: malformed number", start);
        pos_ = static_cast<std::size_t>(ptr - text_.data());
        return number_node(value);
    }

    ExprPtr identifier() {
        const std::size_t start = pos_;
        while (!eof() && std::isalpha(static_cast<unsigned char>(peek()))) ++pos_;
        const std::string_view name = text_.substr(start, pos_ - start);
        if (name == "s") return node(Expr::Kind::Var);
        if (name == "pi") return node(Expr::Kind::Pi);
        Expr::Kind kind;
        if (name == "sin")
            kind = Expr::Kind::Sin;
        else if (name == "cos")
            kind = Expr::Kind::Cos;
        else if (name == "sqrt")
            kind = Expr::Kind::Sqrt;
        else if (name == "exp")
            kind = Expr::Kind::Exp;
        else
            throw ParseError("unknown function '" + std::string(name) + "'", start);
        if (!consume('(')) throw ParseError("expected '(' after function name", pos_);
        ExprPtr arg = expr();
        if (!consume(')')) throw ParseError("unbalanced parenthesis", pos_);
        return node(kind, arg);
    }

    std::string_view text_;
    std::size_t pos_ = 0;
};

int precedence(Expr::Kind k) {
    switch (k) {
        case Expr::Kind::Add:
        case Expr::Kind::Sub: return 1;
        case Expr::Kind::Mul:
        case Expr::Kind::Div: return 2;
        case Expr::Kind::Neg: return 3;
        case Expr::Kind::Pow: return 4;
        default: return 5;
    }
}

void print_rec(const Expr& e, std::ostream& os, int parent_prec) {
    const int prec = precedence(e.kind);
    const bool parens = prec < parent_prec;
    if (parens) os << '(';
    switch (e.kind) {
        case Expr::Kind::Number: {
            char buf[64];
            std::snprintf(buf, sizeof buf, "%.17g", e.number);
            os << buf;
            break;
        }
        case Expr::Kind::Pi: os << "pi"; break;
        case Expr::Kind::Var: os << 's'; break;
        case Expr::Kind::Neg:
            os << '-';
            print_rec(*e.lhs, os, prec);
            break;
        case Expr::Kind::Add:
        case Expr::Kind::Sub:
            print_rec(*e.lhs, os, prec);
            os << (e.kind == Expr::Kind::Add ? "+" : "-");
            // right operand needs strictly higher precedence: a-(b-c)
            print_rec(*e.rhs, os, prec + 1);
            break;
        case Expr::Kind::Mul:
        case Expr::Kind::Div:
            print_rec(*e.lhs, os, prec);
            os << (e.kind == Expr::Kind::Mul ? "*" : "/");
            print_rec(*e.rhs, os, prec + 1);
            break;
        case Expr::Kind::Pow:
            print_rec(*e.lhs, os, prec + 1);
            os << '^' << e.exponent;
            break;
        case Expr::Kind::Sin:
        case Expr::Kind::Cos:
        case Expr::Kind::Sqrt:
        case Expr::Kind::Exp: {
            const char* name = e.kind == Expr::Kind::Sin    ? "sin"
                               : e.kind == Expr::Kind::Cos  ? "cos"
                               : e.kind == Expr::Kind::Sqrt ? "sqrt"
                                                            : "exp";
            os << name << '(';
            print_rec(*e.lhs, os, 0);
            os << ')';
            break;
        }
    }
    if (parens) os << ')';
}

}  // namespace

ExprPtr parse(std::string_view text) { return Parser(text).run(); }

std::string print(const Expr& e) {
    std::ostringstream os;
    print_rec(e, os, 0);
    return os.str();
}

bool structurally_equal(const Expr& x, const Expr& y) {
    if (x.kind != y.kind) return false;
    if (x.kind == Expr::Kind::Number && x.number != y.number) return false;
    if (x.kind == Expr::Kind::Pow && x.exponent != y.exponent) return false;
    if (static_cast<bool>(x.lhs) != static_cast<bool>(y.lhs)) return false;
    if (static_cast<bool>(x.rhs) != static_cast<bool>(y.rhs)) return false;
    if (x.lhs && !structurally_equal(*x.lhs, *y.lhs)) return false;
    if (x.rhs && !structurally_equal(*x.rhs, *y.rhs)) return false;
    return true;
}

}  // namespace qcurve
