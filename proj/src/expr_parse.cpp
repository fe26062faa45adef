#include "nestinv/error.hpp"
#include "nestinv/expr.hpp"

#include <cctype>

namespace nestinv {

namespace {

class Parser {
public:
    Parser(std::string_view text, SymbolSetPtr symbols) : text_(text), symbols_(std::move(symbols)) {}

    Expr parse() {
        Expr e = expr();
        skip_ws();
        if (pos_ != text_.size()) throw SyntaxError(pos_, std::string("unexpected '") + text_[pos_] + "'");
        return e;
    }

private:
    std::string_view text_;
    SymbolSetPtr symbols_;
    std::size_t pos_ = 0;

    void skip_ws() {
        while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    }

    bool accept(char c) {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == c) {
            ++pos_;
            return true;
        }
        return false;
    }

    void expect(char c) {
        if (!accept(c)) {
            if (pos_ >= text_.size()) throw SyntaxError(pos_, std::string("expected '") + c + "' before end of input");
            throw SyntaxError(pos_, std::string("expected '") + c + "'");
        }
    }

    static bool all_const(const std::vector<Expr>& v) {
        for (const auto& e : v)
            if (!e.is_const()) return false;
        return true;
    }

    Expr expr() {
        std::vector<Expr> terms{term()};
        for (;;) {
            if (accept('+')) {
                terms.push_back(term());
            } else if (accept('-')) {
                terms.push_back(-term());
            } else {
                break;
            }
        }
        if (terms.size() > 1 && all_const(terms)) {
            ExactScalar s;
            for (const auto& t : terms) s += t.value();
            return Expr::constant(s);
        }
        return Expr::add(std::move(terms));
    }

    Expr term() {
        std::vector<Expr> factors{factor()};
        for (;;) {
            if (accept('*')) {
                factors.push_back(factor());
            } else if (accept('/')) {
                std::size_t at = pos_;
                Expr d = factor();
                if (d.is_const()) {
                    if (d.is_zero()) throw SyntaxError(at, "division by the constant 0");
                    factors.push_back(Expr::constant(d.value().inv()));
                } else {
                    factors.push_back(Expr::pow(d, ExactScalar(-1)));
                }
            } else {
                break;
            }
        }
        if (factors.size() > 1 && all_const(factors)) {
            ExactScalar p(1);
            for (const auto& f : factors) p *= f.value();
            return Expr::constant(p);
        }
        return Expr::mul(std::move(factors));
    }

    Expr factor() {
        if (accept('-')) return -factor();
        return power();
    }

    Expr power() {
        Expr base = atom();
        if (!accept('^')) return base;
        std::size_t at = pos_;
        Expr ex = factor();
        if (ex.depends_on_var()) throw SyntaxError(at, "exponent must not depend on x");
        ExactScalar k = evaluate(ex, PointValuation{});
        if (base.is_const() && k.as_small_integer()) {
            if (base.is_zero() && *k.as_small_integer() < 0) throw SyntaxError(at, "0 raised to a negative power");
            return Expr::constant(base.value().pow(*k.as_small_integer()));
        }
        return Expr::pow(base, k);
    }

    Expr atom() {
        skip_ws();
        if (pos_ >= text_.size()) throw SyntaxError(pos_, "unexpected end of input");
        char c = text_[pos_];
        if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return number();
        if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') return name();
        if (accept('(')) {
            Expr e = expr();
            expect(')');
            return e;
        }
        throw SyntaxError(pos_, std::string("unexpected '") + c + "'");
    }

    Expr number() {
        std::size_t start = pos_;
        bool dot = false;
        while (pos_ < text_.size()) {
            char c = text_[pos_];
            if (std::isdigit(static_cast<unsigned char>(c))) {
                ++pos_;
            } else if (c == '.' && !dot) {
                dot = true;
                ++pos_;
            } else {
                break;
            }
        }
        std::string_view lit = text_.substr(start, pos_ - start);
        if (lit == ".") throw SyntaxError(start, "malformed number");
        return Expr::constant(ExactScalar(parse_rational(lit)));
    }

    Expr name() {
        std::size_t start = pos_;
        while (pos_ < text_.size() &&
               (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_'))
            ++pos_;
        std::string id(text_.substr(start, pos_ - start));
        if (auto fn = prim_from_name(id)) {
            if (!accept('(')) throw SyntaxError(pos_, "expected '(' after " + id);
            Expr arg = expr();
            expect(')');
            if (*fn == PrimKind::Sqrt) return Expr::pow(arg, ExactScalar(BigRational(1, 2)));
            return Expr::prim(*fn, arg);
        }
        if (id == "x") return Expr::var();
        if (symbols_ && symbols_->index_of(id)) return Expr::constant(ExactScalar::symbol(symbols_, id));
        throw Error(ErrorCode::UnknownSymbol, "unknown symbol '" + id + "' at position " + std::to_string(start));
    }
};

} // namespace

Expr parse_expression(std::string_view text, const SymbolSetPtr& symbols) {
    return Parser(text, symbols).parse();
}

ExactScalar parse_scalar(std::string_view text, const SymbolSetPtr& symbols) {
    Expr e = parse_expression(text, symbols);
    if (e.depends_on_var())
        throw Error(ErrorCode::InvalidArgument, "expected a constant, got '" + std::string(text) + "'");
    return evaluate(e, PointValuation{});
}

} // namespace nestinv
