#pragma once

// Differentiable expressions in one variable `x` over ExactScalar constants.
//
// Trees are immutable and share structure. There is no division node: u/v is
// Mul(u, Pow(v, -1)), and sqrt(u) parses to Pow(u, 1/2).

#include "nestinv/exact.hpp"

#include <compare>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace nestinv {

enum class NodeKind { Const, Var, Prim, Pow, Mul, Add };
enum class PrimKind { Exp, Ln, Sin, Cos, Sqrt };

const char* prim_name(PrimKind k) noexcept;
std::optional<PrimKind> prim_from_name(std::string_view name) noexcept;

struct ExprNode;

class Expr {
public:
    /// The constant 0.
    Expr();

    static Expr constant(const ExactScalar& c);
    static Expr var();
    /// Add/Mul with fewer than two children collapse to the child (or to the
    /// neutral element when empty).
    static Expr add(std::vector<Expr> children);
    static Expr mul(std::vector<Expr> children);
    static Expr pow(Expr base, const ExactScalar& exponent);
    static Expr prim(PrimKind kind, Expr arg);

    NodeKind kind() const noexcept;
    const ExactScalar& value() const;    // Const
    const ExactScalar& exponent() const; // Pow
    PrimKind prim_kind() const;          // Prim
    const std::vector<Expr>& children() const noexcept;
    const Expr& child(std::size_t i) const { return children().at(i); }

    bool is_const() const noexcept { return kind() == NodeKind::Const; }
    bool is_zero() const;
    bool is_one() const;
    bool depends_on_var() const noexcept;
    std::size_t hash() const noexcept;
    std::size_t node_count() const noexcept;
    const ExprNode* id() const noexcept { return node_.get(); }

    /// Renders in the same grammar accepted by parse_expression.
    std::string to_string() const;

    friend bool operator==(const Expr& a, const Expr& b);
    friend std::strong_ordering compare(const Expr& a, const Expr& b);

private:
    explicit Expr(std::shared_ptr<const ExprNode> n) : node_(std::move(n)) {}
    std::shared_ptr<const ExprNode> node_;
};

Expr operator+(const Expr& a, const Expr& b);
Expr operator-(const Expr& a, const Expr& b);
Expr operator*(const Expr& a, const Expr& b);
Expr operator-(const Expr& a);

/// Grammar (x is the variable; other names must be declared symbols):
///   expr   := term (('+'|'-') term)*
///   term   := factor (('*'|'/') factor)*
///   factor := '-' factor | power
///   power  := atom ('^' factor)?          exponent must not depend on x
///   atom   := number | 'x' | symbol | func '(' expr ')' | '(' expr ')'
///   func   := exp | ln | sin | cos | sqrt
/// Numbers are integers or decimals; "3/2" is read as a quotient.
Expr parse_expression(std::string_view text, const SymbolSetPtr& symbols);

/// Parses an expression that must fold to an exact constant (e.g. "pi/2",
/// "3/2*p^2*nu", "(p^2+4)/2").
ExactScalar parse_scalar(std::string_view text, const SymbolSetPtr& symbols);

/// Canonical sum-of-products form: products are expanded, like terms are
/// collected and equal bases in a product have their exponents added.
/// Bases are compared structurally, never algebraically.
Expr simplify(const Expr& e);

/// d/dx, simplified.
Expr differentiate(const Expr& e);

/// Exact values for the atoms an expression reaches at one point: the point
/// itself, prim(argument) values, and base^exponent values that are not
/// integer powers.
class PointValuation {
public:
    PointValuation() = default;
    explicit PointValuation(ExactScalar point) : point_(std::move(point)) {}

    bool has_point() const noexcept { return point_.has_value(); }
    const ExactScalar& point() const;
    PointValuation with_point(ExactScalar p) const;

    void add_prim(PrimKind kind, ExactScalar argument, ExactScalar value);
    void add_pow(ExactScalar base, ExactScalar exponent, ExactScalar value);
    /// Declares atom = base^symbol, so base^(q + c*symbol) = base^q * atom^c
    /// for integer q and c (and likewise for integer powers of base).
    void add_pow_rule(BigRational base, std::size_t symbol, ExactScalar atom);

    /// Accepts "sin(pi/2)=1" style prim entries and "2^(nu)=T" style power
    /// entries. A power whose exponent is a single symbol with a rational
    /// base becomes a rule; anything else is a table entry.
    void declare(std::string_view text, const SymbolSetPtr& symbols);

    /// Built-ins first (exp(0)=1, ln(1)=0, sin(0)=0, cos(0)=1, sqrt of exact
    /// squares), then the table.
    std::optional<ExactScalar> lookup_prim(PrimKind kind, const ExactScalar& arg) const;
    /// Integer powers, 1^anything, exact rational roots, table, rules.
    std::optional<ExactScalar> lookup_pow(const ExactScalar& base, const ExactScalar& exponent) const;

private:
    struct PrimEntry {
        PrimKind kind;
        ExactScalar argument;
        ExactScalar value;
    };
    struct PowEntry {
        ExactScalar base;
        ExactScalar exponent;
        ExactScalar value;
    };
    struct PowRule {
        BigRational base;
        std::size_t symbol;
        ExactScalar atom;
    };

    std::optional<ExactScalar> apply_rules(const BigRational& base, const ExactScalar& exponent) const;

    std::optional<ExactScalar> point_;
    std::vector<PrimEntry> prims_;
    std::vector<PowEntry> pows_;
    std::vector<PowRule> rules_;
};

/// Exact evaluation. Throws Error(UnmappedAtom) naming the missing atom.
ExactScalar evaluate(const Expr& e, const PointValuation& at);

} // namespace nestinv
