#include "nestinv/error.hpp"
#include "nestinv/expr.hpp"

#include <unordered_map>

namespace nestinv {

namespace {

// Smallest |m| <= 64 with base^m == q, if any.
std::optional<long> integer_log(const BigRational& q, const BigRational& base) {
    if (q == 1) return 0L;
    if (base == 0 || abs(base) == 1) return std::nullopt;
    BigRational up = base;
    BigRational down = 1 / base;
    for (long m = 1; m <= 64; ++m) {
        if (up == q) return m;
        if (down == q) return -m;
        up *= base;
        down /= base;
    }
    return std::nullopt;
}

class Evaluator {
public:
    explicit Evaluator(const PointValuation& at) : at_(at) {}

    ExactScalar eval(const Expr& e) {
        switch (e.kind()) {
        case NodeKind::Const:
            return e.value();
        case NodeKind::Var:
            return at_.point();
        default:
            break;
        }
        auto it = memo_.find(e.id());
        if (it != memo_.end()) return it->second;
        ExactScalar v = compute(e);
        memo_.emplace(e.id(), v);
        return v;
    }

private:
    const PointValuation& at_;
    std::unordered_map<const ExprNode*, ExactScalar> memo_;

    ExactScalar compute(const Expr& e) {
        switch (e.kind()) {
        case NodeKind::Add: {
            ExactScalar s;
            for (const auto& c : e.children()) s += eval(c);
            return s;
        }
        case NodeKind::Mul: {
            ExactScalar p(1);
            for (const auto& c : e.children()) {
                p *= eval(c);
                if (p.is_zero()) break;
            }
            return p;
        }
        case NodeKind::Pow: {
            ExactScalar b = eval(e.child(0));
            if (auto v = at_.lookup_pow(b, e.exponent())) return *v;
            throw Error(ErrorCode::UnmappedAtom, "no exact value for (" + b.to_string() + ")^(" +
                                                     e.exponent().to_string() + "); declare it as an atom");
        }
        case NodeKind::Prim: {
            ExactScalar a = eval(e.child(0));
            if (auto v = at_.lookup_prim(e.prim_kind(), a)) return *v;
            throw Error(ErrorCode::UnmappedAtom, std::string("no exact value for ") + prim_name(e.prim_kind()) + "(" +
                                                     a.to_string() + "); declare it as an atom");
        }
        default:
            break;
        }
        return ExactScalar();
    }
};

} // namespace

const ExactScalar& PointValuation::point() const {
    if (!point_) throw Error(ErrorCode::InvalidArgument, "expression depends on x but no point was given");
    return *point_;
}

PointValuation PointValuation::with_point(ExactScalar p) const {
    PointValuation v = *this;
    v.point_ = std::move(p);
    return v;
}

void PointValuation::add_prim(PrimKind kind, ExactScalar argument, ExactScalar value) {
    prims_.push_back({kind, std::move(argument), std::move(value)});
}

void PointValuation::add_pow(ExactScalar base, ExactScalar exponent, ExactScalar value) {
    pows_.push_back({std::move(base), std::move(exponent), std::move(value)});
}

void PointValuation::add_pow_rule(BigRational base, std::size_t symbol, ExactScalar atom) {
    if (base <= 0 || base == 1)
        throw Error(ErrorCode::InvalidArgument, "power rule base must be positive and different from 1");
    rules_.push_back({std::move(base), symbol, std::move(atom)});
}

void PointValuation::declare(std::string_view text, const SymbolSetPtr& symbols) {
    auto eq = text.rfind('=');
    if (eq == std::string_view::npos)
        throw Error(ErrorCode::InvalidArgument, "atom declaration '" + std::string(text) + "' has no '='");
    Expr lhs = parse_expression(text.substr(0, eq), symbols);
    ExactScalar rhs = parse_scalar(text.substr(eq + 1), symbols);
    if (lhs.depends_on_var())
        throw Error(ErrorCode::InvalidArgument, "atom declaration '" + std::string(text) + "' depends on x");
    PointValuation constants = *this;
    constants.point_.reset();
    if (lhs.kind() == NodeKind::Prim) {
        add_prim(lhs.prim_kind(), evaluate(lhs.child(0), constants), rhs);
        return;
    }
    if (lhs.kind() == NodeKind::Pow) {
        ExactScalar base = evaluate(lhs.child(0), constants);
        const ExactScalar& ex = lhs.exponent();
        auto q = base.as_rational();
        if (q && *q > 0 && *q != 1 && ex.is_polynomial() && ex.num().is_monomial() && ex.den().is_constant()) {
            const auto& [e, c] = ex.num().leading();
            std::size_t nonzero = 0, idx = 0;
            bool linear = true;
            for (std::size_t i = 0; i < e.size(); ++i) {
                if (e[i] > 1) linear = false;
                if (e[i]) {
                    ++nonzero;
                    idx = i;
                }
            }
            if (linear && nonzero == 1 && c == ex.den().constant_term()) {
                add_pow_rule(*q, idx, rhs);
                return;
            }
        }
        add_pow(base, ex, rhs);
        return;
    }
    throw Error(ErrorCode::InvalidArgument,
                "atom declaration '" + std::string(text) + "' must have a function or a power on the left");
}

std::optional<ExactScalar> PointValuation::lookup_prim(PrimKind kind, const ExactScalar& arg) const {
    if (kind == PrimKind::Exp && arg.is_zero()) return ExactScalar(1);
    if (kind == PrimKind::Ln && arg.is_one()) return ExactScalar(0);
    if (kind == PrimKind::Sin && arg.is_zero()) return ExactScalar(0);
    if (kind == PrimKind::Cos && arg.is_zero()) return ExactScalar(1);
    if (kind == PrimKind::Sqrt) {
        if (auto r = lookup_pow(arg, ExactScalar(BigRational(1, 2)))) return r;
    }
    for (const auto& p : prims_)
        if (p.kind == kind && p.argument == arg) return p.value;
    return std::nullopt;
}

std::optional<ExactScalar> PointValuation::lookup_pow(const ExactScalar& base, const ExactScalar& exponent) const {
    if (auto k = exponent.as_small_integer()) {
        if (base.is_zero() && *k < 0) throw Error(ErrorCode::DivisionByZero, "0 raised to a negative power");
        return base.pow(*k);
    }
    if (exponent.is_zero() || base.is_one()) return ExactScalar(1);
    auto q = base.as_rational();
    auto r = exponent.as_rational();
    if (base.is_zero() && r && *r > 0) return ExactScalar(0);
    if (q && r && *q > 0) {
        if (auto root = exact_root(*q, static_cast<unsigned>(r->get_den().get_ui())))
            return ExactScalar(*root).pow(r->get_num().get_si());
    }
    for (const auto& p : pows_)
        if (p.base == base && p.exponent == exponent) return p.value;
    if (q && *q > 0) return apply_rules(*q, exponent);
    return std::nullopt;
}

std::optional<ExactScalar> PointValuation::apply_rules(const BigRational& base, const ExactScalar& exponent) const {
    if (rules_.empty() || !exponent.is_polynomial()) return std::nullopt;
    const BigRational den = exponent.den().constant_term();
    BigRational c0 = exponent.num().constant_term() / den;
    if (c0.get_den() != 1 || !c0.get_num().fits_slong_p()) return std::nullopt;
    ExactScalar result = ExactScalar(base).pow(c0.get_num().get_si());
    for (const auto& [e, c] : exponent.num().terms()) {
        std::size_t nonzero = 0, idx = 0;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] > 1) return std::nullopt;
            if (e[i]) {
                ++nonzero;
                idx = i;
            }
        }
        if (nonzero == 0) continue;
        if (nonzero != 1) return std::nullopt;
        BigRational ci = c / den;
        bool matched = false;
        for (const auto& rule : rules_) {
            if (rule.symbol != idx) continue;
            auto m = integer_log(base, rule.base);
            if (!m) continue;
            BigRational power = ci * *m;
            if (power.get_den() != 1 || !power.get_num().fits_slong_p()) continue;
            result *= rule.atom.pow(power.get_num().get_si());
            matched = true;
            break;
        }
        if (!matched) return std::nullopt;
    }
    return result;
}

ExactScalar evaluate(const Expr& e, const PointValuation& at) { return Evaluator(at).eval(e); }

} // namespace nestinv
