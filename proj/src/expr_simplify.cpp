#include "nestinv/error.hpp"
#include "nestinv/expr.hpp"

#include <map>
#include <unordered_map>

namespace nestinv {

namespace {

struct Factor {
    Expr base;
    ExactScalar exponent;
};

using Monomial = std::vector<Factor>;

struct MonomialLess {
    bool operator()(const Monomial& a, const Monomial& b) const {
        std::size_t n = std::min(a.size(), b.size());
        for (std::size_t i = 0; i < n; ++i) {
            auto c = compare(a[i].base, b[i].base);
            if (c != 0) return c < 0;
            auto d = compare(a[i].exponent, b[i].exponent);
            if (d != 0) return d < 0;
        }
        return a.size() < b.size();
    }
};

// Sum of coefficient * monomial, where monomials are products of atoms
// (x, prim(..), an irreducible sum, or a constant with a symbolic exponent)
// raised to exact exponents.
using AtomPoly = std::map<Monomial, ExactScalar, MonomialLess>;

const ExactScalar& one() {
    static const ExactScalar v(1);
    return v;
}

void accumulate(AtomPoly& p, Monomial m, const ExactScalar& c) {
    if (c.is_zero()) return;
    auto [it, inserted] = p.try_emplace(std::move(m), c);
    if (!inserted) {
        it->second += c;
        if (it->second.is_zero()) p.erase(it);
    }
}

// A constant base whose exponent became an integer is folded back into the
// coefficient.
void fold_constant_bases(Monomial& m, ExactScalar& coef) {
    for (auto it = m.begin(); it != m.end();) {
        if (it->base.is_const()) {
            if (auto k = it->exponent.as_small_integer()) {
                coef *= it->base.value().pow(*k);
                it = m.erase(it);
                continue;
            }
        }
        ++it;
    }
}

Monomial merge(const Monomial& a, const Monomial& b) {
    Monomial out;
    out.reserve(a.size() + b.size());
    std::size_t i = 0, j = 0;
    while (i < a.size() || j < b.size()) {
        if (j == b.size() || (i < a.size() && compare(a[i].base, b[j].base) < 0)) {
            out.push_back(a[i++]);
        } else if (i == a.size() || compare(b[j].base, a[i].base) < 0) {
            out.push_back(b[j++]);
        } else {
            ExactScalar e = a[i].exponent + b[j].exponent;
            if (!e.is_zero()) out.push_back({a[i].base, e});
            ++i;
            ++j;
        }
    }
    return out;
}

AtomPoly poly_mul(const AtomPoly& a, const AtomPoly& b) {
    AtomPoly out;
    for (const auto& [ma, ca] : a) {
        for (const auto& [mb, cb] : b) {
            Monomial m = merge(ma, mb);
            ExactScalar c = ca * cb;
            fold_constant_bases(m, c);
            accumulate(out, std::move(m), c);
        }
    }
    return out;
}

AtomPoly constant_poly(const ExactScalar& c) {
    AtomPoly p;
    accumulate(p, {}, c);
    return p;
}

AtomPoly atom_poly(const Expr& atom, const ExactScalar& exponent) {
    AtomPoly p;
    p.emplace(Monomial{{atom, exponent}}, one());
    return p;
}

Expr poly_to_expr(const AtomPoly& p) {
    std::vector<Expr> terms;
    terms.reserve(p.size());
    for (const auto& [m, c] : p) {
        std::vector<Expr> factors;
        if (!c.is_one() || m.empty()) factors.push_back(Expr::constant(c));
        for (const auto& f : m) {
            if (f.exponent.is_one()) {
                factors.push_back(f.base);
            } else {
                factors.push_back(Expr::pow(f.base, f.exponent));
            }
        }
        terms.push_back(Expr::mul(std::move(factors)));
    }
    return Expr::add(std::move(terms));
}

class Simplifier {
public:
    AtomPoly to_poly(const Expr& e) {
        switch (e.kind()) {
        case NodeKind::Const:
            return constant_poly(e.value());
        case NodeKind::Var:
            return atom_poly(e, one());
        case NodeKind::Prim:
            return prim_poly(e);
        case NodeKind::Pow:
            return pow_poly(memo_poly(e.child(0)), e.exponent());
        case NodeKind::Add: {
            AtomPoly out;
            for (const auto& c : e.children())
                for (const auto& [m, v] : to_poly(c)) accumulate(out, m, v);
            return out;
        }
        case NodeKind::Mul: {
            AtomPoly out = constant_poly(one());
            for (const auto& c : e.children()) {
                out = poly_mul(out, to_poly(c));
                if (out.empty()) break;
            }
            return out;
        }
        }
        return {};
    }

private:
    std::unordered_map<const ExprNode*, AtomPoly> memo_;

    const AtomPoly& memo_poly(const Expr& e) {
        auto it = memo_.find(e.id());
        if (it != memo_.end()) return it->second;
        AtomPoly p = to_poly(e);
        return memo_.emplace(e.id(), std::move(p)).first->second;
    }

    AtomPoly prim_poly(const Expr& e) {
        const AtomPoly& argp = memo_poly(e.child(0));
        Expr arg = poly_to_expr(argp);
        PrimKind k = e.prim_kind();
        if (k == PrimKind::Sqrt) return pow_poly(argp, ExactScalar(BigRational(1, 2)));
        if (arg.is_const()) {
            const ExactScalar& v = arg.value();
            if (k == PrimKind::Exp && v.is_zero()) return constant_poly(one());
            if (k == PrimKind::Ln && v.is_one()) return {};
            if (k == PrimKind::Sin && v.is_zero()) return {};
            if (k == PrimKind::Cos && v.is_zero()) return constant_poly(one());
        }
        return atom_poly(Expr::prim(k, arg), one());
    }

    AtomPoly pow_poly(const AtomPoly& base, const ExactScalar& exponent) {
        if (exponent.is_zero()) return constant_poly(one());
        auto k = exponent.as_small_integer();
        if (base.empty()) {
            auto q = exponent.as_rational();
            if (q && *q > 0) return {};
            throw Error(ErrorCode::DivisionByZero, "0 raised to a non-positive power");
        }
        if (base.size() == 1) {
            const auto& [m, c] = *base.begin();
            ExactScalar coef(1);
            Monomial extra;
            if (k) {
                coef = c.pow(*k);
            } else if (!c.is_one()) {
                auto q = c.as_rational();
                auto r = exponent.as_rational();
                std::optional<BigRational> root;
                if (q && r && *q > 0) root = exact_root(*q, static_cast<unsigned>(r->get_den().get_ui()));
                if (root) {
                    coef = ExactScalar(*root).pow(r->get_num().get_si());
                } else {
                    extra.push_back({Expr::constant(c), exponent});
                }
            }
            // (u^a)^e = u^(a e): formal rule, bases are taken positive.
            Monomial scaled;
            scaled.reserve(m.size());
            for (const auto& f : m) scaled.push_back({f.base, f.exponent * exponent});
            Monomial merged = merge(scaled, extra);
            fold_constant_bases(merged, coef);
            AtomPoly out;
            accumulate(out, std::move(merged), coef);
            return out;
        }
        if (k && *k > 0 && *k <= 12) {
            AtomPoly out = base;
            for (long i = 1; i < *k; ++i) out = poly_mul(out, base);
            return out;
        }
        return atom_poly(poly_to_expr(base), exponent);
    }
};

Expr derivative_raw(const Expr& e) {
    if (!e.depends_on_var()) return Expr::constant(ExactScalar(0));
    switch (e.kind()) {
    case NodeKind::Const:
        return Expr::constant(ExactScalar(0));
    case NodeKind::Var:
        return Expr::constant(ExactScalar(1));
    case NodeKind::Add: {
        std::vector<Expr> terms;
        for (const auto& c : e.children())
            if (c.depends_on_var()) terms.push_back(derivative_raw(c));
        return Expr::add(std::move(terms));
    }
    case NodeKind::Mul: {
        const auto& ch = e.children();
        std::vector<Expr> terms;
        for (std::size_t i = 0; i < ch.size(); ++i) {
            if (!ch[i].depends_on_var()) continue;
            std::vector<Expr> factors;
            factors.reserve(ch.size());
            for (std::size_t j = 0; j < ch.size(); ++j)
                factors.push_back(i == j ? derivative_raw(ch[j]) : ch[j]);
            terms.push_back(Expr::mul(std::move(factors)));
        }
        return Expr::add(std::move(terms));
    }
    case NodeKind::Pow: {
        const Expr& u = e.child(0);
        const ExactScalar& c = e.exponent();
        return Expr::mul({Expr::constant(c), Expr::pow(u, c - ExactScalar(1)), derivative_raw(u)});
    }
    case NodeKind::Prim: {
        const Expr& u = e.child(0);
        Expr du = derivative_raw(u);
        switch (e.prim_kind()) {
        case PrimKind::Exp:
            return Expr::mul({e, du});
        case PrimKind::Ln:
            return Expr::mul({du, Expr::pow(u, ExactScalar(-1))});
        case PrimKind::Sin:
            return Expr::mul({Expr::prim(PrimKind::Cos, u), du});
        case PrimKind::Cos:
            return Expr::mul({Expr::constant(ExactScalar(-1)), Expr::prim(PrimKind::Sin, u), du});
        case PrimKind::Sqrt:
            return Expr::mul({Expr::constant(ExactScalar(BigRational(1, 2))),
                              Expr::pow(u, ExactScalar(BigRational(-1, 2))), du});
        }
    }
    }
    return Expr::constant(ExactScalar(0));
}

} // namespace

Expr simplify(const Expr& e) {
    Simplifier s;
    return poly_to_expr(s.to_poly(e));
}

Expr differentiate(const Expr& e) { return simplify(derivative_raw(e)); }

} // namespace nestinv
