#include "nestinv/expr.hpp"

#include "nestinv/error.hpp"

namespace nestinv {

struct ExprNode {
    NodeKind kind = NodeKind::Const;
    PrimKind prim = PrimKind::Exp;
    ExactScalar scalar;
    std::vector<Expr> children;
    std::size_t hash = 0;
    std::size_t count = 1;
    bool has_var = false;
};

namespace {

void mix(std::size_t& seed, std::size_t v) {
    seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

std::shared_ptr<ExprNode> make_node(NodeKind kind) {
    auto n = std::make_shared<ExprNode>();
    n->kind = kind;
    return n;
}

void finish(ExprNode& n) {
    std::size_t h = static_cast<std::size_t>(n.kind) * 0x100000001b3ULL;
    mix(h, static_cast<std::size_t>(n.prim));
    if (n.kind == NodeKind::Const || n.kind == NodeKind::Pow) mix(h, n.scalar.hash());
    n.has_var = n.kind == NodeKind::Var;
    n.count = 1;
    for (const auto& c : n.children) {
        mix(h, c.hash());
        n.has_var = n.has_var || c.depends_on_var();
        n.count += c.node_count();
    }
    n.hash = h;
}

bool is_nonneg_integer(const ExactScalar& c) {
    auto q = c.as_rational();
    return q && q->get_den() == 1 && *q >= 0;
}

// A scalar that can stand as a left factor of a product without parentheses.
bool scalar_is_product_safe(const ExactScalar& c) {
    return c.num().term_count() <= 1 && (c.den().is_constant() || c.den().term_count() == 1);
}

// A scalar that can stand as the base of '^' without parentheses.
bool scalar_is_atomic(const ExactScalar& c) {
    if (is_nonneg_integer(c)) return true;
    if (!c.den().is_constant() || c.num().term_count() != 1) return false;
    const auto& [e, coef] = c.num().leading();
    std::size_t nonzero = 0;
    for (auto v : e) {
        if (v > 1) return false;
        if (v) ++nonzero;
    }
    return coef == 1 && nonzero == 1;
}

std::string render(const Expr& e);

std::string render_factor(const Expr& e) {
    if (e.kind() == NodeKind::Add) return "(" + render(e) + ")";
    if (e.kind() == NodeKind::Const && !scalar_is_product_safe(e.value())) return "(" + render(e) + ")";
    return render(e);
}

std::string render(const Expr& e) {
    switch (e.kind()) {
    case NodeKind::Const:
        return e.value().to_string();
    case NodeKind::Var:
        return "x";
    case NodeKind::Prim:
        return std::string(prim_name(e.prim_kind())) + "(" + render(e.child(0)) + ")";
    case NodeKind::Pow: {
        const Expr& b = e.child(0);
        std::string bs = render(b);
        bool atomic = b.kind() == NodeKind::Var || b.kind() == NodeKind::Prim ||
                      (b.kind() == NodeKind::Const && scalar_is_atomic(b.value()));
        if (!atomic) bs = "(" + bs + ")";
        const ExactScalar& x = e.exponent();
        std::string xs = x.to_string();
        if (!is_nonneg_integer(x)) xs = "(" + xs + ")";
        return bs + "^" + xs;
    }
    case NodeKind::Mul: {
        std::string out;
        std::size_t start = 0;
        const auto& ch = e.children();
        if (ch[0].kind() == NodeKind::Const && ch[0].value() == ExactScalar(-1)) {
            out = "-";
            start = 1;
        }
        for (std::size_t i = start; i < ch.size(); ++i) {
            if (i > start) out += "*";
            out += render_factor(ch[i]);
        }
        return out;
    }
    case NodeKind::Add: {
        std::string out;
        for (const auto& c : e.children()) {
            std::string s = c.kind() == NodeKind::Const && !scalar_is_product_safe(c.value())
                                ? "(" + render(c) + ")"
                                : render(c);
            if (!out.empty() && s[0] != '-') out += "+";
            out += s;
        }
        return out;
    }
    }
    return "?";
}

} // namespace

const char* prim_name(PrimKind k) noexcept {
    switch (k) {
    case PrimKind::Exp: return "exp";
    case PrimKind::Ln: return "ln";
    case PrimKind::Sin: return "sin";
    case PrimKind::Cos: return "cos";
    case PrimKind::Sqrt: return "sqrt";
    }
    return "?";
}

std::optional<PrimKind> prim_from_name(std::string_view name) noexcept {
    if (name == "exp") return PrimKind::Exp;
    if (name == "ln") return PrimKind::Ln;
    if (name == "sin") return PrimKind::Sin;
    if (name == "cos") return PrimKind::Cos;
    if (name == "sqrt") return PrimKind::Sqrt;
    return std::nullopt;
}

Expr::Expr() : Expr(constant(ExactScalar(0))) {}

Expr Expr::constant(const ExactScalar& c) {
    auto n = make_node(NodeKind::Const);
    n->scalar = c;
    finish(*n);
    return Expr(std::move(n));
}

Expr Expr::var() {
    static const Expr v = [] {
        auto n = make_node(NodeKind::Var);
        finish(*n);
        return Expr(std::move(n));
    }();
    return v;
}

Expr Expr::add(std::vector<Expr> children) {
    if (children.empty()) return constant(ExactScalar(0));
    if (children.size() == 1) return children.front();
    auto n = make_node(NodeKind::Add);
    n->children = std::move(children);
    finish(*n);
    return Expr(std::move(n));
}

Expr Expr::mul(std::vector<Expr> children) {
    if (children.empty()) return constant(ExactScalar(1));
    if (children.size() == 1) return children.front();
    auto n = make_node(NodeKind::Mul);
    n->children = std::move(children);
    finish(*n);
    return Expr(std::move(n));
}

Expr Expr::pow(Expr base, const ExactScalar& exponent) {
    auto n = make_node(NodeKind::Pow);
    n->scalar = exponent;
    n->children.push_back(std::move(base));
    finish(*n);
    return Expr(std::move(n));
}

Expr Expr::prim(PrimKind kind, Expr arg) {
    auto n = make_node(NodeKind::Prim);
    n->prim = kind;
    n->children.push_back(std::move(arg));
    finish(*n);
    return Expr(std::move(n));
}

NodeKind Expr::kind() const noexcept { return node_->kind; }

const ExactScalar& Expr::value() const {
    if (node_->kind != NodeKind::Const) throw Error(ErrorCode::InvalidArgument, "value() of non-constant node");
    return node_->scalar;
}

const ExactScalar& Expr::exponent() const {
    if (node_->kind != NodeKind::Pow) throw Error(ErrorCode::InvalidArgument, "exponent() of non-power node");
    return node_->scalar;
}

PrimKind Expr::prim_kind() const {
    if (node_->kind != NodeKind::Prim) throw Error(ErrorCode::InvalidArgument, "prim_kind() of non-prim node");
    return node_->prim;
}

const std::vector<Expr>& Expr::children() const noexcept { return node_->children; }
bool Expr::is_zero() const { return is_const() && value().is_zero(); }
bool Expr::is_one() const { return is_const() && value().is_one(); }
bool Expr::depends_on_var() const noexcept { return node_->has_var; }
std::size_t Expr::hash() const noexcept { return node_->hash; }
std::size_t Expr::node_count() const noexcept { return node_->count; }
std::string Expr::to_string() const { return render(*this); }

bool operator==(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return true;
    if (a.hash() != b.hash()) return false;
    return compare(a, b) == 0;
}

std::strong_ordering compare(const Expr& a, const Expr& b) {
    if (a.node_ == b.node_) return std::strong_ordering::equal;
    if (a.kind() != b.kind()) return a.kind() <=> b.kind();
    switch (a.kind()) {
    case NodeKind::Const:
        return compare(a.value(), b.value());
    case NodeKind::Var:
        return std::strong_ordering::equal;
    case NodeKind::Prim:
        if (a.prim_kind() != b.prim_kind()) return a.prim_kind() <=> b.prim_kind();
        return compare(a.child(0), b.child(0));
    case NodeKind::Pow: {
        auto c = compare(a.child(0), b.child(0));
        if (c != 0) return c;
        return compare(a.exponent(), b.exponent());
    }
    case NodeKind::Mul:
    case NodeKind::Add: {
        const auto& ca = a.children();
        const auto& cb = b.children();
        if (ca.size() != cb.size()) return ca.size() <=> cb.size();
        for (std::size_t i = 0; i < ca.size(); ++i) {
            auto c = compare(ca[i], cb[i]);
            if (c != 0) return c;
        }
        return std::strong_ordering::equal;
    }
    }
    return std::strong_ordering::equal;
}

Expr operator+(const Expr& a, const Expr& b) { return Expr::add({a, b}); }
Expr operator-(const Expr& a, const Expr& b) { return Expr::add({a, -b}); }
Expr operator*(const Expr& a, const Expr& b) { return Expr::mul({a, b}); }
Expr operator-(const Expr& a) {
    if (a.is_const()) return Expr::constant(-a.value());
    return Expr::mul({Expr::constant(ExactScalar(-1)), a});
}

} // namespace nestinv
