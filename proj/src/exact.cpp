#include "nestinv/exact.hpp"

#include "nestinv/error.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <ostream>
#include <set>
#include <sstream>

namespace nestinv {

namespace {

void trim(Exponents& e) {
    while (!e.empty() && e.back() == 0) e.pop_back();
}

std::uint64_t total_degree(const Exponents& e) {
    std::uint64_t d = 0;
    for (auto v : e) d += v;
    return d;
}

Exponents add_exponents(const Exponents& a, const Exponents& b) {
    Exponents r(std::max(a.size(), b.size()), 0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

bool divides(const Exponents& d, const Exponents& e) {
    if (d.size() > e.size()) return false;
    for (std::size_t i = 0; i < d.size(); ++i)
        if (d[i] > e[i]) return false;
    return true;
}

Exponents sub_exponents(const Exponents& e, const Exponents& d) {
    Exponents r = e;
    for (std::size_t i = 0; i < d.size(); ++i) r[i] -= d[i];
    trim(r);
    return r;
}

std::size_t hash_mpz(const mpz_class& z) {
    std::size_t h = mpz_size(z.get_mpz_t()) == 0 ? 0 : mpz_getlimbn(z.get_mpz_t(), 0);
    return h ^ (static_cast<std::size_t>(mpz_sgn(z.get_mpz_t()) + 1) << 61);
}

void hash_combine(std::size_t& seed, std::size_t v) {
    seed ^= v + 0x9e3779b97f4a7c15ULL + (seed << 6) + (seed >> 2);
}

} // namespace

std::string to_string(const BigRational& q) { return q.get_str(); }

BigRational parse_rational(std::string_view text) {
    std::string s(text);
    auto fail = [&] {
        return Error(ErrorCode::InvalidArgument, "not a rational number: '" + s + "'");
    };
    if (s.empty()) throw fail();
    std::size_t dot = s.find('.');
    if (dot != std::string::npos) {
        std::string digits = s.substr(0, dot) + s.substr(dot + 1);
        std::size_t places = s.size() - dot - 1;
        if (digits.empty() || digits == "-" || digits == "+") throw fail();
        for (std::size_t i = (digits[0] == '-' || digits[0] == '+') ? 1 : 0; i < digits.size(); ++i)
            if (!std::isdigit(static_cast<unsigned char>(digits[i]))) throw fail();
        if (digits[0] == '+') digits.erase(0, 1);
        BigInt num(digits, 10);
        BigInt den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, places);
        BigRational q(num, den);
        q.canonicalize();
        return q;
    }
    for (std::size_t i = 0; i < s.size(); ++i) {
        char c = s[i];
        bool ok = std::isdigit(static_cast<unsigned char>(c)) || c == '/' || (i == 0 && (c == '-' || c == '+'));
        if (!ok) throw fail();
    }
    if (s[0] == '+') s.erase(0, 1);
    BigRational q;
    if (q.set_str(s, 10) != 0) throw fail();
    if (q.get_den() == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator in '" + s + "'");
    q.canonicalize();
    return q;
}

BigRational factorial(unsigned n) {
    BigInt f;
    mpz_fac_ui(f.get_mpz_t(), n);
    return BigRational(f);
}

BigRational binomial(const BigRational& alpha, unsigned k) {
    BigRational r(1);
    for (unsigned i = 0; i < k; ++i) r *= (alpha - i);
    return r / factorial(k);
}

std::optional<BigRational> exact_root(const BigRational& q, unsigned k) {
    if (k == 0 || q < 0) return std::nullopt;
    if (k == 1) return q;
    BigInt n, d;
    if (mpz_root(n.get_mpz_t(), q.get_num_mpz_t(), k) == 0) return std::nullopt;
    if (mpz_root(d.get_mpz_t(), q.get_den_mpz_t(), k) == 0) return std::nullopt;
    BigRational r(n, d);
    r.canonicalize();
    return r;
}

// ---------------------------------------------------------------- SymbolSet

SymbolSet::SymbolSet(std::vector<std::string> names) : names_(std::move(names)) {
    std::set<std::string> seen;
    for (const auto& n : names_) {
        if (n.empty()) throw Error(ErrorCode::InvalidArgument, "empty symbol name");
        if (!seen.insert(n).second)
            throw Error(ErrorCode::InvalidArgument, "duplicate symbol '" + n + "'");
    }
}

std::optional<std::size_t> SymbolSet::index_of(std::string_view name) const {
    for (std::size_t i = 0; i < names_.size(); ++i)
        if (names_[i] == name) return i;
    return std::nullopt;
}

SymbolSetPtr make_symbols(std::vector<std::string> names) {
    return std::make_shared<const SymbolSet>(std::move(names));
}

bool GradedLexLess::operator()(const Exponents& a, const Exponents& b) const noexcept {
    auto da = total_degree(a), db = total_degree(b);
    if (da != db) return da < db;
    std::size_t n = std::max(a.size(), b.size());
    for (std::size_t i = 0; i < n; ++i) {
        auto ai = i < a.size() ? a[i] : 0u;
        auto bi = i < b.size() ? b[i] : 0u;
        if (ai != bi) return ai < bi;
    }
    return false;
}

// ---------------------------------------------------------------- MultiPoly

SymbolSetPtr unify(const MultiPoly& a, const MultiPoly& b) {
    if (a.symbols_ == b.symbols_) return a.symbols_;
    if (!a.symbols_) return b.symbols_;
    if (!b.symbols_) return a.symbols_;
    if (a.symbols_->names() == b.symbols_->names()) return a.symbols_;
    throw Error(ErrorCode::SymbolMismatch, "operands use different symbol sets");
}

MultiPoly::MultiPoly(const BigRational& c, SymbolSetPtr symbols) : symbols_(std::move(symbols)) {
    if (c != 0) terms_.emplace(Exponents{}, c);
}

MultiPoly MultiPoly::symbol(SymbolSetPtr symbols, std::size_t index) {
    if (!symbols || index >= symbols->size())
        throw Error(ErrorCode::IndexOutOfRange, "symbol index out of range");
    Exponents e(index + 1, 0);
    e[index] = 1;
    return monomial(std::move(symbols), std::move(e), BigRational(1));
}

MultiPoly MultiPoly::monomial(SymbolSetPtr symbols, Exponents e, BigRational c) {
    MultiPoly p;
    p.symbols_ = std::move(symbols);
    trim(e);
    if (c != 0) p.terms_.emplace(std::move(e), std::move(c));
    return p;
}

bool MultiPoly::is_constant() const noexcept {
    return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.empty());
}

BigRational MultiPoly::constant_term() const {
    auto it = terms_.find(Exponents{});
    return it == terms_.end() ? BigRational(0) : it->second;
}

const MultiPoly::TermMap::value_type& MultiPoly::leading() const {
    if (terms_.empty()) throw Error(ErrorCode::InvalidArgument, "leading term of zero polynomial");
    return *terms_.rbegin();
}

MultiPoly MultiPoly::operator-() const {
    MultiPoly r = *this;
    for (auto& [e, c] : r.terms_) c = -c;
    return r;
}

MultiPoly& MultiPoly::operator+=(const MultiPoly& b) {
    symbols_ = unify(*this, b);
    for (const auto& [e, c] : b.terms_) {
        auto [it, inserted] = terms_.try_emplace(e, c);
        if (!inserted) {
            it->second += c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

MultiPoly& MultiPoly::operator-=(const MultiPoly& b) {
    symbols_ = unify(*this, b);
    for (const auto& [e, c] : b.terms_) {
        auto [it, inserted] = terms_.try_emplace(e, -c);
        if (!inserted) {
            it->second -= c;
            if (it->second == 0) terms_.erase(it);
        }
    }
    return *this;
}

MultiPoly operator*(const MultiPoly& a, const MultiPoly& b) {
    MultiPoly r;
    r.symbols_ = unify(a, b);
    if (a.is_zero() || b.is_zero()) return r;
    for (const auto& [ea, ca] : a.terms_) {
        for (const auto& [eb, cb] : b.terms_) {
            auto e = add_exponents(ea, eb);
            BigRational c = ca * cb;
            auto [it, inserted] = r.terms_.try_emplace(std::move(e), c);
            if (!inserted) {
                it->second += c;
                if (it->second == 0) r.terms_.erase(it);
            }
        }
    }
    return r;
}

MultiPoly MultiPoly::scaled(const BigRational& c) const {
    MultiPoly r;
    r.symbols_ = symbols_;
    if (c == 0) return r;
    for (const auto& [e, v] : terms_) r.terms_.emplace_hint(r.terms_.end(), e, v * c);
    return r;
}

MultiPoly MultiPoly::pow(unsigned k) const {
    MultiPoly result(BigRational(1), symbols_);
    MultiPoly base = *this;
    while (k) {
        if (k & 1u) result = result * base;
        k >>= 1u;
        if (k) base = base * base;
    }
    return result;
}

BigRational MultiPoly::content() const {
    if (terms_.empty()) return BigRational(0);
    BigInt g = 0, l = 1;
    for (const auto& [e, c] : terms_) {
        mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_num_mpz_t());
        mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.get_den_mpz_t());
    }
    BigRational r(abs(g), l);
    r.canonicalize();
    return r;
}

Exponents MultiPoly::monomial_gcd() const {
    if (terms_.empty()) return {};
    Exponents g = terms_.begin()->first;
    for (const auto& [e, c] : terms_) {
        if (e.size() < g.size()) g.resize(e.size());
        for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::min(g[i], e[i]);
    }
    trim(g);
    return g;
}

MultiPoly MultiPoly::divide_by_monomial(const Exponents& d) const {
    MultiPoly r;
    r.symbols_ = symbols_;
    for (const auto& [e, c] : terms_) {
        if (!divides(d, e)) throw Error(ErrorCode::InvalidArgument, "monomial does not divide polynomial");
        r.terms_.emplace(sub_exponents(e, d), c);
    }
    return r;
}

std::optional<MultiPoly> MultiPoly::divide_exact(const MultiPoly& d) const {
    if (d.is_zero()) throw Error(ErrorCode::DivisionByZero, "polynomial division by zero");
    MultiPoly q;
    q.symbols_ = unify(*this, d);
    MultiPoly r = *this;
    const auto& [lead_e, lead_c] = d.leading();
    // Each step strictly lowers the leading monomial of r in a graded order,
    // so the loop is finite; the cap only guards pathological inputs.
    for (std::size_t steps = 0; !r.is_zero(); ++steps) {
        if (steps > 200000) return std::nullopt;
        const auto& [re, rc] = r.leading();
        if (!divides(lead_e, re)) return std::nullopt;
        MultiPoly t = monomial(q.symbols_, sub_exponents(re, lead_e), rc / lead_c);
        q += t;
        r -= t * d;
    }
    return q;
}

double MultiPoly::evaluate(std::span<const double> values) const {
    double sum = 0.0;
    for (const auto& [e, c] : terms_) {
        double t = c.get_d();
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (i >= values.size())
                throw Error(ErrorCode::InvalidArgument, "no numeric binding for symbol #" + std::to_string(i));
            t *= std::pow(values[i], static_cast<double>(e[i]));
        }
        sum += t;
    }
    return sum;
}

std::string MultiPoly::to_string() const {
    if (terms_.empty()) return "0";
    std::string out;
    for (auto it = terms_.rbegin(); it != terms_.rend(); ++it) {
        const auto& [e, c] = *it;
        std::string term;
        std::string mono;
        for (std::size_t i = 0; i < e.size(); ++i) {
            if (e[i] == 0) continue;
            if (!mono.empty()) mono += '*';
            mono += symbols_ ? symbols_->name(i) : ("?" + std::to_string(i));
            if (e[i] > 1) mono += "^" + std::to_string(e[i]);
        }
        if (mono.empty()) {
            term = c.get_str();
        } else if (c == 1) {
            term = mono;
        } else if (c == -1) {
            term = "-" + mono;
        } else {
            term = c.get_str() + "*" + mono;
        }
        if (!out.empty() && term[0] != '-') out += '+';
        out += term;
    }
    return out;
}

bool operator==(const MultiPoly& a, const MultiPoly& b) { return a.terms_ == b.terms_; }

std::strong_ordering compare(const MultiPoly& a, const MultiPoly& b) {
    if (a.terms_.size() != b.terms_.size()) return a.terms_.size() <=> b.terms_.size();
    GradedLexLess less;
    for (auto ia = a.terms_.begin(), ib = b.terms_.begin(); ia != a.terms_.end(); ++ia, ++ib) {
        if (less(ia->first, ib->first)) return std::strong_ordering::less;
        if (less(ib->first, ia->first)) return std::strong_ordering::greater;
        int c = cmp(ia->second, ib->second);
        if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    }
    return std::strong_ordering::equal;
}

std::size_t MultiPoly::hash() const noexcept {
    std::size_t h = terms_.size();
    for (const auto& [e, c] : terms_) {
        for (auto v : e) hash_combine(h, v);
        hash_combine(h, 0xabcdef);
        hash_combine(h, hash_mpz(c.get_num()));
        hash_combine(h, hash_mpz(c.get_den()));
    }
    return h;
}

// ---------------------------------------------------------------- ExactScalar

ExactScalar::ExactScalar(MultiPoly p) : num_(std::move(p)), den_(BigRational(1)) {
    den_.set_symbols(num_.symbols());
}

ExactScalar::ExactScalar(MultiPoly num, MultiPoly den) : num_(std::move(num)), den_(std::move(den)) {
    normalize();
}

ExactScalar ExactScalar::raw(MultiPoly num, MultiPoly den) {
    ExactScalar s;
    if (den.is_zero()) throw Error(ErrorCode::DivisionByZero, "zero denominator");
    auto sym = unify(num, den);
    s.num_ = std::move(num);
    s.den_ = std::move(den);
    s.num_.set_symbols(sym);
    s.den_.set_symbols(sym);
    return s;
}

ExactScalar ExactScalar::symbol(const SymbolSetPtr& symbols, std::string_view name) {
    auto idx = symbols ? symbols->index_of(name) : std::nullopt;
    if (!idx) throw Error(ErrorCode::UnknownSymbol, "unknown symbol '" + std::string(name) + "'");
    return ExactScalar(MultiPoly::symbol(symbols, *idx));
}

void ExactScalar::normalize() {
    if (den_.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero");
    auto sym = unify(num_, den_);
    num_.set_symbols(sym);
    den_.set_symbols(sym);
    auto finish_constant_den = [&] {
        BigRational c = den_.constant_term();
        num_ = num_.scaled(1 / c);
        den_ = MultiPoly(BigRational(1), sym);
    };
    if (num_.is_zero()) {
        den_ = MultiPoly(BigRational(1), sym);
        return;
    }
    if (den_.is_constant()) {
        finish_constant_den();
        return;
    }
    Exponents gn = num_.monomial_gcd();
    Exponents gd = den_.monomial_gcd();
    Exponents g(std::min(gn.size(), gd.size()));
    for (std::size_t i = 0; i < g.size(); ++i) g[i] = std::min(gn[i], gd[i]);
    trim(g);
    if (!g.empty()) {
        num_ = num_.divide_by_monomial(g);
        den_ = den_.divide_by_monomial(g);
    }
    if (den_.term_count() > 1) {
        if (auto q = num_.divide_exact(den_)) {
            num_ = std::move(*q);
            den_ = MultiPoly(BigRational(1), sym);
            return;
        }
        if (num_.term_count() > 1) {
            if (auto q = den_.divide_exact(num_)) {
                num_ = MultiPoly(BigRational(1), sym);
                den_ = std::move(*q);
            }
        }
    }
    if (den_.is_constant()) {
        finish_constant_den();
        return;
    }
    BigRational c = den_.content();
    if (den_.leading().second < 0) c = -c;
    if (c != 1) {
        den_ = den_.scaled(1 / c);
        num_ = num_.scaled(1 / c);
    }
}

ExactScalar ExactScalar::normalized() const {
    ExactScalar r = *this;
    r.normalize();
    return r;
}

bool ExactScalar::is_one() const {
    return den_.is_constant() && num_.is_constant() && num_.constant_term() == den_.constant_term();
}

std::optional<BigRational> ExactScalar::as_rational() const {
    if (!num_.is_constant() || !den_.is_constant()) return std::nullopt;
    return num_.constant_term() / den_.constant_term();
}

std::optional<long> ExactScalar::as_small_integer() const {
    auto q = as_rational();
    if (!q || q->get_den() != 1 || !q->get_num().fits_slong_p()) return std::nullopt;
    return q->get_num().get_si();
}

ExactScalar ExactScalar::operator-() const {
    ExactScalar r = *this;
    r.num_ = -r.num_;
    return r;
}

ExactScalar& ExactScalar::operator+=(const ExactScalar& b) {
    if (b.is_zero()) return *this;
    if (den_ == b.den_) {
        num_ += b.num_;
        if (!den_.is_constant()) normalize();
        else den_.set_symbols(unify(num_, den_));
        return *this;
    }
    num_ = num_ * b.den_ + b.num_ * den_;
    den_ = den_ * b.den_;
    normalize();
    return *this;
}

ExactScalar& ExactScalar::operator-=(const ExactScalar& b) { return *this += -b; }

ExactScalar& ExactScalar::operator*=(const ExactScalar& b) {
    if (den_.is_constant() && b.den_.is_constant()) {
        num_ = num_ * b.num_;
        den_.set_symbols(unify(num_, den_));
        if (num_.is_zero()) den_ = MultiPoly(BigRational(1), num_.symbols());
        return *this;
    }
    num_ = num_ * b.num_;
    den_ = den_ * b.den_;
    normalize();
    return *this;
}

ExactScalar& ExactScalar::operator/=(const ExactScalar& b) {
    if (b.is_zero()) throw Error(ErrorCode::DivisionByZero, "division by zero scalar");
    num_ = num_ * b.den_;
    den_ = den_ * b.num_;
    normalize();
    return *this;
}

ExactScalar ExactScalar::inv() const {
    if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero scalar");
    return ExactScalar(den_, num_);
}

ExactScalar ExactScalar::pow(long k) const {
    if (k < 0) return inv().pow(-k);
    ExactScalar r;
    r.num_ = num_.pow(static_cast<unsigned>(k));
    r.den_ = den_.pow(static_cast<unsigned>(k));
    return r;
}

bool operator==(const ExactScalar& a, const ExactScalar& b) {
    if (a.den_ == b.den_) return a.num_ == b.num_;
    return a.num_ * b.den_ == b.num_ * a.den_;
}

double ExactScalar::evaluate(std::span<const double> values) const {
    return num_.evaluate(values) / den_.evaluate(values);
}

std::string ExactScalar::to_string() const {
    std::string n = num_.to_string();
    if (den_.is_constant()) return n;
    auto wrap = [](const MultiPoly& p, const std::string& s) {
        if (p.is_constant()) return s;
        bool simple = false;
        if (p.term_count() == 1 && p.leading().second == 1) {
            std::size_t nonzero = 0;
            for (auto v : p.leading().first) nonzero += v != 0;
            simple = nonzero == 1;
        }
        return simple ? s : "(" + s + ")";
    };
    std::string numtxt = num_.term_count() == 1 ? n : "(" + n + ")";
    return numtxt + "/" + wrap(den_, den_.to_string());
}

std::strong_ordering compare(const ExactScalar& a, const ExactScalar& b) {
    auto c = compare(a.num_, b.num_);
    if (c != 0) return c;
    return compare(a.den_, b.den_);
}

std::size_t ExactScalar::hash() const noexcept {
    std::size_t h = num_.hash();
    hash_combine(h, den_.hash());
    return h;
}

std::ostream& operator<<(std::ostream& os, const ExactScalar& s) { return os << s.to_string(); }

const char* error_code_name(ErrorCode code) noexcept {
    switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::SymbolMismatch: return "SymbolMismatch";
    case ErrorCode::VariableMismatch: return "VariableMismatch";
    case ErrorCode::NonzeroInnerConstant: return "NonzeroInnerConstant";
    case ErrorCode::ZeroConstantTerm: return "ZeroConstantTerm";
    case ErrorCode::BadLowOrderTerms: return "BadLowOrderTerms";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::UnknownSymbol: return "UnknownSymbol";
    case ErrorCode::UnmappedAtom: return "UnmappedAtom";
    case ErrorCode::InsufficientOrder: return "InsufficientOrder";
    case ErrorCode::SingularPoint: return "SingularPoint";
    case ErrorCode::NonpositiveBound: return "NonpositiveBound";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::UnknownEntry: return "UnknownEntry";
    case ErrorCode::DomainError: return "DomainError";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::OrderMismatch: return "OrderMismatch";
    }
    return "Unknown";
}

} // namespace nestinv
