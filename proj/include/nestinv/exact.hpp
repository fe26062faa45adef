#pragma once

// Exact coefficient field: rational functions over Q in a small, fixed set
// of named symbols (pi, e, p, nu, mu, ...).

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace nestinv {

using BigInt = mpz_class;
using BigRational = mpq_class;

std::string to_string(const BigRational& q);

/// Accepts "n", "n/d" and plain decimals such as "-1.25" (converted exactly).
BigRational parse_rational(std::string_view text);

BigRational factorial(unsigned n);
BigRational binomial(const BigRational& alpha, unsigned k);

/// Exact k-th root of a non-negative rational, if it is a perfect power.
std::optional<BigRational> exact_root(const BigRational& q, unsigned k);

class SymbolSet {
public:
    explicit SymbolSet(std::vector<std::string> names);

    std::size_t size() const noexcept { return names_.size(); }
    const std::string& name(std::size_t i) const { return names_.at(i); }
    const std::vector<std::string>& names() const noexcept { return names_; }
    std::optional<std::size_t> index_of(std::string_view name) const;

private:
    std::vector<std::string> names_;
};

using SymbolSetPtr = std::shared_ptr<const SymbolSet>;

SymbolSetPtr make_symbols(std::vector<std::string> names);

/// Exponent vector in symbol order. Trailing zeros are trimmed so that a
/// constant monomial is the empty vector regardless of the symbol count.
using Exponents = std::vector<std::uint32_t>;

/// Graded lexicographic order (total degree, then lex with symbol 0 most
/// significant). Used as the monomial order for division.
struct GradedLexLess {
    bool operator()(const Exponents& a, const Exponents& b) const noexcept;
};

class MultiPoly {
public:
    using TermMap = std::map<Exponents, BigRational, GradedLexLess>;

    MultiPoly() = default;
    MultiPoly(const BigRational& c, SymbolSetPtr symbols = {});
    static MultiPoly symbol(SymbolSetPtr symbols, std::size_t index);
    static MultiPoly monomial(SymbolSetPtr symbols, Exponents e, BigRational c);

    const SymbolSetPtr& symbols() const noexcept { return symbols_; }
    const TermMap& terms() const noexcept { return terms_; }
    std::size_t term_count() const noexcept { return terms_.size(); }

    bool is_zero() const noexcept { return terms_.empty(); }
    bool is_constant() const noexcept;
    /// Constant term, or the only coefficient when is_constant().
    BigRational constant_term() const;
    bool is_monomial() const noexcept { return terms_.size() == 1; }

    /// Leading term under GradedLexLess. Requires !is_zero().
    const TermMap::value_type& leading() const;

    MultiPoly operator-() const;
    MultiPoly& operator+=(const MultiPoly& b);
    MultiPoly& operator-=(const MultiPoly& b);
    friend MultiPoly operator+(MultiPoly a, const MultiPoly& b) { return a += b; }
    friend MultiPoly operator-(MultiPoly a, const MultiPoly& b) { return a -= b; }
    friend MultiPoly operator*(const MultiPoly& a, const MultiPoly& b);
    MultiPoly scaled(const BigRational& c) const;
    MultiPoly pow(unsigned k) const;

    /// gcd of the numerators over lcm of the denominators; always positive.
    BigRational content() const;
    /// Componentwise minimum exponent over all terms.
    Exponents monomial_gcd() const;
    MultiPoly divide_by_monomial(const Exponents& e) const;
    /// q with q * d == *this, or nullopt when d does not divide exactly.
    std::optional<MultiPoly> divide_exact(const MultiPoly& d) const;

    double evaluate(std::span<const double> values) const;
    std::string to_string() const;

    friend bool operator==(const MultiPoly& a, const MultiPoly& b);
    /// Structural total order; only meaningful for canonical representatives.
    friend std::strong_ordering compare(const MultiPoly& a, const MultiPoly& b);
    std::size_t hash() const noexcept;

    void set_symbols(SymbolSetPtr s) { symbols_ = std::move(s); }

private:
    SymbolSetPtr symbols_;
    TermMap terms_;

    friend SymbolSetPtr unify(const MultiPoly& a, const MultiPoly& b);
};

SymbolSetPtr unify(const MultiPoly& a, const MultiPoly& b);

/// Element of Q(symbols). Stored as num/den with the rational content moved
/// into num and den primitive with positive leading coefficient. Equality is
/// decided by cross-multiplication, so it never depends on how far the
/// representative is reduced.
class ExactScalar {
public:
    ExactScalar() : num_(BigRational(0)), den_(BigRational(1)) {}
    ExactScalar(long v) : num_(BigRational(v)), den_(BigRational(1)) {}
    ExactScalar(const BigRational& q) : num_(q), den_(BigRational(1)) {}
    explicit ExactScalar(MultiPoly p);
    ExactScalar(MultiPoly num, MultiPoly den);

    static ExactScalar symbol(const SymbolSetPtr& symbols, std::string_view name);

    const MultiPoly& num() const noexcept { return num_; }
    const MultiPoly& den() const noexcept { return den_; }
    SymbolSetPtr symbols() const { return unify(num_, den_); }

    bool is_zero() const noexcept { return num_.is_zero(); }
    bool is_one() const;
    bool is_polynomial() const noexcept { return den_.is_constant(); }
    /// Value in Q if no symbol occurs.
    std::optional<BigRational> as_rational() const;
    /// Value in Z if no symbol occurs and it is integral.
    std::optional<long> as_small_integer() const;

    ExactScalar operator-() const;
    ExactScalar& operator+=(const ExactScalar& b);
    ExactScalar& operator-=(const ExactScalar& b);
    ExactScalar& operator*=(const ExactScalar& b);
    ExactScalar& operator/=(const ExactScalar& b);
    friend ExactScalar operator+(ExactScalar a, const ExactScalar& b) { return a += b; }
    friend ExactScalar operator-(ExactScalar a, const ExactScalar& b) { return a -= b; }
    friend ExactScalar operator*(ExactScalar a, const ExactScalar& b) { return a *= b; }
    friend ExactScalar operator/(ExactScalar a, const ExactScalar& b) { return a /= b; }
    ExactScalar inv() const;
    ExactScalar pow(long k) const;

    friend bool operator==(const ExactScalar& a, const ExactScalar& b);

    /// Idempotent re-normalization of the stored representative.
    ExactScalar normalized() const;

    double evaluate(std::span<const double> values) const;
    std::string to_string() const;

    friend std::strong_ordering compare(const ExactScalar& a, const ExactScalar& b);
    std::size_t hash() const noexcept;

    /// Builds without normalizing; for tests of normalization only.
    static ExactScalar raw(MultiPoly num, MultiPoly den);

private:
    MultiPoly num_;
    MultiPoly den_;

    void normalize();
};

std::ostream& operator<<(std::ostream& os, const ExactScalar& s);

} // namespace nestinv
