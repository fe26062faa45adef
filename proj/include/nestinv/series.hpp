#pragma once

#include "nestinv/exact.hpp"

#include <string>
#include <vector>

namespace nestinv {

/// Truncated power series c_0 + c_1 t + ... + c_M t^M + O(t^{M+1}).
///
/// `order()` is the highest power whose coefficient is trustworthy. Every
/// operation propagates it: products keep the smaller order, differentiation
/// loses one, integration gains one.
class PowerSeries {
public:
    PowerSeries() : coeffs_(1), var_("z") {}
    PowerSeries(std::vector<ExactScalar> coeffs, std::string var = "z");

    /// The series 0 + 1*t truncated at `order`.
    static PowerSeries identity(int order, std::string var = "z");
    static PowerSeries constant(const ExactScalar& c, int order, std::string var = "z");

    int order() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
    const std::string& var() const noexcept { return var_; }
    const std::vector<ExactScalar>& coeffs() const noexcept { return coeffs_; }
    const ExactScalar& operator[](std::size_t k) const { return coeffs_.at(k); }

    PowerSeries truncated(int order) const;

    friend PowerSeries operator+(const PowerSeries& a, const PowerSeries& b);
    friend PowerSeries operator-(const PowerSeries& a, const PowerSeries& b);
    friend PowerSeries operator*(const PowerSeries& a, const PowerSeries& b);
    PowerSeries operator-() const;
    PowerSeries scaled(const ExactScalar& c) const;

    PowerSeries derivative() const;
    PowerSeries integral() const;

    /// Multiplicative inverse; requires c_0 != 0.
    PowerSeries reciprocal() const;
    PowerSeries pow(unsigned k) const;

    /// Drops the constant term and divides by t; order decreases by one.
    PowerSeries shifted_down() const;

    /// Exact equality of every coefficient through the common order.
    bool equals_through(const PowerSeries& b, int order) const;
    bool is_zero() const;

    std::string to_string() const;

private:
    std::vector<ExactScalar> coeffs_;
    std::string var_;
};

/// outer(inner(t)); requires inner's constant term to be zero.
PowerSeries compose(const PowerSeries& outer, const PowerSeries& inner);

/// Compositional inverse r with compose(a, r) = t, by solving for one
/// coefficient at a time (equating powers). Requires c_0 = 0, c_1 != 0.
PowerSeries revert(const PowerSeries& a);

} // namespace nestinv
