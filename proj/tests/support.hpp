#pragma once

// Shared helpers for the unit tests: seeded random generators and small
// independent reference implementations that do not go through the library
// code under test.

#include "nestinv/exact.hpp"
#include "nestinv/series.hpp"

#include <cmath>
#include <random>
#include <vector>

namespace testsupport {

using nestinv::BigRational;
using nestinv::ExactScalar;

inline std::mt19937& rng() {
    static std::mt19937 gen(0x5eedu);
    return gen;
}

inline int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng()); }

inline double uniform_real(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng()); }

/// p/q with |p| <= max_abs * q, 1 <= q <= max_den.
inline BigRational random_rational(int max_abs = 5, int max_den = 9) {
    int q = uniform_int(1, max_den);
    int p = uniform_int(-max_abs * q, max_abs * q);
    BigRational r(p, q);
    r.canonicalize();
    return r;
}

inline BigRational random_nonzero_rational(int max_abs = 5, int max_den = 9) {
    BigRational r;
    do {
        r = random_rational(max_abs, max_den);
    } while (r == 0);
    return r;
}

/// Random series a_1 t + ... + a_order t^order with a_1 != 0.
inline nestinv::PowerSeries random_reversible_series(int order, std::string var = "t") {
    std::vector<ExactScalar> c(order + 1);
    c[1] = random_nonzero_rational();
    for (int k = 2; k <= order; ++k) c[k] = random_rational();
    return nestinv::PowerSeries(std::move(c), std::move(var));
}

// ---- Independent reversion over plain rationals --------------------------

using RatSeries = std::vector<BigRational>;

inline RatSeries rat_mul(const RatSeries& a, const RatSeries& b, std::size_t n) {
    RatSeries out(n + 1, BigRational(0));
    for (std::size_t i = 0; i < a.size() && i <= n; ++i)
        for (std::size_t j = 0; j < b.size() && i + j <= n; ++j) out[i + j] += a[i] * b[j];
    return out;
}

/// h(g(t)) through t^n by Horner's rule; g[0] must be 0.
inline RatSeries rat_compose(const RatSeries& h, const RatSeries& g, std::size_t n) {
    RatSeries acc(n + 1, BigRational(0));
    for (std::size_t k = h.size(); k-- > 0;) {
        acc = rat_mul(acc, g, n);
        acc[0] += h[k];
    }
    return acc;
}

/// Compositional inverse of h (h[0] = 0, h[1] != 0) by Newton-free fixed
/// point iteration g <- g - (h(g) - t) / h_1, one correct order per step.
inline RatSeries rat_revert(const RatSeries& h, std::size_t n) {
    RatSeries g(n + 1, BigRational(0));
    for (std::size_t step = 0; step < n; ++step) {
        RatSeries hg = rat_compose(h, g, n);
        hg[1] -= 1;
        for (std::size_t k = 0; k <= n; ++k) g[k] -= hg[k] / h[1];
    }
    return g;
}

// ---- Float references for the inverse functions of the catalog -----------

/// Solves g(y) = z by Newton's method from y0.
template <class G, class DG>
double newton(G g, DG dg, double z, double y0) {
    double y = y0;
    for (int i = 0; i < 100; ++i) {
        double step = (g(y) - z) / dg(y);
        y -= step;
        if (std::abs(step) < 1e-16 * std::max(1.0, std::abs(y))) break;
    }
    return y;
}

inline double lambert_w(double z) {
    return newton([](double y) { return y * std::exp(y); }, [](double y) { return (1 + y) * std::exp(y); }, z, 0.0);
}

inline double inverse_erf(double z) {
    return newton([](double y) { return std::erf(y); },
                  [](double y) { return 2 / std::sqrt(M_PI) * std::exp(-y * y); }, z, 0.0);
}

} // namespace testsupport
