#include "nestinv/series.hpp"

#include "nestinv/error.hpp"

#include <algorithm>

namespace nestinv {

namespace {

void require_same_var(const PowerSeries& a, const PowerSeries& b) {
    if (a.var() != b.var())
        throw Error(ErrorCode::VariableMismatch,
                    "series in '" + a.var() + "' combined with series in '" + b.var() + "'");
}

bool is_simple_coefficient(const ExactScalar& c) {
    return c.num().term_count() <= 1 && c.den().is_constant();
}

} // namespace

PowerSeries::PowerSeries(std::vector<ExactScalar> coeffs, std::string var)
    : coeffs_(std::move(coeffs)), var_(std::move(var)) {
    if (coeffs_.empty()) throw Error(ErrorCode::InvalidArgument, "power series needs at least one coefficient");
}

PowerSeries PowerSeries::identity(int order, std::string var) {
    std::vector<ExactScalar> c(static_cast<std::size_t>(std::max(order, 0)) + 1);
    if (order >= 1) c[1] = ExactScalar(1);
    return PowerSeries(std::move(c), std::move(var));
}

PowerSeries PowerSeries::constant(const ExactScalar& v, int order, std::string var) {
    std::vector<ExactScalar> c(static_cast<std::size_t>(std::max(order, 0)) + 1);
    c[0] = v;
    return PowerSeries(std::move(c), std::move(var));
}

PowerSeries PowerSeries::truncated(int order) const {
    if (order < 0) throw Error(ErrorCode::InvalidArgument, "negative truncation order");
    if (order > this->order())
        throw Error(ErrorCode::InsufficientOrder, "cannot extend a series beyond its known order");
    return PowerSeries(std::vector<ExactScalar>(coeffs_.begin(), coeffs_.begin() + order + 1), var_);
}

PowerSeries operator+(const PowerSeries& a, const PowerSeries& b) {
    require_same_var(a, b);
    int m = std::min(a.order(), b.order());
    std::vector<ExactScalar> c(m + 1);
    for (int k = 0; k <= m; ++k) c[k] = a.coeffs_[k] + b.coeffs_[k];
    return PowerSeries(std::move(c), a.var_);
}

PowerSeries operator-(const PowerSeries& a, const PowerSeries& b) {
    require_same_var(a, b);
    int m = std::min(a.order(), b.order());
    std::vector<ExactScalar> c(m + 1);
    for (int k = 0; k <= m; ++k) c[k] = a.coeffs_[k] - b.coeffs_[k];
    return PowerSeries(std::move(c), a.var_);
}

PowerSeries operator*(const PowerSeries& a, const PowerSeries& b) {
    require_same_var(a, b);
    int m = std::min(a.order(), b.order());
    std::vector<ExactScalar> c(m + 1);
    for (int i = 0; i <= m; ++i) {
        if (a.coeffs_[i].is_zero()) continue;
        for (int j = 0; i + j <= m; ++j) {
            if (b.coeffs_[j].is_zero()) continue;
            c[i + j] += a.coeffs_[i] * b.coeffs_[j];
        }
    }
    return PowerSeries(std::move(c), a.var_);
}

PowerSeries PowerSeries::operator-() const {
    auto c = coeffs_;
    for (auto& v : c) v = -v;
    return PowerSeries(std::move(c), var_);
}

PowerSeries PowerSeries::scaled(const ExactScalar& s) const {
    auto c = coeffs_;
    for (auto& v : c) v *= s;
    return PowerSeries(std::move(c), var_);
}

PowerSeries PowerSeries::derivative() const {
    if (order() == 0)
        throw Error(ErrorCode::InsufficientOrder, "derivative of a series known only through t^0");
    std::vector<ExactScalar> c(order());
    for (int k = 0; k < order(); ++k) c[k] = coeffs_[k + 1] * ExactScalar(k + 1);
    return PowerSeries(std::move(c), var_);
}

PowerSeries PowerSeries::integral() const {
    std::vector<ExactScalar> c(order() + 2);
    for (int k = 0; k <= order(); ++k) c[k + 1] = coeffs_[k] / ExactScalar(k + 1);
    return PowerSeries(std::move(c), var_);
}

PowerSeries PowerSeries::reciprocal() const {
    if (coeffs_[0].is_zero())
        throw Error(ErrorCode::ZeroConstantTerm, "reciprocal of a series with zero constant term");
    const int m = order();
    ExactScalar inv0 = coeffs_[0].inv();
    std::vector<ExactScalar> r(m + 1);
    r[0] = inv0;
    for (int n = 1; n <= m; ++n) {
        ExactScalar acc;
        for (int k = 1; k <= n; ++k) {
            if (coeffs_[k].is_zero() || r[n - k].is_zero()) continue;
            acc += coeffs_[k] * r[n - k];
        }
        r[n] = -(acc * inv0);
    }
    return PowerSeries(std::move(r), var_);
}

PowerSeries PowerSeries::pow(unsigned k) const {
    PowerSeries result = constant(ExactScalar(1), order(), var_);
    PowerSeries base = *this;
    while (k) {
        if (k & 1u) result = result * base;
        k >>= 1u;
        if (k) base = base * base;
    }
    return result;
}

PowerSeries PowerSeries::shifted_down() const {
    if (order() < 1) throw Error(ErrorCode::InsufficientOrder, "cannot divide an order-0 series by t");
    return PowerSeries(std::vector<ExactScalar>(coeffs_.begin() + 1, coeffs_.end()), var_);
}

bool PowerSeries::equals_through(const PowerSeries& b, int order) const {
    if (order > this->order() || order > b.order()) return false;
    for (int k = 0; k <= order; ++k)
        if (!(coeffs_[k] == b.coeffs_[k])) return false;
    return true;
}

bool PowerSeries::is_zero() const {
    return std::all_of(coeffs_.begin(), coeffs_.end(), [](const ExactScalar& c) { return c.is_zero(); });
}

std::string PowerSeries::to_string() const {
    std::string out;
    for (int k = 0; k <= order(); ++k) {
        const auto& c = coeffs_[k];
        if (c.is_zero()) continue;
        std::string mono = k == 0 ? "" : (k == 1 ? var_ : var_ + "^" + std::to_string(k));
        std::string cs = c.to_string();
        std::string term;
        if (mono.empty()) {
            term = is_simple_coefficient(c) ? cs : "(" + cs + ")";
        } else if (cs == "1") {
            term = mono;
        } else if (cs == "-1") {
            term = "-" + mono;
        } else {
            term = (is_simple_coefficient(c) ? cs : "(" + cs + ")") + "*" + mono;
        }
        if (out.empty()) {
            out = term;
        } else if (term[0] == '-') {
            out += " - " + term.substr(1);
        } else {
            out += " + " + term;
        }
    }
    if (out.empty()) out = "0";
    out += " + O(" + var_ + "^" + std::to_string(order() + 1) + ")";
    return out;
}

PowerSeries compose(const PowerSeries& outer, const PowerSeries& inner) {
    if (!inner[0].is_zero())
        throw Error(ErrorCode::NonzeroInnerConstant, "inner series of a composition must vanish at 0");
    const int m = std::min(outer.order(), inner.order());
    PowerSeries in = inner.truncated(m);
    PowerSeries acc = PowerSeries::constant(outer[m], m, inner.var());
    for (int k = m - 1; k >= 0; --k) {
        acc = acc * in;
        auto c = acc.coeffs();
        c[0] += outer[k];
        acc = PowerSeries(std::move(c), inner.var());
    }
    return acc;
}

PowerSeries revert(const PowerSeries& a) {
    const int m = a.order();
    if (!a[0].is_zero() || m < 1 || a[1].is_zero())
        throw Error(ErrorCode::BadLowOrderTerms, "reversion needs c_0 = 0 and c_1 != 0");
    // pw[k][n] = [t^n] B^k for the partial inverse B; [t^n] B^k with k >= 2
    // only involves b_1..b_{n-1}, so each b_n follows from the earlier ones.
    std::vector<ExactScalar> b(m + 1);
    std::vector<std::vector<ExactScalar>> pw(m + 1, std::vector<ExactScalar>(m + 1));
    ExactScalar inv1 = a[1].inv();
    b[1] = inv1;
    pw[1][1] = b[1];
    for (int n = 2; n <= m; ++n) {
        ExactScalar rhs;
        for (int k = 2; k <= n; ++k) {
            ExactScalar v;
            for (int j = 1; j <= n - k + 1; ++j) {
                if (b[j].is_zero() || pw[k - 1][n - j].is_zero()) continue;
                v += b[j] * pw[k - 1][n - j];
            }
            pw[k][n] = v;
            if (!a[k].is_zero() && !v.is_zero()) rhs += a[k] * v;
        }
        b[n] = -(rhs * inv1);
        pw[1][n] = b[n];
    }
    return PowerSeries(std::move(b), a.var());
}

} // namespace nestinv
