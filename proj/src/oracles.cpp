#include "nestinv/oracles.hpp"

#include "nestinv/error.hpp"

#include <json.hpp>

#include <sstream>

namespace nestinv {

namespace {

void require_h(const PowerSeries& h, int N) {
    if (N < 1) throw Error(ErrorCode::InvalidArgument, "oracle order must be at least 1");
    if (h.order() < N)
        throw Error(ErrorCode::InsufficientOrder, "series for h is known only through t^" + std::to_string(h.order()));
    if (!h[0].is_zero() || h[1].is_zero())
        throw Error(ErrorCode::BadLowOrderTerms, "h needs a zero constant term and a nonzero linear term");
}

std::vector<ExactScalar> coefficients_of(const PowerSeries& h, int N) {
    std::vector<ExactScalar> a(h.coeffs().begin(), h.coeffs().begin() + N + 1);
    return a;
}

} // namespace

CoefficientTable lagrange_invert(const PowerSeries& h, int N) {
    require_h(h, N);
    // t / h(t) = 1 / (a_1 + a_2 t + ...), known through t^{N-1}.
    PowerSeries q = h.truncated(N).shifted_down().reciprocal();
    CoefficientTable t{kSourceLagrange, std::vector<ExactScalar>(N + 1)};
    PowerSeries qn = PowerSeries::constant(ExactScalar(1), q.order(), q.var());
    for (int n = 1; n <= N; ++n) {
        qn = qn * q;
        t.coeffs[n] = qn[n - 1] / ExactScalar(n);
    }
    return t;
}

CoefficientTable revert_table(const PowerSeries& h, int N) {
    require_h(h, N);
    PowerSeries r = revert(h.truncated(N));
    return {kSourceRevert, r.coeffs()};
}

CoefficientTable nested_table(const PowerSeries& h, int N) {
    require_h(h, N);
    PowerSeries F = h.truncated(N).derivative().reciprocal();
    std::vector<ExactScalar> d = nested_values_series(F, N - 1);
    CoefficientTable t{kSourceNested, std::vector<ExactScalar>(N + 1)};
    for (int n = 1; n <= N; ++n)
        t.coeffs[n] = F[0] * d[n - 1] / ExactScalar(factorial(static_cast<unsigned>(n)));
    return t;
}

ExactScalar bareiss_determinant(std::vector<std::vector<ExactScalar>> m) {
    const std::size_t n = m.size();
    for (const auto& row : m)
        if (row.size() != n) throw Error(ErrorCode::InvalidArgument, "determinant of a non-square matrix");
    if (n == 0) return ExactScalar(1);
    ExactScalar sign(1);
    ExactScalar prev(1);
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k].is_zero()) {
            std::size_t p = k + 1;
            while (p < n && m[p][k].is_zero()) ++p;
            if (p == n) return ExactScalar(0);
            std::swap(m[k], m[p]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i) {
            for (std::size_t j = k + 1; j < n; ++j)
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
            m[i][k] = ExactScalar(0);
        }
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

ExactScalar whittaker_coefficient(const std::vector<ExactScalar>& a, int n) {
    if (n < 1 || static_cast<int>(a.size()) <= n)
        throw Error(ErrorCode::IndexOutOfRange, "Whittaker coefficient b_" + std::to_string(n) + " needs a_1..a_" +
                                                    std::to_string(n));
    if (a[1].is_zero()) throw Error(ErrorCode::BadLowOrderTerms, "Whittaker form needs a_1 != 0");
    if (n == 1) return a[1].inv();
    const int m = n - 1;
    std::vector<std::vector<ExactScalar>> M(m, std::vector<ExactScalar>(m));
    for (int i = 1; i <= m; ++i) {
        for (int j = 1; j <= std::min(i + 1, m); ++j) {
            long w = static_cast<long>(i - j + 1) * n + (j - 1);
            M[i - 1][j - 1] = ExactScalar(w) * a[i - j + 2];
        }
    }
    ExactScalar det = bareiss_determinant(std::move(M));
    ExactScalar scale = ExactScalar(factorial(static_cast<unsigned>(n))) * a[1].pow(2 * n - 1);
    ExactScalar b = det / scale;
    return (n % 2 == 0) ? -b : b;
}

std::vector<std::vector<int>> partitions(int n) {
    if (n < 0) throw Error(ErrorCode::InvalidArgument, "partitions of a negative number");
    std::vector<std::vector<int>> out;
    std::vector<int> m(static_cast<std::size_t>(n) + 1, 0);
    // Parts chosen in non-increasing order; `largest` bounds the next part.
    auto rec = [&](auto&& self, int rest, int largest) -> void {
        if (rest == 0) {
            out.push_back(m);
            return;
        }
        for (int part = std::min(rest, largest); part >= 1; --part) {
            ++m[part];
            self(self, rest - part, part);
            --m[part];
        }
    };
    rec(rec, n, n);
    return out;
}

ExactScalar morse_feshbach_coefficient(const std::vector<ExactScalar>& a, int n) {
    if (n < 1 || static_cast<int>(a.size()) <= n)
        throw Error(ErrorCode::IndexOutOfRange, "coefficient b_" + std::to_string(n) + " needs a_1..a_" +
                                                    std::to_string(n));
    if (a[1].is_zero()) throw Error(ErrorCode::BadLowOrderTerms, "explicit sum needs a_1 != 0");
    std::vector<ExactScalar> ratio(a.size());
    ExactScalar inv1 = a[1].inv();
    for (std::size_t k = 2; k < a.size(); ++k) ratio[k] = a[k] * inv1;

    ExactScalar sum;
    for (const auto& m : partitions(n - 1)) {
        int K = 0;
        BigRational weight(1);
        ExactScalar term(1);
        for (std::size_t j = 1; j < m.size(); ++j) {
            if (m[j] == 0) continue;
            K += m[j];
            weight /= factorial(static_cast<unsigned>(m[j]));
            term *= ratio[j + 1].pow(m[j]);
        }
        for (int i = 0; i < K; ++i) weight *= (n + i);
        if (K % 2) weight = -weight;
        sum += ExactScalar(weight) * term;
    }
    return sum / (ExactScalar(n) * a[1].pow(n));
}

OracleReport oracle_agreement(const PowerSeries& h, int N, const InverseSeries* nested) {
    require_h(h, N);
    OracleReport r;
    r.order = N;
    if (nested) {
        if (nested->order() < N)
            throw Error(ErrorCode::OrderMismatch, "inverse series shorter than the requested oracle order");
        CoefficientTable t{kSourceNested, std::vector<ExactScalar>(N + 1)};
        for (int n = 1; n <= N; ++n) t.coeffs[n] = nested->coeffs[n];
        r.tables.push_back(std::move(t));
    } else {
        r.tables.push_back(nested_table(h, N));
    }
    r.tables.push_back(lagrange_invert(h, N));
    r.tables.push_back(revert_table(h, N));

    std::vector<ExactScalar> a = coefficients_of(h, N);
    CoefficientTable w{kSourceWhittaker, std::vector<ExactScalar>(N + 1)};
    CoefficientTable mf{kSourceMorseFeshbach, std::vector<ExactScalar>(N + 1)};
    for (int n = 1; n <= N; ++n) {
        w.coeffs[n] = whittaker_coefficient(a, n);
        mf.coeffs[n] = morse_feshbach_coefficient(a, n);
    }
    r.tables.push_back(std::move(w));
    r.tables.push_back(std::move(mf));

    r.agree.assign(r.tables.size(), std::vector<bool>(N + 1, true));
    r.pass = true;
    for (int n = 1; n <= N; ++n) {
        for (std::size_t s = 0; s < r.tables.size(); ++s) {
            bool ok = true;
            for (std::size_t o = 0; o < r.tables.size(); ++o)
                if (o != s && !(r.tables[s].coeffs[n] == r.tables[o].coeffs[n])) ok = false;
            r.agree[s][n] = ok;
            r.pass = r.pass && ok;
        }
    }
    return r;
}

OracleReport oracle_agreement(const InverseProblem& p, int N) {
    InverseProblem q = p;
    q.order = N;
    InverseSeries H = invert(q);
    PowerSeries h = h_series(p.f, p.at, N);
    return oracle_agreement(h, N, &H);
}

std::string OracleReport::to_text() const {
    std::ostringstream os;
    os << "n";
    for (const auto& t : tables) os << "  " << t.source;
    os << "  agree\n";
    for (int n = 1; n <= order; ++n) {
        bool all = true;
        for (const auto& row : agree) all = all && row[n];
        os << n;
        if (all) {
            os << "  " << tables.front().coeffs[n].to_string() << "  (all " << tables.size() << " sources)  yes\n";
            continue;
        }
        for (const auto& t : tables) os << "  " << t.coeffs[n].to_string();
        os << "  NO\n";
    }
    os << (pass ? "all sources agree" : "sources DISAGREE") << " through order " << order << "\n";
    return os.str();
}

std::string OracleReport::to_json() const {
    nlohmann::json j;
    j["order"] = order;
    j["pass"] = pass;
    nlohmann::json srcs = nlohmann::json::array();
    for (std::size_t s = 0; s < tables.size(); ++s) {
        nlohmann::json coeffs = nlohmann::json::array();
        nlohmann::json ag = nlohmann::json::array();
        for (int n = 1; n <= order; ++n) {
            coeffs.push_back(tables[s].coeffs[n].to_string());
            ag.push_back(static_cast<bool>(agree[s][n]));
        }
        srcs.push_back({{"source", tables[s].source}, {"coefficients", coeffs}, {"agree", ag}});
    }
    j["sources"] = srcs;
    return j.dump(2);
}

} // namespace nestinv
