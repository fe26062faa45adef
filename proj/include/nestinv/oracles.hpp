#pragma once

// Classical, independent routes to the reversion coefficients b_n of
// h(t) = a_1 t + a_2 t^2 + ..., used to cross-check the nested-derivative
// coefficients.

#include "nestinv/inverse.hpp"
#include "nestinv/series.hpp"

#include <string>
#include <vector>

namespace nestinv {

/// coeffs[n] = b_n for 1 <= n <= N; coeffs[0] is 0 (the expansion is taken
/// relative to b and z0).
struct CoefficientTable {
    std::string source;
    std::vector<ExactScalar> coeffs;
};

inline constexpr const char* kSourceNested = "nested";
inline constexpr const char* kSourceLagrange = "lagrange";
inline constexpr const char* kSourceRevert = "revert";
inline constexpr const char* kSourceWhittaker = "whittaker";
inline constexpr const char* kSourceMorseFeshbach = "morse_feshbach";

/// b_n = (1/n) [t^{n-1}] (t / h(t))^n. Needs h.order() >= N.
CoefficientTable lagrange_invert(const PowerSeries& h, int N);

/// Triangular reversion (equating powers).
CoefficientTable revert_table(const PowerSeries& h, int N);

/// b_n = f(0) D^{n-1}[f](0) / n! with f = 1/h', nested derivatives taken on
/// the Taylor series of f.
CoefficientTable nested_table(const PowerSeries& h, int N);

/// Determinant by fraction-free (Bareiss) elimination with row pivoting.
ExactScalar bareiss_determinant(std::vector<std::vector<ExactScalar>> m);

/// Whittaker's determinant form. a[k] = a_k (a[0] is ignored); needs
/// a_1 != 0 and a.size() > n. Error(IndexOutOfRange) otherwise.
///   b_n = (-1)^{n-1} / (n! a_1^{2n-1}) det M,  M is (n-1)x(n-1),
///   M_ij = ((i-j+1) n + (j-1)) a_{i-j+2} for j <= i+1, else 0.
ExactScalar whittaker_coefficient(const std::vector<ExactScalar>& a, int n);

/// Multiplicity vectors m (m[j] = number of parts equal to j, m[0] unused)
/// of every partition of n.
std::vector<std::vector<int>> partitions(int n);

/// Explicit multi-index sum over partitions of n-1:
///   b_n = 1/(n a_1^n) sum (-1)^K n(n+1)...(n+K-1) / prod m_j! prod (a_{j+1}/a_1)^{m_j}
/// with K = sum m_j.
ExactScalar morse_feshbach_coefficient(const std::vector<ExactScalar>& a, int n);

struct OracleReport {
    int order = 0;
    std::vector<CoefficientTable> tables; // in the kSource* order above
    /// agree[s][n]: tables[s].coeffs[n] equals every other source's b_n.
    std::vector<std::vector<bool>> agree;
    bool pass = false;

    std::string to_text() const;
    std::string to_json() const;
};

/// All five sources for the series h (zero constant term, h.order() >= N).
/// When `nested` is given it replaces the series-based nested source (e.g. the
/// coefficients of invert() for a catalog problem).
OracleReport oracle_agreement(const PowerSeries& h, int N, const InverseSeries* nested = nullptr);

/// Convenience overload: h from h_series(problem), nested from invert().
OracleReport oracle_agreement(const InverseProblem& p, int N);

} // namespace nestinv
