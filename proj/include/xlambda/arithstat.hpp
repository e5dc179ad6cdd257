#pragma once

#include <string>
#include <vector>

#include "xlambda/ff.hpp"

namespace xlam {

// i-th Catalan number (2i)!/(i!(i+1)!), exact.
i64 catalan_number(int i);

// Coefficient of p^(m+1) in the A_p moment asymptotics:
//   sum_{i=0}^m (-1)^i C(m,i) * Catalan(i).
i64 catalan_moment_coef(int m);

/// Exact power sums of A_p(lambda) over lambda in F_p^x, with the normalized
/// gaps against the Catalan-weighted targets. No floating point touches the
/// raw sums.
struct MomentReport {
    u64 p = 0;
    int m_max = 0;
    std::string kind;                  // "A_p", "3G3", "9G9"
    std::vector<std::string> raw;      // exact integer sums, decimal strings
    std::vector<double> normalized;    // raw[m] / p^(scale power for the family)
    std::vector<i64> targets;          // signed expected coefficients
    std::vector<double> gaps;          // normalized - target
};

MomentReport empirical_moments(const PrimeFieldContext& ctx, int m_max, int workers = 1);

enum class GnFamily { g3, g9 };

// Power sums over lambda != 1 of the decoded hypergeometric values, computed
// from the evaluators and cross-validated exactly against the A_p link
//   sum_{lam != 1} d(lam)^m == (-1)^m (sum_{mu != 0} A_p(mu)^m - (-1)^m).
// Normalization: 3G3 sums scale as coef * p, 9G9 sums as coef * p^(m+1),
// with the odd-m sign delta(m).
MomentReport gn_moment_check(const PrimeFieldContext& ctx, GnFamily which, int m_max, int N = 3,
                             int workers = 1);

// Candidate limiting densities for A_p(lambda)/p (and the gn families):
//   model a: sqrt((3-t)/(1+t))/(2pi) on (-1,3)
//   model b: sqrt((3+t)/(1-t))/(2pi) on (-3,1)
enum class DensityModel { a, b };

double density(DensityModel model, double t);
// CDF by adaptive quadrature (absolute error <= 1e-8), 0/1 off-support.
double model_cdf(DensityModel model, double t);

struct HistogramBin {
    double left = 0.0;
    double right = 0.0;
    u64 count = 0;
    double empirical_density = 0.0;
    double model_a = 0.0;
    double model_b = 0.0;
};

struct HistogramReport {
    u64 p = 0;
    std::vector<HistogramBin> bins;
    double ks_a = 0.0;
    double ks_b = 0.0;
    DensityModel winner = DensityModel::a;
};

// Histogram of {A_p(lambda)/p} over F_p^x on [-3,3] with KS distances to both
// model CDFs; declares the better-fitting model.
HistogramReport distribution_report(const PrimeFieldContext& ctx, int bins, int workers = 1);

// Clausen even-moment normalized sums sum a_Cl(lam^2)^(2j) / p^(j+1) for
// j = 1..j_max (targets: Catalan numbers).
std::vector<double> clausen_even_moments(const PrimeFieldContext& ctx, int j_max, int workers = 1);

std::string moment_report_json(const MomentReport& r);
std::string histogram_report_json(const HistogramReport& r);
std::string histogram_report_csv(const HistogramReport& r);

}  // namespace xlam
