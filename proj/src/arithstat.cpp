#include "xlambda/arithstat.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <sstream>

#include "xlambda/curves.hpp"
#include "xlambda/gn.hpp"
#include "xlambda/parallel.hpp"

#include <nlohmann/json.hpp>

namespace xlam {

i64 catalan_number(int i) {
    if (i < 0) throw std::invalid_argument("catalan_number: negative index");
    i64 c = 1;
    for (int k = 0; k < i; ++k) c = c * 2 * (2 * k + 1) / (k + 2);
    return c;
}

i64 catalan_moment_coef(int m) {
    if (m < 0) throw std::invalid_argument("catalan_moment_coef: negative m");
    i64 s = 0;
    i64 binom = 1;
    for (int i = 0; i <= m; ++i) {
        s += (i % 2 == 0 ? 1 : -1) * binom * catalan_number(i);
        binom = binom * (m - i) / (i + 1);
    }
    return s;
}

namespace {

// power sums sum_v v^m for m = 1..m_max over a value table, 128-bit exact
std::vector<i128> power_sums(const std::vector<i64>& vals, int m_max, int workers) {
    std::vector<i128> total(m_max + 1, 0);
    std::mutex mu;
    parallel_for(0, vals.size(), workers, [&](u64 lo, u64 hi) {
        std::vector<i128> local(m_max + 1, 0);
        for (u64 i = lo; i < hi; ++i) {
            i128 x = 1;
            for (int m = 1; m <= m_max; ++m) {
                x *= vals[i];
                local[m] += x;
            }
        }
        std::lock_guard<std::mutex> g(mu);
        for (int m = 1; m <= m_max; ++m) total[m] += local[m];
    });
    return total;
}

double i128_over_pow(i128 num, u64 p, int e) {
    // num / p^e in double; exact enough for reporting gaps
    long double x = static_cast<long double>(num);
    for (int i = 0; i < e; ++i) x /= static_cast<long double>(p);
    return static_cast<double>(x);
}

}  // namespace

MomentReport empirical_moments(const PrimeFieldContext& ctx, int m_max, int workers) {
    if (m_max < 1 || m_max > 8) {
        throw std::invalid_argument("empirical_moments: m_max must lie in [1, 8]");
    }
    MomentReport r;
    r.p = ctx.p();
    r.m_max = m_max;
    r.kind = "A_p";
    std::vector<i64> A = surface_A_table(ctx, workers);
    std::vector<i128> sums = power_sums(A, m_max, workers);
    for (int m = 1; m <= m_max; ++m) {
        r.raw.push_back(to_string_i128(sums[m]));
        r.normalized.push_back(i128_over_pow(sums[m], ctx.p(), m + 1));
        r.targets.push_back(catalan_moment_coef(m));
        r.gaps.push_back(r.normalized.back() - double(r.targets.back()));
    }
    return r;
}

MomentReport gn_moment_check(const PrimeFieldContext& ctx, GnFamily which, int m_max, int N, int workers) {
    if (m_max < 1 || m_max > 8) throw std::invalid_argument("gn_moment_check: m_max must lie in [1, 8]");
    const u64 p = ctx.p();
    if (which == GnFamily::g3 && p % 3 != 1) {
        throw std::domain_error("gn_moment_check: 3G3 family needs p = 1 (mod 3)");
    }
    if (which == GnFamily::g9 && p % 3 != 2) {
        throw std::domain_error("gn_moment_check: 9G9 family needs p = 2 (mod 3)");
    }

    // decoded values over lambda != 1: p * 3G3(lambda), resp. 9G9(lambda)
    std::vector<i64> d(p, 0);
    if (which == GnFamily::g3) {
        G3Evaluator ev(ctx, N);
        parallel_for(0, p, workers, [&](u64 lo, u64 hi) {
            for (u64 lam = lo; lam < hi; ++lam) {
                if (lam != 1) d[lam] = ev.decode_times_p(lam);
            }
        });
    } else {
        G9Evaluator ev(ctx, N);
        parallel_for(0, p, workers, [&](u64 lo, u64 hi) {
            for (u64 lam = lo; lam < hi; ++lam) {
                if (lam != 1) d[lam] = ev.decode(lam);
            }
        });
    }
    std::vector<i64> vals(d.begin(), d.end());
    vals.erase(vals.begin() + 1);  // drop lambda = 1
    std::vector<i128> sums = power_sums(vals, m_max, workers);

    // exact cross-validation against the A_p link (the lambda = 0 boundary
    // term is the lone difference between the two index sets)
    std::vector<i64> A = surface_A_table(ctx, workers);
    std::vector<i128> asums = power_sums(A, m_max, workers);
    for (int m = 1; m <= m_max; ++m) {
        i128 expect = (m % 2 == 0 ? 1 : -1) * (asums[m] - (m % 2 == 0 ? 1 : -1));
        if (sums[m] != expect) {
            throw std::logic_error("gn_moment_check: decoded sums disagree with the A_p link at m=" +
                                   std::to_string(m));
        }
    }

    MomentReport r;
    r.p = p;
    r.m_max = m_max;
    r.kind = which == GnFamily::g3 ? "3G3" : "9G9";
    for (int m = 1; m <= m_max; ++m) {
        i64 delta = (m % 2 == 0) ? 1 : -1;
        i64 target = delta * catalan_moment_coef(m);
        // the decoded tables carry p * 3G3 resp. 9G9, so both families'
        // raw sums scale as delta * coef * p^(m+1)
        r.raw.push_back(to_string_i128(sums[m]));
        r.normalized.push_back(i128_over_pow(sums[m], p, m + 1));
        r.targets.push_back(target);
        r.gaps.push_back(r.normalized.back() - double(target));
    }
    return r;
}

double density(DensityModel model, double t) {
    if (model == DensityModel::a) {
        if (t <= -1.0 || t >= 3.0) return 0.0;
        return std::sqrt((3.0 - t) / (1.0 + t)) / (2.0 * M_PI);
    }
    if (t <= -3.0 || t >= 1.0) return 0.0;
    return std::sqrt((3.0 + t) / (1.0 - t)) / (2.0 * M_PI);
}

namespace {

// integrand after t = 1 + 2cos(theta): the density pulls back to
// (1 - cos theta)/pi on [0, pi], removing the endpoint singularity
double cdf_a_integrand(double theta) { return (1.0 - std::cos(theta)) / M_PI; }

double adaptive_simpson(double (*f)(double), double a, double b, double fa, double fm, double fb,
                        double whole, double tol, int depth) {
    double m = 0.5 * (a + b);
    double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
    double flm = f(lm), frm = f(rm);
    double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
    double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
    if (depth <= 0 || std::fabs(left + right - whole) < 15.0 * tol) {
        return left + right + (left + right - whole) / 15.0;
    }
    return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
           adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double integrate(double (*f)(double), double a, double b, double tol) {
    if (b <= a) return 0.0;
    double fa = f(a), fb = f(b), m = 0.5 * (a + b), fm = f(m);
    double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
    return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double model_cdf(DensityModel model, double t) {
    if (model == DensityModel::b) return 1.0 - model_cdf(DensityModel::a, -t);
    if (t <= -1.0) return 0.0;
    if (t >= 3.0) return 1.0;
    double theta = std::acos(std::clamp((t - 1.0) / 2.0, -1.0, 1.0));
    return integrate(&cdf_a_integrand, theta, M_PI, 1e-9);
}

HistogramReport distribution_report(const PrimeFieldContext& ctx, int bins, int workers) {
    if (bins < 10) throw std::invalid_argument("distribution_report: need at least 10 bins");
    const u64 p = ctx.p();
    std::vector<i64> A = surface_A_table(ctx, workers);
    std::vector<double> vals(A.size());
    for (std::size_t i = 0; i < A.size(); ++i) vals[i] = double(A[i]) / double(p);

    HistogramReport r;
    r.p = p;
    const double lo = -3.0, hi = 3.0;
    const double width = (hi - lo) / bins;
    r.bins.assign(bins, {});
    for (int b = 0; b < bins; ++b) {
        r.bins[b].left = lo + b * width;
        r.bins[b].right = lo + (b + 1) * width;
    }
    for (double v : vals) {
        int b = std::clamp(int((v - lo) / width), 0, bins - 1);
        r.bins[b].count++;
    }
    const double n = double(vals.size());
    for (auto& b : r.bins) {
        b.empirical_density = double(b.count) / (n * width);
        double mid = 0.5 * (b.left + b.right);
        b.model_a = density(DensityModel::a, mid);
        b.model_b = density(DensityModel::b, mid);
    }

    std::sort(vals.begin(), vals.end());
    double ka = 0.0, kb = 0.0;
    for (std::size_t i = 0; i < vals.size(); ++i) {
        double ca = model_cdf(DensityModel::a, vals[i]);
        double cb = model_cdf(DensityModel::b, vals[i]);
        double ehi = double(i + 1) / n, elo = double(i) / n;
        ka = std::max({ka, std::fabs(ehi - ca), std::fabs(elo - ca)});
        kb = std::max({kb, std::fabs(ehi - cb), std::fabs(elo - cb)});
    }
    r.ks_a = ka;
    r.ks_b = kb;
    r.winner = ka <= kb ? DensityModel::a : DensityModel::b;
    return r;
}

std::vector<double> clausen_even_moments(const PrimeFieldContext& ctx, int j_max, int workers) {
    const u64 p = ctx.p();
    std::vector<i64> acl = clausen_trace_table(ctx, workers);
    std::vector<i64> vals;
    vals.reserve(p - 1);
    for (u64 lam = 1; lam < p; ++lam) {
        u64 l2 = ctx.mul(lam, lam);
        if (l2 == p - 1) continue;  // lambda^2 = -1 excluded
        vals.push_back(acl[l2]);
    }
    std::vector<i128> sums = power_sums(vals, 2 * j_max, workers);
    std::vector<double> out;
    for (int j = 1; j <= j_max; ++j) out.push_back(i128_over_pow(sums[2 * j], p, j + 1));
    return out;
}

std::string moment_report_json(const MomentReport& r) {
    nlohmann::json j;
    j["p"] = r.p;
    j["m_max"] = r.m_max;
    j["kind"] = r.kind;
    j["raw"] = r.raw;
    j["normalized"] = r.normalized;
    j["targets"] = r.targets;
    j["gaps"] = r.gaps;
    return j.dump(2);
}

std::string histogram_report_json(const HistogramReport& r) {
    nlohmann::json j;
    j["p"] = r.p;
    j["ks_a"] = r.ks_a;
    j["ks_b"] = r.ks_b;
    j["winner"] = r.winner == DensityModel::a ? "a" : "b";
    auto& arr = j["bins"] = nlohmann::json::array();
    for (const auto& b : r.bins) {
        arr.push_back({{"left", b.left},
                       {"right", b.right},
                       {"count", b.count},
                       {"empirical_density", b.empirical_density},
                       {"model_a", b.model_a},
                       {"model_b", b.model_b}});
    }
    return j.dump(2);
}

std::string histogram_report_csv(const HistogramReport& r) {
    std::ostringstream os;
    os << "bin_left,bin_right,count,empirical_density,model_a,model_b\n";
    os.setf(std::ios::fmtflags(0), std::ios::floatfield);
    os.precision(12);
    for (const auto& b : r.bins) {
        os << b.left << ',' << b.right << ',' << b.count << ',' << b.empirical_density << ',' << b.model_a
           << ',' << b.model_b << '\n';
    }
    return os.str();
}

}  // namespace xlam
