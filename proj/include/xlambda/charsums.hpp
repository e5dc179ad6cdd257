#pragma once

#include <cmath>
#include <complex>
#include <limits>
#include <memory>

#include "xlambda/ff.hpp"
#include "xlambda/padic.hpp"

namespace xlam {

/// Complex value with a running absolute-error bound. Comparisons against
/// exact quantities must stay err-aware.
struct ComplexApprox {
    double re = 0.0;
    double im = 0.0;
    double err = 0.0;

    static constexpr double eps = std::numeric_limits<double>::epsilon();

    double abs() const { return std::hypot(re, im); }
    std::complex<double> value() const { return {re, im}; }

    ComplexApprox operator+(const ComplexApprox& o) const {
        ComplexApprox r{re + o.re, im + o.im, 0.0};
        r.err = err + o.err + r.abs() * eps;
        return r;
    }
    ComplexApprox operator-(const ComplexApprox& o) const {
        ComplexApprox r{re - o.re, im - o.im, 0.0};
        r.err = err + o.err + r.abs() * eps;
        return r;
    }
    ComplexApprox operator*(const ComplexApprox& o) const {
        std::complex<double> v = value() * o.value();
        ComplexApprox r{v.real(), v.imag(), 0.0};
        r.err = abs() * o.err + o.abs() * err + err * o.err + 4.0 * abs() * o.abs() * eps;
        return r;
    }
    ComplexApprox operator/(const ComplexApprox& o) const {
        std::complex<double> v = value() / o.value();
        ComplexApprox r{v.real(), v.imag(), 0.0};
        double oa = o.abs();
        r.err = (err + std::hypot(v.real(), v.imag()) * o.err) / std::max(oa - o.err, 1e-300) +
                4.0 * std::hypot(v.real(), v.imag()) * eps;
        return r;
    }
    ComplexApprox scaled(double s) const { return {re * s, im * s, err * std::fabs(s)}; }

    // |value - exact| <= max(rel_tol*|exact|, slack*err)
    bool matches(double exact_re, double exact_im = 0.0, double rel_tol = 1e-6, double slack = 10.0) const {
        double d = std::hypot(re - exact_re, im - exact_im);
        return d <= std::max(rel_tol * std::hypot(exact_re, exact_im), slack * err + 1e-12);
    }
};

/// Precomputed roots of unity and the full Gauss-sum table for one context;
/// built once (O(p^2)) and shared read-only by the numeric character sums.
class CharSumTables {
public:
    explicit CharSumTables(const PrimeFieldContext& ctx);

    const PrimeFieldContext& ctx() const { return *ctx_; }
    // g(omega^j)
    const ComplexApprox& gauss(u64 j) const { return gauss_[j % (ctx_->p() - 1)]; }
    // zeta_p^x and zeta_{p-1}^e
    std::complex<double> zp(u64 x) const { return zp_[x % ctx_->p()]; }
    std::complex<double> zpm1(u64 e) const { return zpm1_[e % (ctx_->p() - 1)]; }
    // omega^j(x), 0 for x = 0
    ComplexApprox chi(u64 j, u64 x) const;
    // Greene binomial (phi*chi choose chi) with chi = omega^j, from the Gauss table.
    const ComplexApprox& binom_phichi_chi(u64 j) const { return binom_[j % (ctx_->p() - 1)]; }

private:
    const PrimeFieldContext* ctx_;
    std::vector<std::complex<double>> zp_, zpm1_;
    std::vector<ComplexApprox> gauss_;
    std::vector<ComplexApprox> binom_;
};

// g(omega^j) = sum_x omega^j(x) zeta_p^x, O(p); err <= c*p*machine-eps.
ComplexApprox gauss_sum_numeric(const PrimeFieldContext& ctx, CharacterIndex j);

// J(omega^j1, omega^j2) = sum_y chi1(y) chi2(1-y), direct O(p).
ComplexApprox jacobi_sum_numeric(const PrimeFieldContext& ctx, CharacterIndex j1, CharacterIndex j2);

// (chi_top choose chi_bot) := chi_bot(-1)/p * J(chi_top, conj(chi_bot))
ComplexApprox binomial_numeric(const PrimeFieldContext& ctx, CharacterIndex top, CharacterIndex bottom);

/// Gauss sum in Gross-Koblitz form: g(omega-bar^j) = pi^e * unit with
/// pi^(p-1) = -p; a product of such values is rational iff the total e is a
/// multiple of p-1, at which point e trades for a power of (-p).
struct GaussSumPadic {
    u64 e = 0;          // pi-exponent, equal to j
    PadicNumber unit;   // -Gamma_p(<j/(p-1)>) mod p^N
};

GaussSumPadic gauss_sum_padic(const PrimeFieldContext& ctx, CharacterIndex j, int N);

/// C_p(lambda) = sum_j g(phi wbar^{2j}) g(w^j)^3 g(phi wbar^j) wbar^j(lambda),
/// evaluated exactly through Gross-Koblitz. The per-(p,N) term table is built
/// once and serves every lambda in O(p).
class CpEvaluator {
public:
    CpEvaluator(const PrimeFieldContext& ctx, int N = 3);

    // exact integer value; each term's pi-exponent divisibility is asserted
    // at construction
    i64 eval(u64 lamarg) const;

    u64 p() const { return p_; }
    int N() const { return N_; }
    i64 decode_bound() const { return bound_; }

private:
    const PrimeFieldContext* ctx_;
    u64 p_;
    int N_;
    u64 acc_mod_;             // p^(N+1): every term has (-p)-exponent >= 1
    std::vector<u64> unit_;   // term unit mod p^N
    std::vector<int> expo_;   // (-p)-exponent E_j
    i64 bound_;               // (p-1) * p^(5/2) decode range
};

enum class CpMode { numeric, padic, via_surface };

ComplexApprox c_p_numeric(const PrimeFieldContext& ctx, u64 lamarg);
ComplexApprox c_p_numeric(const CharSumTables& tables, u64 lamarg);
i64 c_p_padic(const PrimeFieldContext& ctx, u64 lamarg, int N = 3);

// -phi(-1) p (p-1) A_p(lambda) with lambda solved from lamarg = (1-lambda)/lambda^2.
// Both roots are checked for agreement. Errors when lamarg is not of that form
// over F_p, and at lamarg = 0 (the identity's domain excludes lambda = 1).
i64 c_p_via_surface(const PrimeFieldContext& ctx, u64 lamarg);

// Floor identities behind the nGn exponent rearrangements; pure integer
// assertions via frac_part/floor_part. which in {1,2,3,4}; j in [0, p-2]
// ({1,...,p-2} for which = 3).
bool exponent_lemma_holds(int which, u64 p, u64 j);

}  // namespace xlam
