#pragma once

#include <optional>

#include "xlambda/charsums.hpp"
#include "xlambda/ff.hpp"

namespace xlam {

/// Per-(p, lambda) traces. a_leg/a_cl absent where the curve is singular.
struct TraceRecord {
    enum class Provenance { direct, fast, both };
    u64 p = 0;
    u64 lambda = 0;
    std::optional<i64> a_leg;
    std::optional<i64> a_cl;
    i64 A_p = 0;
    Provenance provenance = Provenance::fast;
};

// a_p of y^2 = x(x-1)(x-lambda); lambda not in {0, 1}. O(p).
i64 legendre_trace(const PrimeFieldContext& ctx, u64 lambda);

// a_p of y^2 = (x-1)(x^2+lambda); lambda not in {0, -1}. O(p).
i64 clausen_trace(const PrimeFieldContext& ctx, u64 lambda);

// A_p(lambda) = -sum_{x,y} phi(xy(1+x+y)(xy+(1-lambda)/lambda^2)); lambda != 0. O(p^2).
i64 surface_A_direct(const PrimeFieldContext& ctx, u64 lambda);

// O(p) route through the Clausen-trace relation: A_p(lambda) = p - a_Cl((1-lambda)/lambda)^2.
// The degenerate arguments lambda in {1, 2} are delegated to surface_A_direct.
i64 surface_A_fast(const PrimeFieldContext& ctx, u64 lambda);

// a_Cl(mu) for every mu in [0, p-1] (entries at the singular mu in {0, -1}
// are the raw character sums, which the fast path never reads).
std::vector<i64> clausen_trace_table(const PrimeFieldContext& ctx, int workers = 1);

// A_p(lambda) for lambda = 1..p-1 via the fast path; index [lambda-1].
std::vector<i64> surface_A_table(const PrimeFieldContext& ctx, int workers = 1);

TraceRecord trace_record(const PrimeFieldContext& ctx, u64 lambda, bool with_direct = false);

// Greene's 2F1(phi, phi; eps | lambda) and 3F2(phi,phi,phi; eps,eps | lambda):
//   (p/(p-1)) * sum_chi (phi chi | chi)^k chi(lambda),   k = 2, 3.
ComplexApprox greene_2f1(const CharSumTables& tables, u64 lambda);
ComplexApprox greene_3f2(const CharSumTables& tables, u64 lambda);
ComplexApprox greene_2f1(const PrimeFieldContext& ctx, u64 lambda);
ComplexApprox greene_3f2(const PrimeFieldContext& ctx, u64 lambda);

// Round p^k * value to a nearby integer; the guard band around the nearest
// integer is a hard failure, converting tolerance checks into exact identities.
i64 round_scaled_to_integer(const ComplexApprox& v, double scale, double guard = 0.1);

/// 3F2(lambda) dissected through C_p (the main branch) plus the delta(1+lambda)
/// term and the quartic-character bracket at lambda = 1 when p = 1 (mod 4).
struct Decomp3F2Result {
    bool pass = false;
    double residual = 0.0;
    double lhs_re = 0.0;
    double rhs_re = 0.0;
};

Decomp3F2Result lemma_3f2_decomposition_check(const CharSumTables& tables, const CpEvaluator& cp, u64 lambda);

}  // namespace xlam
