#pragma once

#include <vector>

#include "xlambda/ff.hpp"
#include "xlambda/padic.hpp"

namespace xlam {

/// Parameter lists for McCarthy's nGn; every entry must lie in Q ∩ Z_p.
struct GnParameters {
    std::vector<ZpRational> a;
    std::vector<ZpRational> b;
};

// 3G3[1/3,1/3,1/3; 1/12,7/12,5/6] and the 9G9 lists used by the surface.
GnParameters g3_parameters();
GnParameters g9_parameters();

/// nGn evaluator for one (context, parameters, N). Construction runs the
/// single gamma sweep for the whole argument family (a_k -/+ s/(p-1) for all
/// s) and freezes per-s term units; eval(t) is then O(p) for every t.
class GnEvaluator {
public:
    GnEvaluator(const PrimeFieldContext& ctx, GnParameters params, int N);

    // full hypergeometric sum; t = 0 returns the zero marker (chi(0) = 0 extended
    // to the a = 0 term).
    PadicNumber eval(u64 t) const;

    const GnParameters& parameters() const { return params_; }
    int N() const { return N_; }
    int min_exponent() const { return emin_; }
    // gamma sweeps run for this evaluator (the memoization invariant: one)
    int gamma_sweeps() const { return 1; }

private:
    const PrimeFieldContext* ctx_;
    GnParameters params_;
    u64 p_;
    int N_;
    int emin_;        // min over s of the (-p)-exponent; >= -n
    u64 acc_mod_;     // p^(N + emin_clamped_shift) accumulation modulus
    int acc_digits_;  // digits of acc_mod_
    u64 pn_;          // p^N
    std::vector<u64> unit_;  // |term| unit mod p^N, sign folded in
    std::vector<int> expo_;  // shifted exponent e_s - emin >= 0
};

PadicNumber gn_eval(const PrimeFieldContext& ctx, const GnParameters& params, u64 t, int N = 3);

/// The two specializations tied to the surface family. g3 requires p = 1
/// (mod 3) and carries the
/// psi_3(lambda/(1-lambda)^2) twist together with the constant Gamma_p(1/3)^3
/// (the p-adic Jacobi-sum unit) that makes the C_p identity exact.
class G3Evaluator {
public:
    G3Evaluator(const PrimeFieldContext& ctx, int N = 3);
    PadicNumber eval(u64 lambda) const;  // lambda != 1
    // p * 3G3(lambda) decoded as an exact integer in [-3p, 3p]
    i64 decode_times_p(u64 lambda) const;
    int N() const { return core_.N(); }

private:
    const PrimeFieldContext* ctx_;
    GnEvaluator core_;
    u64 norm_unit_;  // -Gamma_p(1/3)^3 mod p^N
};

class G9Evaluator {
public:
    G9Evaluator(const PrimeFieldContext& ctx, int N = 3);
    PadicNumber eval(u64 lambda) const;  // lambda != 1
    // 9G9(lambda) decoded as an exact integer in [-3p, 3p]
    i64 decode(u64 lambda) const;
    int N() const { return core_.N(); }

private:
    const PrimeFieldContext* ctx_;
    GnEvaluator core_;
};

PadicNumber g3_eval(const PrimeFieldContext& ctx, u64 lambda, int N = 3);
PadicNumber g9_eval(const PrimeFieldContext& ctx, u64 lambda, int N = 3);

// (-1)^((p-1)/6) via Teichmuller parity; p = 1 (mod 6).
int psi6_minus_one(u64 p);

}  // namespace xlam
