#pragma once

#include <map>
#include <vector>

#include "xlambda/ff.hpp"

namespace xlam {

/// Reduced fraction num/den with den > 0. Lies in Q ∩ Z_p exactly when p does
/// not divide den; the gamma/hypergeometric layers require that.
struct ZpRational {
    i64 num = 0;
    i64 den = 1;

    ZpRational() = default;
    ZpRational(i64 n, i64 d);

    ZpRational operator+(const ZpRational& o) const;
    ZpRational operator-(const ZpRational& o) const;
    ZpRational operator*(const ZpRational& o) const;
    ZpRational operator-() const { return ZpRational(-num, den); }
    bool operator==(const ZpRational& o) const { return num == o.num && den == o.den; }
    bool operator<(const ZpRational& o) const;

    bool is_integer() const { return den == 1; }
    bool in_zp(u64 p) const { return den % static_cast<i64>(p) != 0; }
};

inline ZpRational zq(i64 n, i64 d = 1) { return ZpRational(n, d); }

// x = floor_part(x) + frac_part(x), 0 <= frac_part < 1, exact.
i64 floor_part(const ZpRational& x);
ZpRational frac_part(const ZpRational& x);

// Representative of x in (0, p^N]: the unique m there with m == x (mod p^N).
// x == 0 (mod p^N) maps to m = p^N.
u64 zp_representative(const ZpRational& x, u64 p, int N);

/// Truncated p-adic number: p^v * u with the unit u known modulo p^prec.
/// Zero is the +infinity-valuation marker. Addition of nearly-cancelling
/// terms reduces prec rather than erroring; consumers that need k digits
/// call require_precision(k).
class PadicNumber {
public:
    static PadicNumber zero(u64 p, int prec) { return PadicNumber(p, prec); }
    // value = integer n (exact input, stored at precision prec)
    static PadicNumber from_integer(u64 p, int prec, i64 n);
    // value = num/den with p not dividing den
    static PadicNumber from_rational(u64 p, int prec, const ZpRational& x);
    // value = p^v * u, p not dividing u
    static PadicNumber from_unit(u64 p, int prec, i64 v, u64 u);

    u64 p() const { return p_; }
    int precision() const { return prec_; }
    bool is_zero() const { return zero_; }
    i64 valuation() const;  // throws on zero marker
    u64 unit() const;       // throws on zero marker

    PadicNumber operator+(const PadicNumber& o) const;
    PadicNumber operator-(const PadicNumber& o) const;
    PadicNumber operator*(const PadicNumber& o) const;
    PadicNumber operator/(const PadicNumber& o) const;  // throws on zero divisor

    // Fails (throws std::underflow_error) when cancellation ate below k digits.
    const PadicNumber& require_precision(int k) const;

    // Balanced-residue lift of an integer value V = p^v * u with |V| <= bound.
    // Requires v >= 0 (or zero marker) and p^prec > 2*bound at the value's scale.
    i64 decode_balanced(i64 bound) const;

    // True when the two numbers agree modulo p^k (absolute precision k).
    bool congruent(const PadicNumber& o, int k) const;

    std::string str() const;

private:
    PadicNumber(u64 p, int prec) : p_(p), prec_(prec), zero_(true), v_(0), u_(0) {}
    u64 p_;
    int prec_;
    bool zero_;
    i64 v_;
    u64 u_;
};

// omega(t) mod p^N: the Teichmuller lift, computed by iterating x <- x^p to
// its fixed point; omega(t)^(p-1) == 1 and omega(t) == t (mod p). t must be
// nonzero mod p.
u64 teichmuller(u64 p, int N, u64 t);

/// Values of Morita's Gamma_p at the requested arguments, all harvested from
/// one multiplicative sweep j = 1..max-representative modulo p^N.
class GammaTable {
public:
    GammaTable(u64 p, int N) : p_(p), N_(N), pn_(1) {
        for (int i = 0; i < N; ++i) pn_ *= p;
    }

    u64 p() const { return p_; }
    int N() const { return N_; }
    u64 modulus() const { return pn_; }

    // Gamma_p(x) mod p^N; the argument must have been requested in the batch.
    u64 at(const ZpRational& x) const;
    u64 at_rep(u64 rep) const;
    bool has_rep(u64 rep) const { return values_.count(rep) != 0; }

    u64 inv_at(const ZpRational& x) const { return invmod(at(x), pn_); }

    std::map<u64, u64>& mutable_values() { return values_; }

private:
    u64 p_;
    int N_;
    u64 pn_;
    std::map<u64, u64> values_;
};

// One sweep maintaining the running restricted product
//   Gamma_p(m) = (-1)^m prod_{0<j<m, p !| j} j  (mod p^N),
// harvesting at the sorted representatives of args. Cost O(p^N + |args| log |args|).
GammaTable gamma_p_batch(u64 p, int N, const std::vector<ZpRational>& args);

// Naive per-argument evaluation, the oracle for the batch sweep.
u64 gamma_p_naive(u64 p, int N, const ZpRational& x);

// Product-formula checks, all modulo p^N. The omega factors go through teichmuller.
//   reflection (prod):      Gamma_p(x) Gamma_p(1-x) = (-1)^{a0(x)}
//   multiplication (prod-1): prod_h Gamma_p((x+h)/m) = omega(m^{(1-x)(1-p)}) Gamma_p(x) prod_h Gamma_p(h/m)
//   prod-2:                 omega(t^{-tj}) Gamma_p(<-tj/(p-1)>) prod_h Gamma_p(h/t) = prod_h Gamma_p(<h/t - j/(p-1)>)
bool gamma_reflection_check(u64 p, int N, const ZpRational& x);
bool gamma_multiplication_check(u64 p, int N, u64 m, const ZpRational& x);
bool gamma_prod2_check(u64 p, int N, u64 t, u64 j);

}  // namespace xlam
