#include "xlambda/gn.hpp"

#include <algorithm>

namespace xlam {

GnParameters g3_parameters() {
    return GnParameters{{zq(1, 3), zq(1, 3), zq(1, 3)}, {zq(1, 12), zq(7, 12), zq(5, 6)}};
}

GnParameters g9_parameters() {
    return GnParameters{
        {zq(1, 3), zq(1, 3), zq(1, 3), zq(2, 3), zq(2, 3), zq(2, 3), zq(0), zq(0), zq(0)},
        {zq(1, 12), zq(5, 12), zq(7, 12), zq(11, 12), zq(1, 6), zq(5, 6), zq(1, 4), zq(3, 4), zq(1, 2)}};
}

GnEvaluator::GnEvaluator(const PrimeFieldContext& ctx, GnParameters params, int N)
    : ctx_(&ctx), params_(std::move(params)), p_(ctx.p()), N_(N) {
    if (params_.a.size() != params_.b.size() || params_.a.empty()) {
        throw std::invalid_argument("GnEvaluator: parameter lists must have equal positive length");
    }
    const std::size_t n = params_.a.size();
    const i64 pm1 = i64(p_) - 1;
    for (const auto& x : params_.a) {
        if (!x.in_zp(p_)) throw std::domain_error("GnEvaluator: top parameter not in Z_p");
    }
    for (const auto& x : params_.b) {
        if (!x.in_zp(p_)) throw std::domain_error("GnEvaluator: bottom parameter not in Z_p");
    }
    if (N < 3) throw std::invalid_argument("GnEvaluator: N must be >= 3");

    pn_ = 1;
    for (int i = 0; i < N; ++i) pn_ *= p_;

    // gamma arguments for the whole sweep: 2n families indexed by s, plus the
    // s-independent denominators
    std::vector<ZpRational> fa(n), fbc(n);
    for (std::size_t k = 0; k < n; ++k) {
        fa[k] = frac_part(params_.a[k]);
        fbc[k] = frac_part(-params_.b[k]);
    }
    std::vector<ZpRational> args;
    args.reserve(2 * n * (p_ - 1) + 2 * n);
    std::vector<int> elist(p_ - 1, 0);
    for (i64 s = 0; s < pm1; ++s) {
        ZpRational sp(s, pm1);
        int e = 0;
        for (std::size_t k = 0; k < n; ++k) {
            ZpRational xa = fa[k] - sp;
            ZpRational xb = fbc[k] + sp;
            e += int(-floor_part(xa) - floor_part(xb));
            args.push_back(frac_part(xa));
            args.push_back(frac_part(xb));
        }
        elist[s] = e;
    }
    for (std::size_t k = 0; k < n; ++k) {
        args.push_back(fa[k]);
        args.push_back(fbc[k]);
    }
    GammaTable g = gamma_p_batch(p_, N, args);

    emin_ = *std::min_element(elist.begin(), elist.end());
    int shift = emin_ < 0 ? -emin_ : 0;
    acc_digits_ = N + emin_ + shift;  // = N for emin <= 0, N + emin otherwise
    u128 mod = 1;
    for (int i = 0; i < acc_digits_; ++i) {
        mod *= p_;
        if (mod > (u128(1) << 62)) throw std::range_error("GnEvaluator: accumulation modulus overflows");
    }
    acc_mod_ = u64(mod);

    u64 denom = 1;
    for (std::size_t k = 0; k < n; ++k) {
        denom = mulmod(denom, g.at(fa[k]), pn_);
        denom = mulmod(denom, g.at(fbc[k]), pn_);
    }
    u64 denom_inv = invmod(denom, pn_);

    unit_.resize(p_ - 1);
    expo_.resize(p_ - 1);
    for (i64 s = 0; s < pm1; ++s) {
        ZpRational sp(s, pm1);
        u64 u = denom_inv;
        for (std::size_t k = 0; k < n; ++k) {
            u = mulmod(u, g.at(frac_part(fa[k] - sp)), pn_);
            u = mulmod(u, g.at(frac_part(fbc[k] + sp)), pn_);
        }
        // (-1)^{sn} and the sign of (-p)^{e+shift}, folded together
        bool neg = ((u64(s) * n) & 1) != 0;
        if ((elist[s] + shift) & 1) neg = !neg;
        if (neg) u = (pn_ - u) % pn_;
        unit_[s] = u;
        expo_[s] = elist[s] + shift;
    }
}

PadicNumber GnEvaluator::eval(u64 t) const {
    const u64 p = p_;
    t %= p;
    if (t == 0) return PadicNumber::zero(p, N_);
    int shift = emin_ < 0 ? -emin_ : 0;
    u64 w = teichmuller(p, N_, t);
    u64 winv = invmod(w, pn_);
    std::vector<u64> ppow(acc_digits_ + 1, 1);
    for (int i = 1; i <= acc_digits_; ++i) ppow[i] = ppow[i - 1] * p;
    u64 acc = 0;
    u64 ws = 1;
    for (u64 s = 0; s + 1 < p; ++s) {
        int e = expo_[s];
        if (e < acc_digits_) {
            u64 tu = mulmod(unit_[s], ws, pn_);
            acc = (acc + mulmod(tu, ppow[e], acc_mod_)) % acc_mod_;
        }
        ws = mulmod(ws, winv, pn_);
    }
    // multiply the prefactor -1/(p-1); net sign with (-p)^{-shift} is (-1)^{shift+1}
    acc = mulmod(acc, invmod((p - 1) % acc_mod_, acc_mod_), acc_mod_);
    bool negate = ((shift + 1) & 1) != 0;
    if (negate) acc = (acc_mod_ - acc) % acc_mod_;
    if (acc == 0) return PadicNumber::zero(p, N_);
    int v = 0;
    while (acc % p == 0) {
        acc /= p;
        ++v;
    }
    return PadicNumber::from_unit(p, acc_digits_ - v, i64(v) - shift, acc);
}

PadicNumber gn_eval(const PrimeFieldContext& ctx, const GnParameters& params, u64 t, int N) {
    GnEvaluator ev(ctx, params, N);
    return ev.eval(t);
}

namespace {

// -Gamma_p(1/3)^3, the fixed p-adic Jacobi-sum unit the twisted sum must
// carry for the C_p identity to close (Gross-Koblitz gives Gamma_p(1/3)^3 =
// J(psi3-bar, psi3-bar) embedded in Z_p, not a sign).
u64 neg_gamma13_cubed(const PrimeFieldContext& ctx, int N) {
    GammaTable g = gamma_p_batch(ctx.p(), N, {zq(1, 3)});
    u64 pn = g.modulus();
    u64 x = g.at(zq(1, 3));
    return (pn - mulmod(x, mulmod(x, x, pn), pn)) % pn;
}

}  // namespace

G3Evaluator::G3Evaluator(const PrimeFieldContext& ctx, int N)
    : ctx_(&ctx), core_(ctx, g3_parameters(), N), norm_unit_(neg_gamma13_cubed(ctx, N)) {
    if (ctx.p() % 3 != 1) {
        throw std::domain_error("G3Evaluator: requires p = 1 (mod 3), got p = " + std::to_string(ctx.p()));
    }
}

PadicNumber G3Evaluator::eval(u64 lambda) const {
    const PrimeFieldContext& ctx = *ctx_;
    const u64 p = ctx.p();
    lambda %= p;
    if (lambda == 1) throw std::domain_error("G3Evaluator: lambda = 1 excluded");
    if (lambda == 0) return PadicNumber::zero(p, core_.N());  // psi_3(0) = 0 kills the twist
    u64 one_minus = ctx.sub(1, lambda);
    u64 d2 = ctx.inv(ctx.mul(one_minus, one_minus));
    u64 xarg = ctx.mul(lambda, d2);
    u64 targ = ctx.mul(ctx.sub(0, ctx.mul(4, lambda)), d2);
    PadicNumber g = core_.eval(targ);
    u64 pn = 1;
    for (int i = 0; i < core_.N(); ++i) pn *= p;
    u64 tw = powmod(teichmuller(p, core_.N(), xarg), (p - 1) / 3, pn);
    u64 c = mulmod(tw, norm_unit_, pn);
    return g * PadicNumber::from_unit(p, core_.N(), 0, c);
}

i64 G3Evaluator::decode_times_p(u64 lambda) const {
    PadicNumber v = eval(lambda);
    if (v.is_zero()) return 0;
    const u64 p = ctx_->p();
    PadicNumber scaled = PadicNumber::from_unit(p, v.precision(), v.valuation() + 1, v.unit());
    i64 bound = 3 * i64(p);
    i64 x = scaled.decode_balanced(bound);
    // escalate one digit when the decode sits near the balanced boundary
    u128 window = 1;
    for (i64 i = 0; i < scaled.valuation() + i64(scaled.precision()); ++i) window *= p;
    if (u128(x < 0 ? -x : x) * 100 >= window * 49 && core_.N() < 6) {
        G3Evaluator finer(*ctx_, core_.N() + 1);
        return finer.decode_times_p(lambda);
    }
    return x;
}

G9Evaluator::G9Evaluator(const PrimeFieldContext& ctx, int N)
    : ctx_(&ctx), core_(ctx, g9_parameters(), N) {
    if (ctx.p() % 3 != 2) {
        throw std::domain_error("G9Evaluator: requires p = 2 (mod 3), got p = " + std::to_string(ctx.p()));
    }
}

PadicNumber G9Evaluator::eval(u64 lambda) const {
    const PrimeFieldContext& ctx = *ctx_;
    const u64 p = ctx.p();
    lambda %= p;
    if (lambda == 1) throw std::domain_error("G9Evaluator: lambda = 1 excluded");
    u64 one_minus = ctx.sub(1, lambda);
    u64 d6 = ctx.inv(ctx.pow(one_minus, 6));
    u64 targ = ctx.mul(ctx.sub(0, ctx.mul(64 % p, ctx.pow(lambda, 3))), d6);
    return core_.eval(targ);
}

i64 G9Evaluator::decode(u64 lambda) const {
    PadicNumber v = eval(lambda);
    if (v.is_zero()) return 0;
    const u64 p = ctx_->p();
    i64 bound = 3 * i64(p);
    i64 x = v.decode_balanced(bound);
    u128 window = 1;
    for (i64 i = 0; i < v.valuation() + i64(v.precision()); ++i) window *= p;
    if (u128(x < 0 ? -x : x) * 100 >= window * 49 && core_.N() < 6) {
        G9Evaluator finer(*ctx_, core_.N() + 1);
        return finer.decode(lambda);
    }
    return x;
}

PadicNumber g3_eval(const PrimeFieldContext& ctx, u64 lambda, int N) {
    return G3Evaluator(ctx, N).eval(lambda);
}

PadicNumber g9_eval(const PrimeFieldContext& ctx, u64 lambda, int N) {
    return G9Evaluator(ctx, N).eval(lambda);
}

int psi6_minus_one(u64 p) {
    if (p % 6 != 1) throw std::domain_error("psi6_minus_one: requires p = 1 (mod 6)");
    return ((p - 1) / 6) % 2 == 0 ? 1 : -1;
}

}  // namespace xlam
