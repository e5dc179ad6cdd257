#include "xlambda/charsums.hpp"

#include <algorithm>
#include <cmath>

#include "xlambda/curves.hpp"

namespace xlam {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::vector<std::complex<double>> roots_of_unity(u64 n) {
    std::vector<std::complex<double>> z(n);
    for (u64 k = 0; k < n; ++k) {
        double a = kTwoPi * double(k) / double(n);
        z[k] = {std::cos(a), std::sin(a)};
    }
    return z;
}

}  // namespace

CharSumTables::CharSumTables(const PrimeFieldContext& ctx) : ctx_(&ctx) {
    const u64 p = ctx.p();
    zp_ = roots_of_unity(p);
    zpm1_ = roots_of_unity(p - 1);
    gauss_.resize(p - 1);
    double gerr = 8.0 * double(p) * ComplexApprox::eps;
    for (u64 j = 0; j + 1 < p; ++j) {
        std::complex<double> s = 0.0;
        for (u64 x = 1; x < p; ++x) s += zpm1_[mulmod(j, ctx.dlog(x), p - 1)] * zp_[x];
        gauss_[j] = ComplexApprox{s.real(), s.imag(), gerr};
    }
    // (phi chi | chi) = chi(-1)/p * J(phi chi, chi-bar); phi*chi*chi-bar = phi
    // is never trivial, so the Gauss-sum quotient form of J applies with no delta term.
    binom_.resize(p - 1);
    const u64 h = (p - 1) / 2;
    for (u64 j = 0; j + 1 < p; ++j) {
        ComplexApprox jac = gauss_[(j + h) % (p - 1)] * gauss_[(p - 1 - j) % (p - 1)] / gauss_[h];
        double sign = (j % 2 == 0) ? 1.0 : -1.0;  // chi(-1) = (-1)^j
        binom_[j] = jac.scaled(sign / double(p));
    }
}

ComplexApprox CharSumTables::chi(u64 j, u64 x) const {
    auto e = ctx_->char_exponent(CharacterIndex{j}, x);
    if (!e) return {0.0, 0.0, 0.0};
    auto z = zpm1_[*e];
    return {z.real(), z.imag(), 2.0 * ComplexApprox::eps};
}

ComplexApprox gauss_sum_numeric(const PrimeFieldContext& ctx, CharacterIndex j) {
    const u64 p = ctx.p();
    auto zp = roots_of_unity(p);
    auto zq = roots_of_unity(p - 1);
    std::complex<double> s = 0.0;
    for (u64 x = 1; x < p; ++x) s += zq[mulmod(j.j % (p - 1), ctx.dlog(x), p - 1)] * zp[x];
    return {s.real(), s.imag(), 8.0 * double(p) * ComplexApprox::eps};
}

ComplexApprox jacobi_sum_numeric(const PrimeFieldContext& ctx, CharacterIndex j1, CharacterIndex j2) {
    const u64 p = ctx.p();
    auto zq = roots_of_unity(p - 1);
    std::complex<double> s = 0.0;
    for (u64 y = 2; y < p; ++y) {  // y=0 and y=1 vanish under chi(0)=0
        u64 e = (mulmod(j1.j % (p - 1), ctx.dlog(y), p - 1) + mulmod(j2.j % (p - 1), ctx.dlog(p + 1 - y), p - 1)) % (p - 1);
        s += zq[e];
    }
    return {s.real(), s.imag(), 8.0 * double(p) * ComplexApprox::eps};
}

ComplexApprox binomial_numeric(const PrimeFieldContext& ctx, CharacterIndex top, CharacterIndex bottom) {
    const u64 p = ctx.p();
    u64 jb = bottom.j % (p - 1);
    ComplexApprox jac = jacobi_sum_numeric(ctx, top, CharacterIndex{(p - 1 - jb) % (p - 1)});
    double sign = (jb % 2 == 0) ? 1.0 : -1.0;
    return jac.scaled(sign / double(p));
}

GaussSumPadic gauss_sum_padic(const PrimeFieldContext& ctx, CharacterIndex j, int N) {
    const u64 p = ctx.p();
    u64 jj = j.j % (p - 1);
    ZpRational arg = frac_part(ZpRational(i64(jj), i64(p) - 1));
    GammaTable t = gamma_p_batch(p, N, {arg});
    u64 pn = t.modulus();
    u64 unit = (pn - t.at(arg)) % pn;  // -Gamma_p(<j/(p-1)>)
    return GaussSumPadic{jj, PadicNumber::from_unit(p, N, 0, unit)};
}

CpEvaluator::CpEvaluator(const PrimeFieldContext& ctx, int N) : ctx_(&ctx), p_(ctx.p()), N_(N) {
    const u64 p = p_;
    const i64 pm1 = i64(p) - 1;
    u128 mod = 1;
    for (int i = 0; i < N + 1; ++i) {
        mod *= p;
        if (mod > (u128(1) << 62)) throw std::range_error("CpEvaluator: p^(N+1) overflows");
    }
    acc_mod_ = u64(mod);
    u64 pn = acc_mod_ / p;

    std::vector<ZpRational> args;
    args.reserve(3 * (p - 1));
    std::vector<ZpRational> f1(p - 1), f2(p - 1), f3(p - 1);
    for (i64 j = 0; j < pm1; ++j) {
        f1[j] = frac_part(ZpRational(pm1 + 4 * j, 2 * pm1));   // <1/2 + 2j/(p-1)>
        f2[j] = frac_part(ZpRational(-j, pm1));                // <-j/(p-1)>
        f3[j] = frac_part(ZpRational(pm1 + 2 * j, 2 * pm1));   // <1/2 + j/(p-1)>
        args.push_back(f1[j]);
        args.push_back(f2[j]);
        args.push_back(f3[j]);
    }
    GammaTable g = gamma_p_batch(p, N, args);

    unit_.resize(p - 1);
    expo_.resize(p - 1);
    for (i64 j = 0; j < pm1; ++j) {
        ZpRational esum = f1[j] + f2[j] * ZpRational(3, 1) + f3[j];
        if (!esum.is_integer()) throw std::logic_error("CpEvaluator: pi-exponent not divisible by p-1");
        int E = int(esum.num);
        if (E < 1) throw std::logic_error("CpEvaluator: term exponent below 1");
        expo_[j] = E;
        u64 u = g.at(f1[j]);
        u64 u2 = g.at(f2[j]);
        u = mulmod(u, mulmod(u2, mulmod(u2, u2, pn), pn), pn);
        u = mulmod(u, g.at(f3[j]), pn);
        unit_[j] = (pn - u) % pn;  // the five Gross-Koblitz minus signs leave -1
    }

    double sp = std::sqrt(double(p));
    bound_ = i64(double(p - 1) * double(p) * double(p) * sp) + 1;
    if (u128(2) * u128(bound_) >= mod) {
        throw std::range_error("CpEvaluator: N too small to decode |C_p| <= (p-1)p^(5/2)");
    }
}

i64 CpEvaluator::eval(u64 lamarg) const {
    const u64 p = p_;
    lamarg %= p;
    if (lamarg == 0) return 0;  // wbar^j(0) = 0 for every j under chi(0)=0
    u64 pn = acc_mod_ / p;
    u64 w = teichmuller(p, N_, lamarg);
    u64 winv = invmod(w, pn);
    // powers of p modulo p^(N+1)
    std::vector<u64> ppow(N_ + 2, 1);
    for (int i = 1; i <= N_ + 1; ++i) ppow[i] = ppow[i - 1] * p;
    u64 acc = 0;
    u64 ws = 1;  // wbar^j(lamarg) mod p^N
    for (u64 j = 0; j + 1 < p; ++j) {
        int E = expo_[j];
        if (E <= N_) {
            u64 tu = mulmod(unit_[j], ws, pn);
            u64 term = mulmod(tu, ppow[E], acc_mod_);
            if (E & 1) term = (acc_mod_ - term) % acc_mod_;  // (-p)^E sign
            acc = (acc + term) % acc_mod_;
        }
        ws = mulmod(ws, winv, pn);
    }
    i64 val = acc > acc_mod_ / 2 ? i64(acc) - i64(acc_mod_) : i64(acc);
    if (val > bound_ || val < -bound_) throw std::range_error("CpEvaluator: decoded value out of range");
    return val;
}

ComplexApprox c_p_numeric(const CharSumTables& tables, u64 lamarg) {
    const PrimeFieldContext& ctx = tables.ctx();
    const u64 p = ctx.p();
    const u64 h = (p - 1) / 2;
    lamarg %= p;
    ComplexApprox s{0.0, 0.0, 0.0};
    if (lamarg == 0) return s;
    for (u64 j = 0; j + 1 < p; ++j) {
        ComplexApprox t = tables.gauss((h + 2 * (p - 1) - 2 * j) % (p - 1));  // g(phi wbar^2j)
        ComplexApprox g1 = tables.gauss(j);                                   // g(w^j)
        t = t * g1 * g1 * g1;
        t = t * tables.gauss((h + (p - 1) - j) % (p - 1));                    // g(phi wbar^j)
        t = t * tables.chi((p - 1 - j) % (p - 1), lamarg);                    // wbar^j(lamarg)
        s = s + t;
    }
    return s;
}

ComplexApprox c_p_numeric(const PrimeFieldContext& ctx, u64 lamarg) {
    CharSumTables tables(ctx);
    return c_p_numeric(tables, lamarg);
}

i64 c_p_padic(const PrimeFieldContext& ctx, u64 lamarg, int N) {
    CpEvaluator ev(ctx, N);
    return ev.eval(lamarg);
}

i64 c_p_via_surface(const PrimeFieldContext& ctx, u64 lamarg) {
    const u64 p = ctx.p();
    lamarg %= p;
    if (lamarg == 0) {
        throw std::domain_error(
            "c_p_via_surface: lamarg = 0 corresponds to lambda = 1, outside the identity's domain");
    }
    // lamarg = (1-lambda)/lambda^2  <=>  lamarg*lambda^2 + lambda - 1 = 0
    u64 disc = ctx.reduce(i64(ctx.mul(4, lamarg)) + 1);
    std::vector<u64> roots;
    if (disc == 0) {
        roots.push_back(ctx.mul(ctx.inv(ctx.mul(2, lamarg)), p - 1));
    } else if (ctx.quadratic_char(disc) == 1) {
        u64 s = ctx.pow(ctx.generator(), ctx.dlog(disc) / 2);
        u64 inv2l = ctx.inv(ctx.mul(2, lamarg));
        roots.push_back(ctx.mul(ctx.sub(s, 1), inv2l));
        roots.push_back(ctx.mul(ctx.sub(p - 1, s), inv2l));
    } else {
        throw std::domain_error("c_p_via_surface: lamarg " + std::to_string(lamarg) +
                                " is not of the form (1-lambda)/lambda^2 over F_p");
    }
    i64 a = surface_A_fast(ctx, roots[0]);
    if (roots.size() == 2) {
        i64 a2 = surface_A_fast(ctx, roots[1]);
        if (a2 != a) throw std::logic_error("c_p_via_surface: the two quadratic roots disagree");
    }
    i64 sign = -i64(ctx.quadratic_char(p - 1));
    return sign * i64(p) * i64(p - 1) * a;
}

bool exponent_lemma_holds(int which, u64 p, u64 j) {
    const i64 pm1 = i64(p) - 1;
    ZpRational jp(i64(j), pm1);
    auto fl = [](const ZpRational& x) { return floor_part(x); };
    switch (which) {
        case 1:
            return fl(ZpRational(1, 2) + jp * ZpRational(3, 1)) ==
                   fl(ZpRational(1, 6) + jp) + fl(ZpRational(5, 6) + jp) + fl(ZpRational(1, 2) + jp);
        case 2:
            return fl(ZpRational(1, 2) + jp * ZpRational(6, 1)) ==
                   fl(ZpRational(1, 12) + jp) + fl(ZpRational(5, 12) + jp) + fl(ZpRational(7, 12) + jp) +
                       fl(ZpRational(11, 12) + jp) + fl(ZpRational(1, 4) + jp) + fl(ZpRational(3, 4) + jp);
        case 3:
            if (j == 0) throw std::domain_error("exponent_lemma_holds: lemma 3 needs j >= 1");
            return fl(-(jp * ZpRational(3, 1))) ==
                   -1 + fl(ZpRational(1, 3) - jp) + fl(ZpRational(2, 3) - jp);
        case 4:
            return 1 + fl(ZpRational(-1, 6) + jp * ZpRational(2, 1)) ==
                   fl(ZpRational(11, 12) + jp) + fl(ZpRational(5, 12) + jp);
        default:
            throw std::invalid_argument("exponent_lemma_holds: which must be 1..4");
    }
}

}  // namespace xlam
