#include "xlambda/curves.hpp"

#include <cmath>

#include "xlambda/parallel.hpp"

namespace xlam {

i64 legendre_trace(const PrimeFieldContext& ctx, u64 lambda) {
    const u64 p = ctx.p();
    lambda %= p;
    if (lambda == 0 || lambda == 1) {
        throw std::domain_error("legendre_trace: singular at lambda = " + std::to_string(lambda));
    }
    i64 s = 0;
    for (u64 x = 0; x < p; ++x) {
        u64 f = ctx.mul(ctx.mul(x, ctx.sub(x, 1)), ctx.sub(x, lambda));
        s += ctx.quadratic_char(f);
    }
    return -s;
}

i64 clausen_trace(const PrimeFieldContext& ctx, u64 lambda) {
    const u64 p = ctx.p();
    lambda %= p;
    if (lambda == 0 || lambda == p - 1) {
        throw std::domain_error("clausen_trace: singular at lambda = " + std::to_string(lambda));
    }
    i64 s = 0;
    for (u64 x = 0; x < p; ++x) {
        u64 f = ctx.mul(ctx.sub(x, 1), ctx.add(ctx.mul(x, x), lambda));
        s += ctx.quadratic_char(f);
    }
    return -s;
}

i64 surface_A_direct(const PrimeFieldContext& ctx, u64 lambda) {
    const u64 p = ctx.p();
    lambda %= p;
    if (lambda == 0) throw std::domain_error("surface_A_direct: lambda = 0");
    u64 beta = ctx.mul(ctx.sub(1, lambda), ctx.inv(ctx.mul(lambda, lambda)));
    i64 s = 0;
    for (u64 x = 0; x < p; ++x) {
        for (u64 y = 0; y < p; ++y) {
            u64 xy = ctx.mul(x, y);
            u64 f = ctx.mul(ctx.mul(xy, ctx.add(ctx.add(1, x), y)), ctx.add(xy, beta));
            s += ctx.quadratic_char(f);
        }
    }
    return -s;
}

i64 surface_A_fast(const PrimeFieldContext& ctx, u64 lambda) {
    const u64 p = ctx.p();
    lambda %= p;
    if (lambda == 0) throw std::domain_error("surface_A_fast: lambda = 0");
    if (lambda == 1 || lambda == 2) return surface_A_direct(ctx, lambda);
    u64 mu = ctx.mul(ctx.sub(1, lambda), ctx.inv(lambda));
    i64 a = clausen_trace(ctx, mu);
    return i64(p) - a * a;
}

std::vector<i64> clausen_trace_table(const PrimeFieldContext& ctx, int workers) {
    const u64 p = ctx.p();
    std::vector<i64> acl(p, 0);
    parallel_for(0, p, workers, [&](u64 lo, u64 hi) {
        for (u64 mu = lo; mu < hi; ++mu) {
            i64 s = 0;
            for (u64 x = 0; x < p; ++x) {
                u64 f = ctx.mul(ctx.sub(x, 1), ctx.add(ctx.mul(x, x), mu));
                s += ctx.quadratic_char(f);
            }
            acl[mu] = -s;
        }
    });
    return acl;
}

std::vector<i64> surface_A_table(const PrimeFieldContext& ctx, int workers) {
    const u64 p = ctx.p();
    std::vector<i64> acl = clausen_trace_table(ctx, workers);
    std::vector<i64> A(p - 1, 0);
    for (u64 lambda = 1; lambda < p; ++lambda) {
        if (lambda == 1 || lambda == 2) {
            A[lambda - 1] = surface_A_direct(ctx, lambda);
            continue;
        }
        u64 mu = ctx.mul(ctx.sub(1, lambda), ctx.inv(lambda));
        A[lambda - 1] = i64(p) - acl[mu] * acl[mu];
    }
    return A;
}

TraceRecord trace_record(const PrimeFieldContext& ctx, u64 lambda, bool with_direct) {
    const u64 p = ctx.p();
    lambda %= p;
    if (lambda == 0) throw std::domain_error("trace_record: lambda = 0 is outside the family");
    TraceRecord r;
    r.p = p;
    r.lambda = lambda;
    if (lambda != 1) r.a_leg = legendre_trace(ctx, lambda);
    if (lambda != p - 1) r.a_cl = clausen_trace(ctx, lambda);
    r.A_p = surface_A_fast(ctx, lambda);
    r.provenance = TraceRecord::Provenance::fast;
    if (with_direct) {
        i64 d = surface_A_direct(ctx, lambda);
        if (d != r.A_p) throw std::logic_error("trace_record: fast/direct mismatch");
        r.provenance = TraceRecord::Provenance::both;
    }
    return r;
}

namespace {

ComplexApprox greene_sum(const CharSumTables& tables, u64 lambda, int power) {
    const PrimeFieldContext& ctx = tables.ctx();
    const u64 p = ctx.p();
    ComplexApprox s{0.0, 0.0, 0.0};
    if (lambda % p == 0) return s;
    for (u64 j = 0; j + 1 < p; ++j) {
        ComplexApprox b = tables.binom_phichi_chi(j);
        ComplexApprox t = b * b;
        if (power == 3) t = t * b;
        s = s + t * tables.chi(j, lambda);
    }
    return s.scaled(double(p) / double(p - 1));
}

}  // namespace

ComplexApprox greene_2f1(const CharSumTables& tables, u64 lambda) { return greene_sum(tables, lambda, 2); }
ComplexApprox greene_3f2(const CharSumTables& tables, u64 lambda) { return greene_sum(tables, lambda, 3); }
ComplexApprox greene_2f1(const PrimeFieldContext& ctx, u64 lambda) {
    CharSumTables t(ctx);
    return greene_2f1(t, lambda);
}
ComplexApprox greene_3f2(const PrimeFieldContext& ctx, u64 lambda) {
    CharSumTables t(ctx);
    return greene_3f2(t, lambda);
}

i64 round_scaled_to_integer(const ComplexApprox& v, double scale, double guard) {
    double x = v.re * scale;
    double r = std::nearbyint(x);
    if (std::fabs(x - r) > guard || std::fabs(v.im * scale) > guard) {
        throw std::range_error("round_scaled_to_integer: value " + std::to_string(x) +
                               " violates the guard band " + std::to_string(guard));
    }
    return i64(r);
}

Decomp3F2Result lemma_3f2_decomposition_check(const CharSumTables& tables, const CpEvaluator& cp, u64 lambda) {
    const PrimeFieldContext& ctx = tables.ctx();
    const u64 p = ctx.p();
    lambda %= p;
    ComplexApprox lhs = greene_3f2(tables, lambda);

    double rhs = 0.0;
    if (lambda != 1) {
        u64 larg = ctx.mul(lambda, ctx.inv(ctx.mul(ctx.sub(1, lambda), ctx.sub(1, lambda))));
        i64 c = cp.eval(larg);
        rhs += double(ctx.quadratic_char_signed(i64(lambda) - 1)) * double(c) /
               (double(p) * double(p) * double(p) * double(p - 1));
    }
    if (lambda == p - 1) rhs += double(ctx.quadratic_char(p - 1)) / double(p);
    double rhs_im = 0.0;
    if (lambda == 1 && (p - 1) % 4 == 0) {
        // Delta(p) branch: quartic binomial bracket, chi4 = omega^((p-1)/4)
        const u64 h = (p - 1) / 2, q = (p - 1) / 4;
        ComplexApprox b = binomial_numeric(ctx, CharacterIndex{q}, CharacterIndex{h}) *
                              binomial_numeric(ctx, CharacterIndex{(h + p - 1 - q) % (p - 1)}, CharacterIndex{p - 1 - q}) +
                          binomial_numeric(ctx, CharacterIndex{(h + q) % (p - 1)}, CharacterIndex{h}) *
                              binomial_numeric(ctx, CharacterIndex{p - 1 - q}, CharacterIndex{(h + p - 1 - q) % (p - 1)});
        rhs += b.re;
        rhs_im += b.im;
    }

    Decomp3F2Result r;
    r.lhs_re = lhs.re;
    r.rhs_re = rhs;
    r.residual = std::hypot(lhs.re - rhs, lhs.im - rhs_im);
    r.pass = r.residual <= std::max(1e-6 * std::fabs(rhs), 10.0 * lhs.err + 1e-12);
    return r;
}

}  // namespace xlam
