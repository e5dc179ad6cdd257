#include <doctest.h>

#include <cmath>

#include "xlambda/charsums.hpp"
#include "xlambda/curves.hpp"

using namespace xlam;

namespace {

// test-only oracle: affine solutions of y^2 = f(x) counted by enumeration,
// plus the point at infinity
i64 trace_by_enumeration(const PrimeFieldContext& ctx, bool clausen, u64 lam) {
    const u64 p = ctx.p();
    u64 count = 1;
    for (u64 x = 0; x < p; ++x) {
        u64 f = clausen ? ctx.mul(ctx.sub(x, 1), ctx.add(ctx.mul(x, x), lam))
                        : ctx.mul(ctx.mul(x, ctx.sub(x, 1)), ctx.sub(x, lam));
        for (u64 y = 0; y < p; ++y) {
            if (ctx.mul(y, y) == f) ++count;
        }
    }
    return i64(p) + 1 - i64(count);
}

}  // namespace

TEST_CASE("legendre trace examples and enumeration oracle") {
    PrimeFieldContext c5(5);
    CHECK(legendre_trace(c5, 2) == -2);  // 8 projective points
    CHECK(trace_by_enumeration(c5, false, 2) == -2);
    PrimeFieldContext c7(7);
    CHECK(legendre_trace(c7, 3) == trace_by_enumeration(c7, false, 3));
    for (u64 p : {5ull, 7ull, 11ull}) {
        PrimeFieldContext ctx(p);
        for (u64 lam = 2; lam < p; ++lam) {
            CHECK(legendre_trace(ctx, lam) == trace_by_enumeration(ctx, false, lam));
        }
    }
    CHECK_THROWS_AS(legendre_trace(c5, 0), std::domain_error);
    CHECK_THROWS_AS(legendre_trace(c5, 1), std::domain_error);
}

TEST_CASE("clausen trace examples and enumeration oracle") {
    PrimeFieldContext c5(5);
    CHECK(clausen_trace(c5, 1) == trace_by_enumeration(c5, true, 1));
    for (u64 p : {5ull, 7ull, 11ull}) {
        PrimeFieldContext ctx(p);
        for (u64 lam = 1; lam + 1 < p; ++lam) {
            CHECK(clausen_trace(ctx, lam) == trace_by_enumeration(ctx, true, lam));
        }
    }
    CHECK_THROWS_AS(clausen_trace(c5, 0), std::domain_error);
    CHECK_THROWS_AS(clausen_trace(c5, 4), std::domain_error);  // lambda = -1
}

TEST_CASE("Hasse bound exhaustive p <= 500") {
    for (u64 p = 5; p <= 500; ++p) {
        if (!is_prime(p)) continue;
        PrimeFieldContext ctx(p);
        const i64 fourp = 4 * i64(p);
        for (u64 lam = 1; lam < p; ++lam) {
            if (lam != 1) {
                i64 a = legendre_trace(ctx, lam);
                CHECK(a * a <= fourp);
            }
            if (lam != p - 1) {
                i64 a = clausen_trace(ctx, lam);
                CHECK(a * a <= fourp);
            }
        }
    }
}

TEST_CASE("quadratic twist relation, exhaustive p <= 200") {
    for (u64 p = 5; p <= 200; ++p) {
        if (!is_prime(p)) continue;
        PrimeFieldContext ctx(p);
        for (u64 lam = 2; lam + 1 < p; ++lam) {
            i64 ac = clausen_trace(ctx, ctx.sub(0, ctx.mul(lam, lam)));
            i64 al = legendre_trace(ctx, ctx.mul(ctx.mul(2, lam), ctx.inv(ctx.sub(lam, 1))));
            CHECK(std::llabs(ac) == std::llabs(al));
        }
    }
}

TEST_CASE("surface_A_direct frozen tables") {
    PrimeFieldContext c5(5);
    const i64 want5[4] = {-1, 0, 1, 1};
    for (u64 lam = 1; lam < 5; ++lam) CHECK(surface_A_direct(c5, lam) == want5[lam - 1]);
    CHECK_THROWS_AS(surface_A_direct(c5, 0), std::domain_error);

    PrimeFieldContext c7(7);
    const i64 want7[6] = {-1, 0, 3, -9, 3, -9};
    for (u64 lam = 1; lam < 7; ++lam) CHECK(surface_A_direct(c7, lam) == want7[lam - 1]);

    PrimeFieldContext c13(13);
    const i64 want13[12] = {-1, 0, 9, 9, -3, -23, 9, 9, -23, 9, -3, 9};
    for (u64 lam = 1; lam < 13; ++lam) CHECK(surface_A_direct(c13, lam) == want13[lam - 1]);
}

TEST_CASE("A_p(1) = -1 and |A_p| <= 3p, exhaustive p <= 200") {
    for (u64 p = 5; p <= 200; ++p) {
        if (!is_prime(p)) continue;
        PrimeFieldContext ctx(p);
        CHECK(surface_A_direct(ctx, 1) == -1);
        for (i64 a : surface_A_table(ctx)) CHECK(std::llabs(a) <= 3 * i64(p));
    }
}

TEST_CASE("fast equals direct exhaustively for small primes") {
    for (u64 p : {5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull}) {
        PrimeFieldContext ctx(p);
        std::vector<i64> table = surface_A_table(ctx);
        for (u64 lam = 1; lam < p; ++lam) {
            i64 d = surface_A_direct(ctx, lam);
            CHECK(surface_A_fast(ctx, lam) == d);
            CHECK(table[lam - 1] == d);
        }
    }
}

TEST_CASE("fast equals direct on sampled lambads at larger primes") {
    for (u64 p : {53ull, 101ull, 211ull, 499ull}) {
        PrimeFieldContext ctx(p);
        for (u64 lam : {1ull, 2ull, 3ull, 17ull, 42ull}) {
            CHECK(surface_A_fast(ctx, lam % p) == surface_A_direct(ctx, lam % p));
        }
    }
}

TEST_CASE("greene 2F1 matches the Legendre trace") {
    for (u64 p : {5ull, 7ull, 11ull, 13ull}) {
        PrimeFieldContext ctx(p);
        CharSumTables t(ctx);
        for (u64 lam = 2; lam < p; ++lam) {
            i64 got = round_scaled_to_integer(greene_2f1(t, lam), double(p));
            CHECK(got == -i64(ctx.quadratic_char(p - 1)) * legendre_trace(ctx, lam));
        }
    }
}

TEST_CASE("greene 3F2: clausen trace relation and the bound |p 3F2| <= 3") {
    for (u64 p : {5ull, 7ull, 11ull, 13ull}) {
        PrimeFieldContext ctx(p);
        CharSumTables t(ctx);
        for (u64 lam = 0; lam < p; ++lam) {
            ComplexApprox f = greene_3f2(t, lam);
            CHECK(std::fabs(f.re) * double(p) <= 3.0 + 1e-6);
        }
        for (u64 lam = 1; lam + 1 < p; ++lam) {
            u64 arg = ctx.mul(lam, ctx.inv(ctx.add(1, lam)));
            i64 tt = round_scaled_to_integer(greene_3f2(t, arg), double(p) * double(p));
            i64 acl = clausen_trace(ctx, lam);
            CHECK(i64(p) + i64(ctx.quadratic_char(ctx.add(1, lam))) * tt == acl * acl);
        }
    }
}

TEST_CASE("A_p(2) parity branch through 3F2(-1)") {
    for (u64 p : {5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull}) {
        PrimeFieldContext ctx(p);
        CharSumTables tb(ctx);
        i64 t = round_scaled_to_integer(greene_3f2(tb, p - 1), double(p) * double(p));
        i64 expect = -i64(ctx.quadratic_char(2)) * t + i64(ctx.quadratic_char_signed(-2)) * i64(p);
        CHECK(surface_A_direct(ctx, 2) == expect);
    }
}

TEST_CASE("3F2 decomposition through C_p at every lambda including both boundaries") {
    for (u64 p : {5ull, 7ull, 11ull, 13ull, 17ull}) {
        PrimeFieldContext ctx(p);
        CharSumTables t(ctx);
        CpEvaluator cp(ctx);
        for (u64 lam = 0; lam < p; ++lam) {
            Decomp3F2Result r = lemma_3f2_decomposition_check(t, cp, lam);
            INFO("p=", p, " lambda=", lam, " residual=", r.residual);
            CHECK(r.pass);
        }
    }
}

TEST_CASE("round_scaled_to_integer guard band") {
    ComplexApprox near{0.30004, 0.0, 1e-9};
    CHECK(round_scaled_to_integer(near, 10.0) == 3);
    ComplexApprox off{0.35, 0.0, 1e-9};
    CHECK_THROWS_AS(round_scaled_to_integer(off, 10.0), std::range_error);
}

TEST_CASE("trace records") {
    PrimeFieldContext ctx(5);
    TraceRecord r = trace_record(ctx, 1, true);
    CHECK(r.A_p == -1);
    CHECK(!r.a_leg.has_value());
    CHECK(r.a_cl.has_value());
    CHECK(r.provenance == TraceRecord::Provenance::both);
    TraceRecord r2 = trace_record(ctx, 2, false);
    CHECK(r2.a_leg.has_value());
    CHECK(*r2.a_leg == -2);
    CHECK_THROWS_AS(trace_record(ctx, 0, false), std::domain_error);
}
