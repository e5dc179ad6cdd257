#include <doctest.h>

#include <algorithm>
#include <map>
#include <random>

#include "xlambda/charsums.hpp"
#include "xlambda/curves.hpp"
#include "xlambda/gn.hpp"

using namespace xlam;

namespace {

// Independent single-purpose nGn evaluator: naive gamma per argument, exact
// big-ish accumulation via PadicNumber arithmetic, no shared tables. Oracle
// for GnEvaluator.
PadicNumber gn_eval_reference(const PrimeFieldContext& ctx, const GnParameters& params, u64 t, int N) {
    const u64 p = ctx.p();
    const i64 pm1 = i64(p) - 1;
    if (t % p == 0) return PadicNumber::zero(p, N);
    const int NW = N + 2;  // headroom instead of scaled accumulation
    u64 pnw = 1;
    for (int i = 0; i < NW; ++i) pnw *= p;
    std::map<u64, u64> memo;  // representative -> naive gamma value
    auto gamma = [&](const ZpRational& x) {
        u64 rep = zp_representative(x, p, NW);
        auto it = memo.find(rep);
        if (it == memo.end()) it = memo.emplace(rep, gamma_p_naive(p, NW, x)).first;
        return it->second;
    };
    u64 w = teichmuller(p, NW, t % p);
    PadicNumber sum = PadicNumber::zero(p, NW);
    for (i64 s = 0; s < pm1; ++s) {
        ZpRational sp(s, pm1);
        PadicNumber term = PadicNumber::from_integer(p, NW, 1);
        int e = 0;
        for (std::size_t k = 0; k < params.a.size(); ++k) {
            ZpRational xa = frac_part(params.a[k]) - sp;
            ZpRational xb = frac_part(-params.b[k]) + sp;
            e += int(-floor_part(xa) - floor_part(xb));
            u64 u = gamma(frac_part(xa));
            u = mulmod(u, invmod(gamma(frac_part(params.a[k])), pnw), pnw);
            u = mulmod(u, gamma(frac_part(xb)), pnw);
            u = mulmod(u, invmod(gamma(frac_part(-params.b[k])), pnw), pnw);
            term = term * PadicNumber::from_unit(p, NW, 0, u);
        }
        if ((u64(s) * params.a.size()) % 2 == 1) term = PadicNumber::zero(p, NW) - term;
        // (-p)^e and wbar^s(t)
        PadicNumber mp = PadicNumber::from_integer(p, NW, -i64(p));
        for (int i = 0; i < e; ++i) term = term * mp;
        for (int i = 0; i < -e; ++i) term = term / mp;
        term = term * PadicNumber::from_unit(p, NW, 0, powmod(invmod(w, pnw), u64(s), pnw));
        sum = sum + term;
    }
    return sum / PadicNumber::from_integer(p, NW, -(pm1));
}

bool padic_agree(const PadicNumber& a, const PadicNumber& b, int digits) {
    if (a.is_zero() || b.is_zero()) return a.is_zero() == b.is_zero();
    if (a.valuation() != b.valuation()) return false;
    digits = std::min({digits, a.precision(), b.precision()});
    u64 pk = 1;
    for (int i = 0; i < digits; ++i) pk *= a.p();
    return a.unit() % pk == b.unit() % pk;
}

}  // namespace

TEST_CASE("gn_eval matches the independent reference implementation") {
    for (u64 p : {7ull, 11ull, 13ull}) {
        PrimeFieldContext ctx(p);
        GnEvaluator ev(ctx, g3_parameters(), 3);
        for (u64 t = 0; t < p; ++t) {
            PadicNumber a = ev.eval(t);
            PadicNumber b = gn_eval_reference(ctx, g3_parameters(), t, 3);
            INFO("p=", p, " t=", t, " got=", a.str(), " want=", b.str());
            CHECK(padic_agree(a, b, 2));
        }
    }
}

TEST_CASE("gn_eval rejects bad inputs") {
    PrimeFieldContext ctx(5);
    GnParameters bad{{zq(1, 5)}, {zq(1, 2)}};
    CHECK_THROWS_AS(gn_eval(ctx, bad, 2, 3), std::domain_error);
    CHECK_THROWS_AS(GnEvaluator(ctx, g3_parameters(), 2), std::invalid_argument);  // N below floor
    GnParameters uneven{{zq(1, 3)}, {zq(1, 2), zq(1, 4)}};
    CHECK_THROWS_AS(gn_eval(ctx, uneven, 2, 3), std::invalid_argument);
}

TEST_CASE("nGn at t=0 vanishes") {
    PrimeFieldContext ctx(7);
    CHECK(gn_eval(ctx, g3_parameters(), 0, 3).is_zero());
    PrimeFieldContext c11(11);
    CHECK(gn_eval(c11, g9_parameters(), 0, 3).is_zero());
}

TEST_CASE("parameter shuffle invariance") {
    PrimeFieldContext ctx(11);
    std::mt19937_64 rng(7);
    GnParameters base = g9_parameters();
    GnParameters shuf = base;
    std::shuffle(shuf.a.begin(), shuf.a.end(), rng);
    std::shuffle(shuf.b.begin(), shuf.b.end(), rng);
    GnEvaluator e1(ctx, base, 3), e2(ctx, shuf, 3);
    for (u64 t = 1; t < 11; ++t) CHECK(padic_agree(e1.eval(t), e2.eval(t), 3));
}

TEST_CASE("g3 frozen values at p=7") {
    PrimeFieldContext ctx(7);
    G3Evaluator g3(ctx);
    const u64 lams[6] = {0, 2, 3, 4, 5, 6};
    const i64 want[6] = {0, 9, -3, 9, -3, 0};  // p * 3G3(lambda)
    for (int i = 0; i < 6; ++i) CHECK(g3.decode_times_p(lams[i]) == want[i]);
    CHECK_THROWS_AS(g3.eval(1), std::domain_error);
}

TEST_CASE("g9 frozen values at p=11") {
    PrimeFieldContext ctx(11);
    G9Evaluator g9(ctx);
    const u64 lams[10] = {0, 2, 3, 4, 5, 6, 7, 8, 9, 10};
    const i64 want[10] = {0, -7, -11, -11, 5, -7, 5, 5, 5, 14};
    for (int i = 0; i < 10; ++i) CHECK(g9.decode(lams[i]) == want[i]);
    CHECK_THROWS_AS(g9.eval(1), std::domain_error);
}

TEST_CASE("residue-class gates") {
    PrimeFieldContext c7(7), c11(11);
    CHECK_THROWS_AS(G9Evaluator(c7, 3), std::domain_error);
    CHECK_THROWS_AS(G3Evaluator(c11, 3), std::domain_error);
    CHECK_THROWS_AS(g3_eval(c11, 2), std::domain_error);
    CHECK_THROWS_AS(g9_eval(c7, 2), std::domain_error);
}

TEST_CASE("3G3 C_p link exactly, all lambda != 1") {
    for (u64 p : {7ull, 13ull, 19ull}) {
        PrimeFieldContext ctx(p);
        G3Evaluator g3(ctx);
        CpEvaluator cp(ctx);
        const i64 s6 = psi6_minus_one(p);
        for (u64 lam = 0; lam < p; ++lam) {
            if (lam == 1) continue;
            u64 beta = ctx.mul(lam, ctx.inv(ctx.mul(ctx.sub(1, lam), ctx.sub(1, lam))));
            CHECK(s6 * i64(p) * i64(p - 1) * g3.decode_times_p(lam) == cp.eval(beta));
        }
    }
}

TEST_CASE("9G9 C_p link exactly, all lambda != 1") {
    for (u64 p : {5ull, 11ull, 17ull}) {
        PrimeFieldContext ctx(p);
        G9Evaluator g9(ctx);
        CpEvaluator cp(ctx);
        for (u64 lam = 0; lam < p; ++lam) {
            if (lam == 1) continue;
            u64 beta = ctx.mul(lam, ctx.inv(ctx.mul(ctx.sub(1, lam), ctx.sub(1, lam))));
            CHECK(i64(p) * i64(p - 1) * i64(ctx.quadratic_char(p - 1)) * g9.decode(lam) == cp.eval(beta));
        }
    }
}

TEST_CASE("proof-chain identities against the direct surface oracle") {
    for (u64 p : {7ull, 13ull, 19ull}) {
        PrimeFieldContext ctx(p);
        G3Evaluator g3(ctx);
        for (u64 lam = 2; lam < p; ++lam) {
            CHECK(g3.decode_times_p(ctx.sub(1, lam)) == -surface_A_direct(ctx, lam));
        }
        // boundary lambda = 1: the chain breaks by design (psi3(0) = 0)
        CHECK(g3.decode_times_p(0) == 0);
        CHECK(surface_A_direct(ctx, 1) == -1);
    }
    for (u64 p : {5ull, 11ull}) {
        PrimeFieldContext ctx(p);
        G9Evaluator g9(ctx);
        for (u64 lam = 2; lam < p; ++lam) {
            CHECK(g9.decode(ctx.sub(1, lam)) == -surface_A_direct(ctx, lam));
        }
        CHECK(g9.decode(0) == 0);
    }
}

TEST_CASE("kappa_p constant") {
    for (u64 p : {5ull, 11ull, 17ull, 23ull, 29ull, 41ull}) {
        PrimeFieldContext ctx(p);
        std::vector<ZpRational> fr = {zq(1, 12), zq(11, 12), zq(5, 12), zq(7, 12), zq(1, 4), zq(3, 4)};
        GammaTable g = gamma_p_batch(p, 3, fr);
        u64 pn = g.modulus();
        u64 kappa = 1;
        for (const auto& x : fr) kappa = mulmod(kappa, g.at(x), pn);
        u64 expect = ctx.quadratic_char_signed(-2) == 1 ? pn - 1 : 1;  // -phi(-2)
        CHECK(kappa == expect);
    }
}

TEST_CASE("phi(-1) psi6(-1) == 1 for every p = 1 (mod 3) up to 10^4") {
    for (u64 p = 7; p <= 10000; ++p) {
        if (!is_prime(p) || p % 3 != 1) continue;
        // phi(-1) = (-1)^((p-1)/2), psi6(-1) = (-1)^((p-1)/6)
        int phi_m1 = ((p - 1) / 2) % 2 == 0 ? 1 : -1;
        CHECK(phi_m1 * psi6_minus_one(p) == 1);
    }
}

TEST_CASE("decoded gn values respect the A_p bound") {
    PrimeFieldContext c13(13);
    G3Evaluator g3(c13);
    for (u64 lam = 0; lam < 13; ++lam) {
        if (lam == 1) continue;
        CHECK(std::abs(g3.decode_times_p(lam)) <= 3 * 13);
    }
    PrimeFieldContext c17(17);
    G9Evaluator g9(c17);
    for (u64 lam = 0; lam < 17; ++lam) {
        if (lam == 1) continue;
        CHECK(std::abs(g9.decode(lam)) <= 3 * 17);
    }
}

TEST_CASE("term exponent profiles: 3G3 dips to -1, 9G9 stays nonnegative") {
    for (u64 p : {7ull, 13ull, 199ull}) {
        PrimeFieldContext ctx(p);
        GnEvaluator g3(ctx, g3_parameters(), 3);
        CHECK(g3.min_exponent() == -1);
    }
    for (u64 p : {5ull, 11ull, 197ull}) {
        PrimeFieldContext ctx(p);
        GnEvaluator g9(ctx, g9_parameters(), 3);
        CHECK(g9.min_exponent() == 0);
    }
}

TEST_CASE("one gamma sweep serves every lambda") {
    PrimeFieldContext ctx(13);
    G3Evaluator g3(ctx);
    CHECK(G3Evaluator(ctx).N() == 3);
    GnEvaluator core(ctx, g3_parameters(), 3);
    CHECK(core.gamma_sweeps() == 1);
    // repeated evaluation over the full lambda range reuses the frozen tables
    for (int round = 0; round < 3; ++round) {
        for (u64 lam = 0; lam < 13; ++lam) {
            if (lam != 1) (void)g3.decode_times_p(lam);
        }
    }
}
