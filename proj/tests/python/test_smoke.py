import math

import pytest

import _xlambda as xl


@pytest.fixture(scope="module")
def ctx5():
    return xl.Context(5)


def test_context_rejects_non_primes():
    with pytest.raises(Exception):
        xl.Context(9)
    with pytest.raises(Exception):
        xl.Context(3)


def test_quadratic_character(ctx5):
    c7 = xl.Context(7)
    assert c7.quadratic_char(2) == 1
    assert c7.quadratic_char(3) == -1
    assert ctx5.quadratic_char(0) == 0


def test_traces(ctx5):
    assert xl.legendre_trace(ctx5, 2) == -2
    assert xl.surface_A_direct(ctx5, 1) == -1
    assert [xl.surface_A_fast(ctx5, l) for l in range(1, 5)] == [-1, 0, 1, 1]
    assert xl.surface_A_table(ctx5) == [-1, 0, 1, 1]


def test_c_p_modes(ctx5):
    assert [xl.c_p(ctx5, a, "padic") for a in range(5)] == [0, 0, -20, 60, -60]
    z = xl.c_p(ctx5, 2, "numeric")
    assert abs(z - (-20)) < 1e-8
    assert xl.c_p(ctx5, 1, "via_surface") == 0
    with pytest.raises(Exception):
        xl.c_p(ctx5, 0, "via_surface")


def test_gauss_and_greene(ctx5):
    g = xl.gauss_sum(ctx5, 0)
    assert abs(g - (-1)) < 1e-10
    gphi = xl.gauss_sum(ctx5, 2)
    assert abs(gphi - math.sqrt(5)) < 1e-10
    f = xl.greene_2f1(ctx5, 2)
    # trace relation: p * 2F1 = -phi(-1) a_leg
    assert abs(5 * f.real - 2) < 1e-8


def test_gamma_and_teichmuller():
    assert xl.gamma_p(5, 3, 3) == 125 - 2  # Gamma_5(3) = -2
    assert xl.gamma_p(5, 3, 1, 2) == 68    # Gamma_5(1/2)
    assert xl.teichmuller(5, 2, 2) == 7


def test_gn_values():
    c7 = xl.Context(7)
    assert [xl.g3_times_p(c7, l) for l in [0, 2, 3, 4, 5, 6]] == [0, 9, -3, 9, -3, 0]
    c11 = xl.Context(11)
    assert [xl.g9_value(c11, l) for l in range(2, 11)] == [-7, -11, -11, 5, -7, 5, 5, 5, 14]


def test_moments_and_distribution():
    assert [xl.catalan_moment_coef(m) for m in range(5)] == [1, 0, 1, -1, 3]
    ctx = xl.Context(199)
    rep = xl.empirical_moments(ctx, 2)
    assert rep["targets"] == [0, 1]
    assert abs(rep["normalized"][1] - 1.0) < 0.5
    d = xl.distribution(ctx, bins=20)
    assert sum(b["count"] for b in d["bins"]) == 198
    assert d["winner"] in ("a", "b")
    assert abs(xl.model_cdf("a", 3.0) - 1.0) < 1e-6


def test_verify_runs_clean():
    rows = xl.verify("5,7", suite="floors")
    assert all(r["failures"] == 0 for r in rows)
