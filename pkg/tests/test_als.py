import math

import numpy as np
import pytest
import sympy

from smallgaps.als import (
    A_slope,
    A_sum,
    B_exact,
    B_normalizing_constant,
    B_sum,
    als_moebius_corollary,
    delta_diagonal_main,
    g_N_weight,
    moebius_coefficients,
    r_factor,
    r_table,
    s_N_main,
    singular_constant,
    tail_bilinear,
)
from smallgaps.arith import UNIT_WEIGHT, MultiplicativeWeight
from smallgaps.special import default_weight, kernel_F

W = default_weight()


def test_singular_constant_and_tail_bound():
    a = singular_constant(10**5)
    b = singular_constant(10**6)
    assert abs(math.log(a.value) - math.log(b.value)) <= a.tail_bound
    assert b.value == pytest.approx(0.4791453, abs=2e-7)
    assert b.lower <= b.value
    with pytest.raises(ValueError):
        singular_constant(1)


def test_singular_constant_direct_product():
    direct = 1.0
    for p in sympy.primerange(2, 10**4 + 1):
        direct *= 1 - p**-2 - p**-3
    assert singular_constant(10**4).value == pytest.approx(direct, rel=1e-13)


def test_r_factor():
    for n in range(1, 400):
        expect = sympy.totient(n) / n
        for p in sympy.primefactors(n):
            expect /= 1 - p**-2 - p**-3
        assert r_factor(n) == pytest.approx(float(expect), rel=1e-14)
    assert np.allclose(r_table(400)[1:], [r_factor(n) for n in range(1, 401)], rtol=1e-14)


def test_g_N_is_ratio_of_r():
    for N in (1, 6, 35):
        g = g_N_weight(N)
        for n in range(1, 200):
            assert g(n) == pytest.approx(r_factor(n * N) / r_factor(N), rel=1e-13)


def test_delta_diagonal_main_m1():
    rep = delta_diagonal_main(1, 100, W)
    assert rep.rel_error <= 0.1
    assert rep.exact.imag == 0 or abs(rep.exact.imag) < 1e-13


def test_delta_diagonal_radical_dependence():
    # Delta(m, m) and its main term only see the primes of m
    for Q in (50, 100):
        assert delta_diagonal_main(2, Q, W).exact == pytest.approx(delta_diagonal_main(8, Q, W).exact, abs=1e-14)
        assert delta_diagonal_main(3, Q, W).main_term == pytest.approx(delta_diagonal_main(9, Q, W).main_term)


def test_s_N_main_forms():
    a = moebius_coefficients(1, 30)
    via_map = s_N_main(a, a, 30, 50, 1, W)
    via_fn = s_N_main(lambda n: a.get(n, 0), lambda n: a.get(n, 0), 30, 50, 1, W)
    assert via_map == pytest.approx(via_fn)


def test_corollary_decay():
    r60 = als_moebius_corollary(60, 60, W)
    r120 = als_moebius_corollary(120, 60, W)
    assert r60.rel_error <= 0.15
    assert r120.rel_error < r60.rel_error


def test_tail_has_no_diagonal():
    S = tail_bilinear(60, 30, W)
    main = als_moebius_corollary(60, 30, W).main_term
    assert abs(S) < 0.05 * abs(main)


def brute_A(X, g):
    return sum(sympy.mobius(n) ** 2 * g(n) / n for n in range(1, X + 1))


def brute_B(X, g, alpha, beta):
    total = 0.0
    for m in range(2, X + 1):
        f = sympy.factorint(m)
        if len(f) != 1:
            continue
        lam = math.log(next(iter(f)))
        for n in range(1, X // m + 1):
            mu_mn = sympy.mobius(m * n)
            if mu_mn:
                total += mu_mn * sympy.mobius(n) * lam * g(m * n) * m ** (-1 - alpha) * n ** (-1 - beta)
    return total


def test_A_sum_brute():
    g = g_N_weight(1)
    assert A_sum(3000, g).real == pytest.approx(float(brute_A(3000, g)), rel=1e-12)
    assert A_sum(3000).real == pytest.approx(float(brute_A(3000, UNIT_WEIGHT)), rel=1e-12)


def test_B_exact_brute():
    g = MultiplicativeWeight(lambda p: 1 - 1 / p)
    for alpha, beta in ((0, 0), (0.1, -0.2)):
        assert B_exact(1500, g, alpha=alpha, beta=beta).real == pytest.approx(brute_B(1500, g, alpha, beta), rel=1e-11)


def test_A_slope_at_1e6():
    assert abs(A_slope(10**6) / (6 / math.pi**2) - 1) < 0.02


def test_B_against_main_term():
    X = 10**5
    L = math.log(X)
    slope = A_slope(X)
    for alpha in (0, 1 / L):
        for beta in (0, 1 / L):
            rep = B_sum(X, alpha=alpha, beta=beta, slope=slope)
            assert abs(rep.ratio - 1) < 0.15


def test_B_main_term_at_origin_uses_half():
    rep = B_sum(10**4, slope=1.0)
    assert rep.main_term == pytest.approx(-0.5 * math.log(10**4) ** 2)
    assert kernel_F(0, 0) == 0.5


def test_B_normalizing_constant():
    X = 10**4
    c = B_normalizing_constant(X)
    rep = B_sum(X, slope=c.real)
    assert rep.abs_error < 1e-9 * abs(rep.exact)


def test_B_sum_range_check():
    with pytest.raises(ValueError):
        B_sum(100, alpha=3.0)


def test_delta_diagonal_median_shrinks():
    med = [np.median([delta_diagonal_main(m, Q, W).rel_error for m in range(1, 11)]) for Q in (100, 200)]
    assert med[1] < med[0]
