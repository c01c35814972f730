"""Asymptotic large sieve main terms and the arithmetic sums A(X), B(X).

Every asymptotic formula here comes with an exact finite evaluation so the two
can be compared in a ``ComparisonReport``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Mapping

import numpy as np

from .arith import (
    CoefficientSystem,
    MultiplicativeWeight,
    UNIT_WEIGHT,
    euler_phi,
    factorize,
    mobius_table,
    primes_up_to,
    zeta_coefficient_system,
)
from .characters import character_average, delta_exact
from .special import SmoothWeight, kernel_F


@dataclass(frozen=True)
class EulerProductValue:
    value: float
    partial_prime_bound: int
    tail_bound: float

    @property
    def lower(self) -> float:
        return self.value * math.exp(-self.tail_bound)


@dataclass(frozen=True)
class ComparisonReport:
    exact: complex
    main_term: complex
    abs_error: float
    rel_error: float
    parameters: dict = field(default_factory=dict)

    @classmethod
    def compare(cls, exact: complex, main_term: complex, **parameters) -> "ComparisonReport":
        err = abs(exact - main_term)
        rel = err / abs(main_term) if main_term != 0 else math.inf
        return cls(exact, main_term, err, rel, dict(parameters))

    @property
    def ratio(self) -> complex:
        return self.exact / self.main_term


def singular_constant(prime_bound: int = 10**6) -> EulerProductValue:
    """prod_{p <= bound} (1 - p^-2 - p^-3) with a bound on |log(omitted tail)|.

    For p >= 3, -log(1 - p^-2 - p^-3) <= 2/p^2, and sum_{n > B} 2/n^2 <= 2/(B - 1).
    """
    if prime_bound < 2:
        raise ValueError("prime_bound must be >= 2")
    p = primes_up_to(prime_bound).astype(float)
    logs = np.log1p(-(p**-2.0) - p**-3.0)
    return EulerProductValue(math.exp(math.fsum(logs)), int(prime_bound), 2.0 / (prime_bound - 1))


def local_factor(p: int) -> float:
    return 1.0 - p**-2.0 - p**-3.0


def r_factor(n: int) -> float:
    """r(n) = phi(n)/n * prod_{p | n} (1 - p^-2 - p^-3)^{-1}."""
    out = 1.0
    for p, _ in factorize(n).factors:
        out *= (1.0 - 1.0 / p) / local_factor(p)
    return out


def r_table(X: int) -> np.ndarray:
    """r(n) for 0 <= n <= X (entry 0 is 0)."""
    return MultiplicativeWeight(lambda p: (1.0 - 1.0 / p) / local_factor(p)).table(X)


def g_N_weight(N: int) -> MultiplicativeWeight:
    """g_N(n) = r(nN)/r(N): r's local factor at p not dividing N, 1 at p | N."""
    primes_N = set(factorize(N).primes())

    def g_prime(p: int) -> float:
        return 1.0 if p in primes_N else (1.0 - 1.0 / p) / local_factor(p)

    return MultiplicativeWeight(g_prime, name=f"g_{N}")


# ----------------------------------------------------------------------------
# Character averages


def delta_diagonal_main(m: int, Q: float, W: SmoothWeight, c: float | None = None) -> ComparisonReport:
    """Delta(m, m) by enumeration against W^(1) Q c r(m)."""
    c = singular_constant().value if c is None else c
    exact = delta_exact(m, m, Q, W)
    main = W.mellin_at_1 * Q * c * r_factor(m)
    return ComparisonReport.compare(exact, main, kind="delta_diagonal", m=m, Q=Q)


def s_N_main(
    coeff_a: Callable[[int], complex] | Mapping[int, complex],
    coeff_b: Callable[[int], complex] | Mapping[int, complex],
    X: float,
    Q: float,
    N: int,
    W: SmoothWeight,
    c: float | None = None,
) -> complex:
    """Diagonal main term W^(1) c Q sum_{n <= X} a_n b_n r(nN)."""
    c = singular_constant().value if c is None else c
    get_a = coeff_a.get if isinstance(coeff_a, Mapping) else coeff_a
    get_b = coeff_b.get if isinstance(coeff_b, Mapping) else coeff_b
    total = 0j
    for n in range(1, int(math.floor(X)) + 1):
        an, bn = get_a(n), get_b(n)
        if an and bn:
            total += an * bn * r_factor(n * N)
    return W.mellin_at_1 * c * Q * total


def moebius_coefficients(lo: int, hi: int) -> dict[int, float]:
    """{m: mu(m)/sqrt(m)} for lo <= m <= hi, zeros dropped."""
    mu = mobius_table(hi)
    return {m: mu[m] / math.sqrt(m) for m in range(lo, hi + 1) if mu[m]}


def als_moebius_corollary(Q: float, X: float, W: SmoothWeight, c: float | None = None) -> ComparisonReport:
    """sum_q W(q/Q)/phi(q) sum*_chi |sum_{m<=X} mu(m) chi(m)/sqrt(m)|^2 vs its diagonal."""
    c = singular_constant().value if c is None else c
    a = moebius_coefficients(1, int(math.floor(X)))
    exact = character_average(a, a, Q, W)
    main = s_N_main(a, a, X, Q, 1, W, c)
    return ComparisonReport.compare(exact, main, kind="moebius_corollary", Q=Q, X=X)


def tail_bilinear(Q: float, X: int, W: SmoothWeight, tail_factor: int = 4) -> complex:
    """S with a_m = mu(m)/sqrt(m), m <= X, and b_n = mu(n)/sqrt(n), X < n <= tail_factor X.

    The supports are disjoint, so S has no diagonal and should be o(Q).
    """
    a = moebius_coefficients(1, X)
    b = moebius_coefficients(X + 1, tail_factor * X)
    return character_average(a, b, Q, W)


# ----------------------------------------------------------------------------
# Problems A and B


def _coefficient_arrays(X: int, cs: CoefficientSystem):
    lam, mu, vm = cs.tables(X)
    return np.asarray(mu, dtype=complex), np.asarray(vm, dtype=complex)


def A_sum(
    X: float,
    g: MultiplicativeWeight = UNIT_WEIGHT,
    cs: CoefficientSystem | None = None,
    beta: complex = 0.0,
) -> complex:
    """sum_{n <= X} |mu_f(n)|^2 g(n) n^{-1-beta}."""
    cs = cs or zeta_coefficient_system()
    X = int(math.floor(X))
    if X < 1:
        return 0j
    mu, _ = _coefficient_arrays(X, cs)
    n = np.arange(1, X + 1, dtype=float)
    terms = np.abs(mu[1:]) ** 2 * g.table(X)[1:] * n ** (-1.0 - beta)
    return complex(np.sum(terms))


def A_slope(X: float, g: MultiplicativeWeight = UNIT_WEIGHT, cs: CoefficientSystem | None = None) -> float:
    """Two-scale slope (A(X) - A(sqrt X)) / log(sqrt X), an estimate of c_f c_fg."""
    X = int(math.floor(X))
    root = int(math.floor(math.sqrt(X)))
    if root < 2:
        raise ValueError("A_slope needs X >= 4")
    cs = cs or zeta_coefficient_system()
    mu, _ = _coefficient_arrays(X, cs)
    n = np.arange(1, X + 1, dtype=float)
    cum = np.cumsum(np.abs(mu[1:]) ** 2 * g.table(X)[1:] / n)
    return float((cum[X - 1] - cum[root - 1]) / (math.log(X) - math.log(root)))


def B_exact(
    X: float,
    g: MultiplicativeWeight = UNIT_WEIGHT,
    cs: CoefficientSystem | None = None,
    alpha: complex = 0.0,
    beta: complex = 0.0,
) -> complex:
    """sum_{mn <= X} conj(mu_f(mn)) mu_f(n) Lambda_f(m) g(mn) m^{-1-alpha} n^{-1-beta}."""
    cs = cs or zeta_coefficient_system()
    X = int(math.floor(X))
    if X < 2:
        return 0j
    mu, vm = _coefficient_arrays(X, cs)
    g_tab = g.table(X)
    support = np.nonzero(vm)[0]
    support = support[support >= 1]
    pw = vm[support] * support.astype(float) ** (-1.0 - alpha)
    conj_mu = np.conj(mu)
    partial = []
    for n in np.nonzero(mu)[0]:
        if n == 0:
            continue
        k = np.searchsorted(support, X // n, side="right")
        if k == 0:
            break
        mn = support[:k] * n
        inner = np.sum(conj_mu[mn] * g_tab[mn] * pw[:k])
        partial.append(mu[n] * float(n) ** (-1.0 - beta) * inner)
    return complex(np.sum(np.array(partial))) if partial else 0j


def B_sum(
    X: float,
    g: MultiplicativeWeight = UNIT_WEIGHT,
    cs: CoefficientSystem | None = None,
    alpha: complex = 0.0,
    beta: complex = 0.0,
    slope: float | None = None,
) -> ComparisonReport:
    """B(X) against -c_f c_fg F(alpha log X, beta log X) log^2 X.

    c_f c_fg is the A-sum slope at the same X unless ``slope`` is given.
    """
    cs = cs or zeta_coefficient_system()
    L = math.log(X)
    if abs(alpha) * L > 10 or abs(beta) * L > 10:
        raise ValueError("need |alpha log X|, |beta log X| <= 10")
    slope = A_slope(X, g, cs) if slope is None else slope
    exact = B_exact(X, g, cs, alpha, beta)
    main = -slope * kernel_F(alpha * L, beta * L) * L**2
    return ComparisonReport.compare(exact, main, kind="B", X=X, alpha=alpha, beta=beta, slope=slope)


def B_normalizing_constant(X: float, g: MultiplicativeWeight = UNIT_WEIGHT, cs=None,
                           alpha: complex = 0.0, beta: complex = 0.0) -> complex:
    """The c_f c_fg that makes B(X) = -c F(alpha log X, beta log X) log^2 X exactly."""
    L = math.log(X)
    return -B_exact(X, g, cs, alpha, beta) / (kernel_F(alpha * L, beta * L) * L**2)
