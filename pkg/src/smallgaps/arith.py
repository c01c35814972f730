"""Integer arithmetic and multiplicative functions.

Factorization, the classical Moebius / Euler phi / von Mangoldt functions
(both pointwise and as numpy sieve tables), the coefficient system of an
L-function (lambda_f, mu_f, Lambda_f) and multiplicative weights g(n).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Callable, NamedTuple

import numpy as np

_TRIAL_LIMIT = 10**6


class Factorization(NamedTuple):
    n: int
    factors: tuple[tuple[int, int], ...]

    def primes(self) -> tuple[int, ...]:
        return tuple(p for p, _ in self.factors)

    def value(self) -> int:
        out = 1
        for p, e in self.factors:
            out *= p**e
        return out


# ----------------------------------------------------------------------------
# Sieves


@lru_cache(maxsize=8)
def _prime_flags(n: int) -> np.ndarray:
    flags = np.ones(n + 1, dtype=bool)
    flags[:2] = False
    for p in range(2, math.isqrt(n) + 1):
        if flags[p]:
            flags[p * p :: p] = False
    flags.setflags(write=False)
    return flags


def primes_up_to(n: int) -> np.ndarray:
    """All primes p <= n as an int64 array."""
    if n < 2:
        return np.zeros(0, dtype=np.int64)
    return np.nonzero(_prime_flags(int(n)))[0].astype(np.int64)


def mobius_table(n: int) -> np.ndarray:
    """mu(k) for 0 <= k <= n (entry 0 is 0)."""
    mu = np.ones(n + 1, dtype=np.int64)
    mu[0] = 0
    for p in primes_up_to(n):
        mu[p::p] *= -1
        if p * p <= n:
            mu[p * p :: p * p] = 0
    return mu


def phi_table(n: int) -> np.ndarray:
    """phi(k) for 0 <= k <= n (entry 0 is 0)."""
    phi = np.arange(n + 1, dtype=np.int64)
    for p in primes_up_to(n):
        phi[p::p] -= phi[p::p] // p
    return phi


def von_mangoldt_table(n: int) -> np.ndarray:
    """Lambda(k) for 0 <= k <= n as floats."""
    lam = np.zeros(n + 1)
    for p in primes_up_to(n):
        lp = math.log(p)
        pk = p
        while pk <= n:
            lam[pk] = lp
            pk *= p
    return lam


def prime_power_table(n: int) -> list[tuple[int, int, int]]:
    """Sorted (p^k, p, k) for all prime powers p^k <= n."""
    out = []
    for p in primes_up_to(n):
        p = int(p)
        pk, k = p, 1
        while pk <= n:
            out.append((pk, p, k))
            pk *= p
            k += 1
    out.sort()
    return out


# ----------------------------------------------------------------------------
# Factorization


def is_probable_prime(n: int) -> bool:
    """Miller-Rabin with the first 12 prime bases (deterministic below 3.3e24)."""
    if n < 2:
        return False
    small = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)
    for p in small:
        if n % p == 0:
            return n == p
    d, r = n - 1, 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in small:
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _pollard_brent(n: int) -> int:
    if n % 2 == 0:
        return 2
    # deterministic sequence of polynomial constants keeps factorize reproducible
    for c in range(1, 200):
        y, m, g, r, q = 2, 128, 1, 1, 1
        x = ys = y
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise ArithmeticError(f"Pollard rho failed on {n}")


def _split(n: int, out: dict[int, int]) -> None:
    if n == 1:
        return
    if is_probable_prime(n):
        out[n] = out.get(n, 0) + 1
        return
    f = _pollard_brent(n)
    _split(f, out)
    _split(n // f, out)


def factorize(n: int) -> Factorization:
    """Prime factorization by trial division up to 1e6, Pollard-Brent beyond."""
    n = int(n)
    if n < 1:
        raise ValueError(f"factorize needs n >= 1, got {n}")
    found: dict[int, int] = {}
    m = n
    for p in primes_up_to(min(_TRIAL_LIMIT, math.isqrt(m) + 1)):
        p = int(p)
        if p * p > m:
            break
        if m % p == 0:
            e = 0
            while m % p == 0:
                m //= p
                e += 1
            found[p] = e
    if m > 1:
        if m < _TRIAL_LIMIT**2:
            found[m] = found.get(m, 0) + 1
        else:
            _split(m, found)
    return Factorization(n, tuple(sorted(found.items())))


def moebius(n: int) -> int:
    fac = factorize(n)
    if any(e > 1 for _, e in fac.factors):
        return 0
    return -1 if len(fac.factors) % 2 else 1


def euler_phi(n: int) -> int:
    out = 1
    for p, e in factorize(n).factors:
        out *= (p - 1) * p ** (e - 1)
    return out


def von_mangoldt(n: int) -> float:
    fac = factorize(n).factors
    return math.log(fac[0][0]) if len(fac) == 1 else 0.0


def divisors(n: int) -> list[int]:
    divs = [1]
    for p, e in factorize(n).factors:
        divs = [d * p**k for d in divs for k in range(e + 1)]
    return sorted(divs)


# ----------------------------------------------------------------------------
# Coefficient systems


@dataclass(frozen=True)
class CoefficientSystem:
    """Dirichlet coefficients of a primitive L-function L_f(s).

    ``lam``, ``mu`` and ``von_mangoldt`` give lambda_f(n), the coefficients of
    1/L_f(s) and those of -L_f'/L_f(s). ``table_fn``, when present, returns the
    three streams as arrays indexed 0..X (entry 0 unused) and is used by the
    summation routines in place of pointwise calls.
    """

    degree: int
    level: int
    lam: Callable[[int], complex]
    mu: Callable[[int], complex]
    von_mangoldt: Callable[[int], complex]
    name: str = "custom"
    table_fn: Callable[[int], tuple[np.ndarray, np.ndarray, np.ndarray]] | None = field(
        default=None, repr=False, compare=False
    )

    def tables(self, X: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        X = int(X)
        if self.table_fn is not None:
            return self.table_fn(X)
        lam = np.zeros(X + 1, dtype=complex)
        mu = np.zeros(X + 1, dtype=complex)
        vm = np.zeros(X + 1, dtype=complex)
        for n in range(1, X + 1):
            lam[n], mu[n], vm[n] = self.lam(n), self.mu(n), self.von_mangoldt(n)
        return lam, mu, vm

    def validate(self, X: int, tol: float = 1e-10) -> None:
        """Check the structural identities up to X; raise ValueError on failure.

        lambda * mu = [n=1], Lambda = mu * (lambda log), mu(p^a) = 0 for a > d,
        Lambda supported on prime powers, mu(p) = -lambda(p).
        """
        lam, mu, vm = (np.asarray(t, dtype=complex) for t in self.tables(X))
        conv = np.zeros(X + 1, dtype=complex)
        lamlog = lam * np.log(np.maximum(np.arange(X + 1), 1))
        conv_log = np.zeros(X + 1, dtype=complex)
        for a in range(1, X + 1):
            conv[a::a] += lam[a] * mu[1 : X // a + 1]
            conv_log[a::a] += mu[a] * lamlog[1 : X // a + 1]
        unit = np.zeros(X + 1)
        unit[1] = 1.0
        if np.max(np.abs(conv[1:] - unit[1:])) > tol:
            raise ValueError("mu is not the Dirichlet inverse of lambda")
        if np.max(np.abs(conv_log[1:] - vm[1:])) > tol * max(1.0, math.log(X)):
            raise ValueError("von_mangoldt differs from mu * (lambda log)")
        is_pp = np.zeros(X + 1, dtype=bool)
        for pk, p, k in prime_power_table(X):
            is_pp[pk] = True
            if k > self.degree and abs(mu[pk]) > tol:
                raise ValueError(f"mu({p}^{k}) nonzero beyond degree {self.degree}")
            if k == 1 and abs(mu[p] + lam[p]) > tol:
                raise ValueError(f"mu({p}) != -lambda({p})")
        if np.any(np.abs(vm[~is_pp][1:]) > tol):
            raise ValueError("von_mangoldt not supported on prime powers")


def _zeta_tables(X: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    lam = np.ones(X + 1)
    lam[0] = 0.0
    return lam, mobius_table(X).astype(float), von_mangoldt_table(X)


@lru_cache(maxsize=1)
def zeta_coefficient_system() -> CoefficientSystem:
    """The Riemann zeta function: d = N = 1, lambda = 1."""
    return CoefficientSystem(
        degree=1,
        level=1,
        lam=lambda n: 1,
        mu=moebius,
        von_mangoldt=von_mangoldt,
        name="zeta",
        table_fn=_zeta_tables,
    )


def coefficient_system_from_streams(
    degree: int,
    level: int,
    lam: Callable[[int], complex],
    mu: Callable[[int], complex],
    von_mangoldt: Callable[[int], complex],
    check_up_to: int = 1000,
    name: str = "custom",
) -> CoefficientSystem:
    """Wrap user-supplied coefficient streams, validated up to ``check_up_to``."""
    cs = CoefficientSystem(degree, level, lam, mu, von_mangoldt, name=name)
    cs.validate(check_up_to)
    return cs


def mertens_residual(x: float, cs: CoefficientSystem | None = None) -> float:
    """sum_{p <= x} |lambda_f(p)|^2 log(p)/p - log x."""
    cs = cs or zeta_coefficient_system()
    ps = primes_up_to(int(math.floor(x)))
    if cs.table_fn is not None:
        lam = cs.tables(int(math.floor(x)))[0][ps]
    else:
        lam = np.array([cs.lam(int(p)) for p in ps], dtype=complex)
    return float(np.sum(np.abs(lam) ** 2 * np.log(ps) / ps) - math.log(x))


# ----------------------------------------------------------------------------
# Multiplicative weights


@dataclass(frozen=True)
class MultiplicativeWeight:
    """g(n) = prod_{p | n} g(p); depends on n only through its radical."""

    g_prime: Callable[[int], float]
    name: str = "g"

    def __call__(self, n: int) -> float:
        out = 1.0
        for p in factorize(n).primes():
            out *= self.g_prime(p)
        return out

    def table(self, X: int) -> np.ndarray:
        """g(k) for 0 <= k <= X (entry 0 is 0)."""
        g = np.ones(X + 1)
        g[0] = 0.0
        for p in primes_up_to(X):
            g[p::p] *= self.g_prime(int(p))
        return g


UNIT_WEIGHT = MultiplicativeWeight(lambda p: 1.0, name="one")
