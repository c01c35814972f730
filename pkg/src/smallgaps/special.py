"""Analytic layer: quadrature, the smooth weight W, the kernel F(a, b),
the gap functionals j_d and j_d^+, their roots mu_d and lambda_d, and h(alpha).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Literal

import numpy as np

# ----------------------------------------------------------------------------
# Quadrature


@lru_cache(maxsize=16)
def _leggauss(order: int) -> tuple[np.ndarray, np.ndarray]:
    return np.polynomial.legendre.leggauss(order)


def gauss_legendre(
    f: Callable[[np.ndarray], np.ndarray], a: float, b: float, panels: int = 8, order: int = 20
) -> float | complex:
    """Composite Gauss-Legendre rule; ``f`` must accept arrays."""
    if a == b:
        return 0.0
    x, w = _leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = mid[:, None] + half[:, None] * x[None, :]
    vals = f(nodes.ravel()).reshape(nodes.shape)
    return (vals * w[None, :]).sum(axis=1) @ half


def adaptive_simpson(
    f: Callable[[float], float], a: float, b: float, tol: float = 1e-13, max_depth: int = 60
) -> float:
    """Adaptive Simpson quadrature with Richardson correction."""

    def simpson(fa, fm, fb, a, b):
        return (b - a) / 6.0 * (fa + 4.0 * fm + fb)

    def recurse(a, b, fa, fm, fb, whole, tol, depth):
        m = 0.5 * (a + b)
        lm, rm = 0.5 * (a + m), 0.5 * (m + b)
        flm, frm = f(lm), f(rm)
        left = simpson(fa, flm, fm, a, m)
        right = simpson(fm, frm, fb, m, b)
        delta = left + right - whole
        if depth <= 0 or abs(delta) <= 15.0 * tol:
            return left + right + delta / 15.0
        return recurse(a, m, fa, flm, fm, left, tol / 2, depth - 1) + recurse(
            m, b, fm, frm, fb, right, tol / 2, depth - 1
        )

    if a == b:
        return 0.0
    # seed with a few panels so narrow features are not missed
    edges = np.linspace(a, b, 9)
    total = 0.0
    for lo, hi in zip(edges[:-1], edges[1:]):
        lo, hi = float(lo), float(hi)
        flo, fhi, fmid = f(lo), f(hi), f(0.5 * (lo + hi))
        total += recurse(lo, hi, flo, fmid, fhi, simpson(flo, fmid, fhi, lo, hi), tol / 8, max_depth)
    return total


# ----------------------------------------------------------------------------
# Smooth weight


@dataclass(frozen=True)
class SmoothWeight:
    """Smooth bump W supported on [1, 2] with W', W'' and W^(1) = int_1^2 W."""

    w: Callable[[np.ndarray], np.ndarray]
    dw: Callable[[np.ndarray], np.ndarray]
    d2w: Callable[[np.ndarray], np.ndarray]
    mellin_at_1: float
    name: str = "W"

    def __call__(self, x):
        return self.w(x)


def _bump_parts(x):
    x = np.asarray(x, dtype=float)
    inside = (x > 1.0) & (x < 2.0)
    u = np.where(inside, (x - 1.0) * (2.0 - x), 1.0)
    return x, inside, u


def _bump(x):
    x, inside, u = _bump_parts(x)
    return np.where(inside, np.exp(-1.0 / u), 0.0)


def _bump_d1(x):
    x, inside, u = _bump_parts(x)
    du = 3.0 - 2.0 * x
    return np.where(inside, np.exp(-1.0 / u) * du / u**2, 0.0)


def _bump_d2(x):
    x, inside, u = _bump_parts(x)
    du = 3.0 - 2.0 * x
    val = np.exp(-1.0 / u) * (du**2 / u**4 - 2.0 / u**2 - 2.0 * du**2 / u**3)
    return np.where(inside, val, 0.0)


@lru_cache(maxsize=1)
def default_weight() -> SmoothWeight:
    """W(x) = exp(-1/((x-1)(2-x))) on (1, 2), zero elsewhere."""
    gl = float(gauss_legendre(_bump, 1.0, 2.0, panels=64, order=24))
    simp = adaptive_simpson(lambda t: float(_bump(t)), 1.0, 2.0, tol=1e-15)
    if abs(gl - simp) > 1e-12:
        raise ArithmeticError(f"quadrature rules disagree on W^(1): {gl} vs {simp}")
    return SmoothWeight(_bump, _bump_d1, _bump_d2, gl, name="exp-bump")


# ----------------------------------------------------------------------------
# The kernel F(a, b) = iint_{u+v<=1, u,v>=0} exp(-a u - b v) du dv


def kernel_F_closed(a: complex, b: complex) -> complex:
    """(a(1-e^{-b}) - b(1-e^{-a})) / (ab(a-b)); singular on ab(a-b) = 0."""
    return (a * (1 - np.exp(-b)) - b * (1 - np.exp(-a))) / (a * b * (a - b))


def kernel_F_series(a: complex, b: complex, terms: int = 80) -> complex:
    """sum_{m>=2} (-1)^m/m! h_{m-2}(a, b), h_k the complete homogeneous polynomial."""
    a, b = complex(a), complex(b)
    total = 0j
    h = 1.0 + 0j  # h_0
    apow = 1.0 + 0j
    fact = 2.0
    for k in range(terms):
        total += (-1) ** k * h / fact
        apow *= a
        h = apow + b * h
        fact *= k + 3
    return total


def _psi(z: complex) -> complex:
    """(1 - e^{-z}) / z, entire."""
    if abs(z) < 0.5:
        total, term = 0j, 1.0 + 0j
        for k in range(1, 25):
            total += term
            term *= -z / (k + 1)
        return total
    return (1 - np.exp(-z)) / z


def _moments(a: complex, kmax: int) -> list[complex]:
    """I_k = int_0^1 t^k e^{-a t} dt for k = 0..kmax."""
    if abs(a) <= 2.0:
        out = []
        for k in range(kmax + 1):
            total, term, j = 0j, 1.0 + 0j, 0
            while True:
                contrib = term / (k + j + 1)
                total += contrib
                if abs(contrib) < 1e-18:
                    break
                j += 1
                term *= -a / j
            out.append(total)
        return out
    ea = np.exp(-a)
    out = [(1 - ea) / a]
    for k in range(1, kmax + 1):
        out.append((k * out[-1] - ea) / a)
    return out


def kernel_F(a: complex, b: complex) -> complex:
    """F(a, b) for any complex a, b, with the removable singularities handled.

    Near the origin the power series is summed; for |a - b| small the divided
    difference F = -(psi(b) - psi(a))/(b - a), psi(z) = (1 - e^{-z})/z, is
    expanded in b - a; elsewhere the divided difference is taken directly.
    """
    a, b = complex(a), complex(b)
    if max(abs(a), abs(b)) <= 1.0:
        return kernel_F_series(a, b, terms=40)
    delta = b - a
    if abs(delta) < 1e-3 * max(1.0, abs(a)):
        # psi^(k)(a) = (-1)^k I_k(a)
        moms = _moments(a, 6)
        total, dpow, fact = 0j, 1.0 + 0j, 1.0
        for k in range(1, 7):
            fact *= k
            total += (-1) ** k * moms[k] * dpow / fact
            dpow *= delta
        return -total
    return (_psi(a) - _psi(b)) / delta


# ----------------------------------------------------------------------------
# Gap functionals


def sinc2_integral(x):
    """int_0^x (sin(pi v)/(pi v))^2 dv; accepts scalars or arrays."""
    xs = np.asarray(x, dtype=float)
    if xs.ndim == 0:
        if xs == 0:
            return 0.0
        panels = max(1, math.ceil(abs(float(xs)) * 4))
        return float(gauss_legendre(lambda v: np.sinc(v) ** 2, 0.0, float(xs), panels=panels, order=20))
    # vectorized: a fixed panel count on [0, x] scaled per entry
    panels = max(1, math.ceil(float(np.max(np.abs(xs), initial=0.0)) * 4))
    nodes, w = _leggauss(20)
    u = (np.arange(panels)[:, None] + 0.5 * (nodes[None, :] + 1)).ravel() / panels
    wu = np.tile(w, panels) / (2 * panels)
    vals = np.sinc(xs[..., None] * u) ** 2
    return xs * (vals @ wu)


def j_small(d: int, mu: float) -> float:
    """mu + 2 int_0^{mu/d} sinc^2(pi v) dv."""
    return mu + 2.0 * sinc2_integral(mu / d)


def j_large(d: int, lam: float) -> float:
    """lam - 2 int_0^{lam/d} sinc^2(pi v) dv."""
    return lam - 2.0 * sinc2_integral(lam / d)


@dataclass(frozen=True)
class GapConstantResult:
    d: int
    kind: Literal["small", "large"]
    value: float
    residual: float
    bracket: tuple[float, float]
    iterations: int


def _bisect(fn: Callable[[float], float], lo: float, hi: float, tol: float, max_iter: int = 200):
    """Bisection for an increasing fn on [lo, hi] until |fn(mid) - 1| <= tol."""
    mid, res = lo, abs(fn(lo) - 1.0)
    for it in range(1, max_iter + 1):
        mid = 0.5 * (lo + hi)
        val = fn(mid) - 1.0
        res = abs(val)
        if res <= tol:
            return mid, res, (lo, hi), it
        if val < 0:
            lo = mid
        else:
            hi = mid
        if hi - lo < 1e-16:
            break
    return mid, res, (lo, hi), max_iter


def solve_mu(d: int, tol: float = 1e-10) -> GapConstantResult:
    """Root of j_d(mu) = 1 in (0, 1); j_d is strictly increasing with j_d' >= 1."""
    if not tol >= 1e-12:
        raise ValueError("tol must be >= 1e-12")
    value, res, br, it = _bisect(lambda m: j_small(d, m), 0.0, 1.0, tol)
    return GapConstantResult(d, "small", value, res, br, it)


def solve_lambda(d: int, tol: float = 1e-10, step: float = 0.01, ceiling: float = 10.0) -> GapConstantResult:
    """Smallest positive root of j_d^+(lam) = 1: forward scan, then bisection."""
    if not tol >= 1e-12:
        raise ValueError("tol must be >= 1e-12")
    lo = 0.0
    while True:
        hi = lo + step
        if hi > ceiling:
            raise RuntimeError(f"no crossing of j_large({d}, .) = 1 below {ceiling}")
        if j_large(d, hi) >= 1.0:
            break
        lo = hi
    value, res, br, it = _bisect(lambda m: j_large(d, m), lo, hi, tol)
    return GapConstantResult(d, "large", value, res, br, it)


def _bisect_array(fn, lo, hi, tol, max_iter=200):
    lo, hi = lo.astype(float).copy(), hi.astype(float).copy()
    mid = 0.5 * (lo + hi)
    res = np.abs(fn(mid, np.arange(lo.size)) - 1.0)
    active = res > tol
    for _ in range(max_iter):
        idx = np.nonzero(active)[0]
        if idx.size == 0:
            break
        val = fn(mid[idx], idx) - 1.0
        lo[idx] = np.where(val < 0, mid[idx], lo[idx])
        hi[idx] = np.where(val < 0, hi[idx], mid[idx])
        mid[idx] = 0.5 * (lo[idx] + hi[idx])
        res[idx] = np.abs(fn(mid[idx], idx) - 1.0)
        active[idx] = (res[idx] > tol) & (hi[idx] - lo[idx] > 1e-16)
    return mid, res


def gap_constant_table(d_max: int, tol: float = 1e-10, step: float = 0.01, chunk: int = 50_000):
    """mu_d and lambda_d for d = 1..d_max with residuals, vectorized over d.

    Same procedure as ``solve_mu`` / ``solve_lambda``: bisection on [0, 1] for
    mu_d; forward scan in ``step`` then bisection for lambda_d.
    """
    if not tol >= 1e-12:
        raise ValueError("tol must be >= 1e-12")
    out = {k: [] for k in ("d", "mu", "mu_res", "lam", "lam_res")}
    for start in range(1, d_max + 1, chunk):
        d = np.arange(start, min(d_max, start + chunk - 1) + 1, dtype=float)
        js = lambda m, i: m + 2.0 * sinc2_integral(m / d[i])
        jl = lambda m, i: m - 2.0 * sinc2_integral(m / d[i])
        mu, mu_res = _bisect_array(js, np.zeros(d.size), np.ones(d.size), tol)
        lo = np.zeros(d.size)
        found = np.zeros(d.size, dtype=bool)
        k = 0
        while not found.all():
            k += 1
            if k * step > 10.0:
                raise RuntimeError("no crossing of j_large = 1 below 10")
            idx = np.nonzero(~found)[0]
            hit = jl(np.full(idx.size, k * step), idx) >= 1.0
            lo[idx[~hit]] = k * step
            found[idx[hit]] = True
        lam, lam_res = _bisect_array(jl, lo, lo + step, tol)
        out["d"].append(d.astype(int))
        out["mu"].append(mu)
        out["mu_res"].append(mu_res)
        out["lam"].append(lam)
        out["lam_res"].append(lam_res)
    return {k: np.concatenate(v) for k, v in out.items()}


def mu_asymptotic(d: int) -> float:
    return 1.0 - 2.0 / d + 4.0 / d**2


def lambda_asymptotic(d: int) -> float:
    return 1.0 + 2.0 / d + 4.0 / d**2


def h_alpha(alpha: float, d: int, logQ: float, logX: float) -> float:
    """(d alpha log Q)/pi + (4/(pi log X)) int_0^alpha sin^2(u log X / 2) du/u^2.

    Equals (1/2pi) int_{-alpha}^{alpha} (d log Q + 2 Re F(iu log X, 0) log X) du.
    """
    if alpha == 0:
        return 0.0
    half = 0.5 * logX
    panels = max(1, math.ceil(abs(alpha) * logX))
    integral = gauss_legendre(
        lambda u: half**2 * np.sinc(u * half / math.pi) ** 2, 0.0, alpha, panels=panels, order=20
    )
    return d * alpha * logQ / math.pi + 4.0 / (math.pi * logX) * float(integral)
