"""Dirichlet L-functions on the critical line: evaluation, zeros, gaps and
the exact mean values M and M(alpha) of |H_X(1/2 + it, chi)|^2.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from functools import lru_cache
from typing import Iterable, Literal

import numpy as np
from scipy.special import bernoulli, digamma, loggamma

from .als import A_slope, ComparisonReport, g_N_weight, r_factor, singular_constant
from .arith import CoefficientSystem, euler_phi, zeta_coefficient_system
from .characters import (
    DirichletCharacter,
    character_group,
    moduli_in_support,
    primitive_count,
    root_number,
)
from .special import SmoothWeight, _leggauss

_BERNOULLI_TERMS = 10
_B2J = np.array([float(b) for b in bernoulli(2 * _BERNOULLI_TERMS)[2::2]])
_FACT2J = np.array([math.factorial(2 * j) for j in range(1, _BERNOULLI_TERMS + 1)], dtype=float)
ZERO_HALFWIDTH = 1e-6


# ----------------------------------------------------------------------------
# Hurwitz zeta and L(s, chi)


def hurwitz_zeta(s, a):
    """zeta(s, a) = sum_{k>=0} (k + a)^{-s} by Euler-Maclaurin.

    Broadcasts over s (complex) and a (real, 0 < a <= 1). Uses
    N = max(20, 2 max|Im s|) direct terms and Bernoulli corrections through B_20.
    """
    s = np.asarray(s, dtype=complex)
    a = np.asarray(a, dtype=float)
    s, a = np.broadcast_arrays(s, a)
    if np.any(s == 1):
        raise ValueError("zeta(s, a) has a pole at s = 1")
    if np.any((a <= 0) | (a > 1)):
        raise ValueError("need 0 < a <= 1")
    N = max(20, int(math.ceil(2 * np.max(np.abs(s.imag), initial=0.0))) + 1)
    head = np.zeros(s.shape, dtype=complex)
    for k in range(N):
        head += np.exp(-s * np.log(k + a))
    x = N + a
    logx = np.log(x)
    tail = np.exp((1 - s) * logx) / (s - 1) + 0.5 * np.exp(-s * logx)
    rising = s.copy()  # s (s+1) ... (s + 2j - 2)
    power = np.exp(-(s + 1) * logx)  # x^{-s-2j+1}
    inv_x2 = 1.0 / (x * x)
    for j in range(_BERNOULLI_TERMS):
        tail += _B2J[j] / _FACT2J[j] * rising * power
        rising = rising * (s + 2 * j + 1) * (s + 2 * j + 2)
        power = power * inv_x2
    out = head + tail
    return out if out.ndim else complex(out)


def _unit_residues(q: int) -> tuple[np.ndarray, np.ndarray]:
    """Residues r in [1, q] coprime to q and the shifts a = r/q."""
    rs = np.array([r for r in range(1, q + 1) if math.gcd(r, q) == 1], dtype=np.int64)
    return rs, rs / q


def _hurwitz_block(q: int, s: np.ndarray) -> np.ndarray:
    """q^{-s} zeta(s, r/q) for units r (rows) and the points s (columns)."""
    rs, a = _unit_residues(q)
    hz = hurwitz_zeta(s[None, :], a[:, None])
    return hz * np.exp(-s * math.log(q))[None, :]


def _characters_on_units(chars: list[DirichletCharacter]) -> np.ndarray:
    q = chars[0].modulus
    rs, _ = _unit_residues(q)
    return np.array([c.values[rs % q] for c in chars])


def dirichlet_L(s, chi: DirichletCharacter):
    """L(s, chi) = q^{-s} sum_{a=1}^{q} chi(a) zeta(s, a/q)."""
    s_arr = np.atleast_1d(np.asarray(s, dtype=complex))
    q = chi.modulus
    if np.any(s_arr == 1):
        if chi.is_principal:
            raise ValueError("L(s, chi_0) has a pole at s = 1")
        rs, a = _unit_residues(q)
        at_one = -np.sum(chi.values[rs % q] * digamma(a)) / q
        out = np.empty(s_arr.shape, dtype=complex)
        mask = s_arr == 1
        out[mask] = at_one
        if np.any(~mask):
            out[~mask] = dirichlet_L(s_arr[~mask], chi)
    else:
        rs, _ = _unit_residues(q)
        out = chi.values[rs % q] @ _hurwitz_block(q, s_arr)
    return out if np.ndim(s) else complex(out[0])


def completed_L(s, chi: DirichletCharacter):
    """Lambda(s, chi) = (q/pi)^{(s+a)/2} Gamma((s+a)/2) L(s, chi)."""
    s = np.asarray(s, dtype=complex)
    z = (s + chi.parity) / 2
    return np.exp(z * math.log(chi.modulus / math.pi) + loggamma(z)) * dirichlet_L(s, chi)


def theta(t, q: int, parity: int):
    """Smooth phase (t/2) log(q/pi) + Im log Gamma((1/2 + a + it)/2)."""
    t = np.asarray(t, dtype=float)
    return 0.5 * t * math.log(q / math.pi) + loggamma((0.5 + parity + 1j * t) / 2).imag


def _require_primitive(chi: DirichletCharacter) -> None:
    if not chi.primitive:
        raise ValueError(f"{chi!r} is not primitive")


def rotated_L(t, chi: DirichletCharacter):
    """e^{i theta_chi(t)} L(1/2 + it, chi); real for primitive chi."""
    _require_primitive(chi)
    eps = root_number(chi)
    phase = theta(t, chi.modulus, chi.parity) - 0.5 * np.angle(eps)
    return np.exp(1j * phase) * dirichlet_L(0.5 + 1j * np.asarray(t, dtype=float), chi)


def hardy_Z(t, chi: DirichletCharacter):
    """Real-valued Z(t) with |Z(t)| = |L(1/2 + it, chi)|."""
    return np.real(rotated_L(t, chi))


def _hardy_Z_block(q: int, chars: list[DirichletCharacter], t: np.ndarray) -> np.ndarray:
    """Z(t) for several primitive characters mod q sharing one Hurwitz evaluation."""
    block = _hurwitz_block(q, 0.5 + 1j * t)
    vals = _characters_on_units(chars) @ block
    out = np.empty((len(chars), t.size))
    for i, chi in enumerate(chars):
        phase = theta(t, q, chi.parity) - 0.5 * np.angle(root_number(chi))
        out[i] = np.real(np.exp(1j * phase) * vals[i])
    return out


# ----------------------------------------------------------------------------
# Zero ledgers


def expected_zero_count(q: int, parity: int, t_min: float, t_max: float) -> float:
    """(theta(t_max) - theta(t_min))/pi, plus 1 for zeta's pole when 0 is in the window."""
    n = float(theta(t_max, q, parity) - theta(t_min, q, parity)) / math.pi
    if q == 1 and t_min <= 0 < t_max:
        n += 1.0
    return n


@dataclass
class ZeroLedger:
    q: int
    chi_index: int
    t_min: float
    t_max: float
    ordinates: np.ndarray
    halfwidths: np.ndarray
    expected_count: float
    allowance: float = 3.0

    @property
    def count(self) -> int:
        return int(self.ordinates.size)

    @property
    def discrepancy(self) -> float:
        return self.count - self.expected_count

    def to_dict(self) -> dict:
        return {
            "q": self.q,
            "chi_index": self.chi_index,
            "t_min": self.t_min,
            "t_max": self.t_max,
            "zeros": [
                {"gamma": float(g), "halfwidth": float(h)}
                for g, h in zip(self.ordinates, self.halfwidths)
            ],
            "expected_count": self.expected_count,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), ensure_ascii=False)

    @classmethod
    def from_dict(cls, d: dict) -> "ZeroLedger":
        zs = d["zeros"]
        return cls(
            q=int(d["q"]),
            chi_index=int(d["chi_index"]),
            t_min=float(d["t_min"]),
            t_max=float(d["t_max"]),
            ordinates=np.array([z["gamma"] for z in zs], dtype=float),
            halfwidths=np.array([z["halfwidth"] for z in zs], dtype=float),
            expected_count=float(d["expected_count"]),
        )

    @classmethod
    def from_json(cls, text: str) -> "ZeroLedger":
        return cls.from_dict(json.loads(text))


def _refine(q, chars, lo, hi, zlo, which):
    """Vectorized bisection of sign changes down to ZERO_HALFWIDTH."""
    while np.any(0.5 * (hi - lo) > ZERO_HALFWIDTH):
        mid = 0.5 * (lo + hi)
        zmid = np.empty_like(mid)
        for i in np.unique(which):
            sel = which == i
            zmid[sel] = _hardy_Z_block(q, [chars[i]], mid[sel])[0]
        left = np.sign(zmid) == np.sign(zlo)
        lo = np.where(left, mid, lo)
        zlo = np.where(left, zmid, zlo)
        hi = np.where(left, hi, mid)
    return lo, hi


def scan_characters(
    chars: list[DirichletCharacter], t_min: float, t_max: float, step: float = 0.05
) -> list[ZeroLedger]:
    """Zero ledgers for primitive characters sharing one modulus."""
    if not chars:
        return []
    if step > 0.05:
        raise ValueError("step must be <= 0.05")
    if t_max - t_min > 1000:
        raise ValueError("window wider than 1000")
    q = chars[0].modulus
    for c in chars:
        _require_primitive(c)
        if c.modulus != q:
            raise ValueError("characters must share a modulus")
    if t_max <= t_min:
        grid = np.array([t_min])
    else:
        n = int(math.ceil((t_max - t_min) / step))
        grid = np.linspace(t_min, t_max, n + 1)
    Z = _hardy_Z_block(q, chars, grid)
    ledgers = []
    rows, cols = np.nonzero(Z[:, :-1] * Z[:, 1:] < 0)
    lo, hi = grid[cols], grid[cols + 1]
    if rows.size:
        lo, hi = _refine(q, chars, lo.copy(), hi.copy(), Z[rows, cols], rows)
    for i, chi in enumerate(chars):
        sel = rows == i
        gam = 0.5 * (lo[sel] + hi[sel])
        hw = 0.5 * (hi[sel] - lo[sel])
        exact_hits = grid[Z[i] == 0.0]
        if exact_hits.size:
            gam = np.concatenate([gam, exact_hits])
            hw = np.concatenate([hw, np.zeros(exact_hits.size)])
        order = np.argsort(gam, kind="stable")
        ledgers.append(
            ZeroLedger(
                q=q,
                chi_index=chi.index,
                t_min=float(t_min),
                t_max=float(t_max),
                ordinates=gam[order],
                halfwidths=hw[order],
                expected_count=expected_zero_count(q, chi.parity, t_min, t_max),
            )
        )
    return ledgers


def scan_zeros(chi: DirichletCharacter, t_min: float, t_max: float, step: float = 0.05) -> ZeroLedger:
    """Sign changes of Z(t) on [t_min, t_max], bisected to half-width 1e-6."""
    return scan_characters([chi], t_min, t_max, step)[0]


def scan_modulus(q: int, t_min: float, t_max: float, step: float = 0.05) -> list[ZeroLedger]:
    """Zero ledgers for every primitive character mod q, in index order."""
    return scan_characters(list(character_group(q).primitive), t_min, t_max, step)


# ----------------------------------------------------------------------------
# Gap statistics


@dataclass(frozen=True)
class GapStatistics:
    gaps: np.ndarray
    raw_gaps: np.ndarray
    lower: np.ndarray
    upper: np.ndarray
    mode: str

    @property
    def minimum(self) -> float:
        return float(np.min(self.gaps))

    @property
    def mean(self) -> float:
        return float(np.mean(self.gaps))


def local_density(q: int, t) -> np.ndarray:
    """log(q(|t| + 3)/2pi)/2pi zeros per unit height."""
    return np.log(q * (np.abs(np.asarray(t, dtype=float)) + 3) / (2 * math.pi)) / (2 * math.pi)


def gap_statistics(
    ledger: ZeroLedger, mode: Literal["global", "local"] = "local", d: int = 1, Q: float | None = None
) -> GapStatistics:
    """Consecutive gaps scaled by d log Q/2pi (global) or by the local density."""
    g = np.asarray(ledger.ordinates, dtype=float)
    if g.size < 2:
        raise ValueError("need at least two ordinates")
    raw = np.diff(g)
    if mode == "global":
        Q = ledger.q if Q is None else Q
        scaled = raw * d * math.log(Q) / (2 * math.pi)
    elif mode == "local":
        scaled = raw * local_density(ledger.q, 0.5 * (g[1:] + g[:-1]))
    else:
        raise ValueError(f"unknown normalization mode {mode!r}")
    return GapStatistics(scaled, raw, g[:-1], g[1:], mode)


def pooled_gap_mean(ledgers: Iterable[ZeroLedger], mode: str = "local") -> float:
    gaps = [gap_statistics(l, mode).gaps for l in ledgers if l.count >= 2]
    return float(np.mean(np.concatenate(gaps)))


# ----------------------------------------------------------------------------
# The mean values M and M(alpha)


def _mollifier_fold(X: int, q: int, t: np.ndarray, cs: CoefficientSystem) -> np.ndarray:
    """F[r, j] = sum_{n <= X, n = r mod q} mu_f(n) n^{-1/2 - i t_j}."""
    _, mu, _ = cs.tables(X)
    n = np.arange(1, X + 1)
    c = np.asarray(mu[1:], dtype=complex) / np.sqrt(n)
    keep = c != 0
    n, c = n[keep], c[keep]
    terms = c[:, None] * np.exp(-1j * np.outer(np.log(n), t))
    out = np.zeros((q, t.size), dtype=complex)
    np.add.at(out, n % q, terms)
    return out


def _gl_nodes(a: float, b: float, panels: int, order: int = 24) -> tuple[np.ndarray, np.ndarray]:
    x, w = _leggauss(order)
    edges = np.linspace(a, b, panels + 1)
    half = 0.5 * np.diff(edges)
    mid = 0.5 * (edges[1:] + edges[:-1])
    nodes = (mid[:, None] + half[:, None] * x[None, :]).ravel()
    weights = (half[:, None] * w[None, :]).ravel()
    return nodes, weights


def mollifier_values(q: int, X: int, t: np.ndarray, cs: CoefficientSystem | None = None) -> np.ndarray:
    """H_X(1/2 + it, chi) for all primitive chi mod q (rows) at points t (columns)."""
    cs = cs or zeta_coefficient_system()
    V = character_group(q).value_matrix(primitive_only=True)
    return V @ _mollifier_fold(int(X), q, np.asarray(t, dtype=float), cs)


def _m_panels(X: int) -> int:
    return max(2, int(math.ceil(math.log(max(X, 2)))))


def exact_M_value(Q: float, X: float, W: SmoothWeight, cs: CoefficientSystem | None = None) -> float:
    """sum_{(q,N)=1} W(q/Q)/phi(q) sum*_chi int_0^1 |H_X(1/2 + it, chi)|^2 dt."""
    cs = cs or zeta_coefficient_system()
    X = int(math.floor(X))
    t, w = _gl_nodes(0.0, 1.0, _m_panels(X))
    terms = []
    for q in moduli_in_support(Q, cs.level):
        wq = float(W(q / Q))
        if wq == 0.0 or not character_group(q).primitive:
            continue
        H = mollifier_values(q, X, t, cs)
        terms.append(wq / euler_phi(q) * float(np.sum(np.abs(H) ** 2 @ w)))
    return math.fsum(terms)


def M_main_term(Q: float, X: float, W: SmoothWeight, cs: CoefficientSystem | None = None,
                slope_X: int = 10**6) -> float:
    """c W^(1) r(N) Q c_f c_{f g_N} log X, with c_f c_{f g_N} from the A-sum slope."""
    cs = cs or zeta_coefficient_system()
    N = cs.level
    cc = A_slope(slope_X, g_N_weight(N), cs)
    return singular_constant().value * W.mellin_at_1 * r_factor(N) * Q * cc * math.log(X)


def exact_M(Q: float, X: float, W: SmoothWeight, cs: CoefficientSystem | None = None,
            slope_X: int = 10**6) -> ComparisonReport:
    """Exact M by enumeration and t-quadrature against its main term."""
    exact = exact_M_value(Q, X, W, cs)
    main = M_main_term(Q, X, W, cs, slope_X) if X > 1 else float("nan")
    return ComparisonReport.compare(exact, main, kind="M", Q=Q, X=X)


@dataclass(frozen=True)
class CharacterWindowTerm:
    """One character's share of M(alpha)."""

    q: int
    chi_index: int
    weight: float  # W(q/Q)/phi(q)
    zeros: tuple[float, ...]
    windows_integral: float  # sum over zeros of the clipped-window integrals
    full_integral: float  # int_0^1 |H|^2


def exact_M_alpha_terms(
    Q: float,
    X: float,
    alpha: float,
    W: SmoothWeight,
    cs: CoefficientSystem | None = None,
    step: float = 0.01,
) -> list[CharacterWindowTerm]:
    """Per-character terms of M(alpha), ordered by (q, chi_index)."""
    cs = cs or zeta_coefficient_system()
    X = int(math.floor(X))
    t_full, w_full = _gl_nodes(0.0, 1.0, _m_panels(X))
    out = []
    for q in moduli_in_support(Q, cs.level):
        wq = float(W(q / Q))
        prim = list(character_group(q).primitive)
        if wq == 0.0 or not prim:
            continue
        V = character_group(q).value_matrix(primitive_only=True)
        full = np.abs(V @ _mollifier_fold(X, q, t_full, cs)) ** 2 @ w_full
        for i, ledger in enumerate(scan_characters(prim, 0.0, 1.0, step)):
            zs = tuple(float(g) for g in ledger.ordinates if 0.0 <= g < 1.0)
            total = 0.0
            if alpha > 0:
                for gamma in zs:
                    lo, hi = max(0.0, gamma - alpha), min(1.0, gamma + alpha)
                    t, w = _gl_nodes(lo, hi, 2)
                    total += float(np.abs(V[i] @ _mollifier_fold(X, q, t, cs)) ** 2 @ w)
            out.append(CharacterWindowTerm(q, prim[i].index, wq / euler_phi(q), zs, total, float(full[i])))
    return out


def exact_M_alpha(
    Q: float,
    X: float,
    alpha: float,
    W: SmoothWeight,
    cs: CoefficientSystem | None = None,
    step: float = 0.01,
) -> float:
    """sum_q W/phi sum*_chi sum_{0 <= gamma < 1} int_{max(0, gamma-alpha)}^{min(1, gamma+alpha)} |H|^2."""
    if alpha <= 0:
        return 0.0
    terms = exact_M_alpha_terms(Q, X, alpha, W, cs, step)
    return math.fsum(t.weight * t.windows_integral for t in terms)


def primitive_count_sum(Q: float, W: SmoothWeight, N: int = 1) -> float:
    """sum_{(q,N)=1} W(q/Q)/phi(q) * #primitive chi mod q (M at X = 1)."""
    return math.fsum(
        float(W(q / Q)) / euler_phi(q) * primitive_count(q) for q in moduli_in_support(Q, N)
    )
