"""Dirichlet characters mod q.

Characters are built from generators of the unit group (Z/qZ)^*, one cyclic
factor per odd prime power and the pair {-1, 5} for 2^e with e >= 3. A
character is a vector of exponents k_j; its value at n is

    chi(n) = exp(2 pi i * sum_j k_j * log_j(n) / ord_j)

and is stored as an integer phase modulo E = lcm(ord_j), so equality tests
are exact. Characters are listed in lexicographic order of their exponent
vectors; ``index`` refers to that order.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

import numpy as np

from .arith import divisors, euler_phi, factorize, mobius_table, phi_table

MAX_MODULUS = 10**4


def _primitive_root_prime_power(p: int, e: int) -> int:
    """Smallest primitive root mod p, lifted to p^e (odd p)."""
    order = p - 1
    qs = [r for r, _ in factorize(order).factors]
    g = 2
    while any(pow(g, order // r, p) == 1 for r in qs):
        g += 1
    if e >= 2 and pow(g, p - 1, p * p) == 1:
        g += p
    return g


@dataclass(frozen=True)
class _Generator:
    prime: int
    modulus: int  # the prime power p^e this generator lives in
    order: int
    element: int  # generator of its cyclic factor mod p^e


def _local_generators(p: int, e: int) -> list[_Generator]:
    pe = p**e
    if p == 2:
        if e == 1:
            return []
        if e == 2:
            return [_Generator(2, 4, 2, 3)]
        return [_Generator(2, pe, 2, pe - 1), _Generator(2, pe, 2 ** (e - 2), 5)]
    return [_Generator(p, pe, (p - 1) * p ** (e - 1), _primitive_root_prime_power(p, e))]


def _local_logs(p: int, e: int, gens: list[_Generator]) -> list[np.ndarray]:
    """Discrete-log tables over residues mod p^e; -1 marks non-units."""
    pe = p**e
    if not gens:
        return []
    if len(gens) == 1:
        g = gens[0]
        log = np.full(pe, -1, dtype=np.int64)
        x = 1
        for k in range(g.order):
            log[x] = k
            x = x * g.element % pe
        return [log]
    # 2^e, e >= 3: r = (-1)^a 5^b
    la = np.full(pe, -1, dtype=np.int64)
    lb = np.full(pe, -1, dtype=np.int64)
    x = 1
    for b in range(gens[1].order):
        la[x], lb[x] = 0, b
        la[pe - x], lb[pe - x] = 1, b
        x = x * 5 % pe
    return [la, lb]


def _conductor_exponent(p: int, e: int, ks: tuple[int, ...], gens: list[_Generator]) -> int:
    if all(k == 0 for k in ks):
        return 0
    if p == 2:
        if e == 2:
            return 2
        ka, kb = ks
        if kb == 0:
            return 2
        o = gens[1].order // math.gcd(kb, gens[1].order)
        return 2 + (o.bit_length() - 1)
    o = gens[0].order // math.gcd(ks[0], gens[0].order)
    v = 0
    while o % p == 0:
        o //= p
        v += 1
    return 1 + v


@dataclass(frozen=True, eq=False)
class DirichletCharacter:
    """A Dirichlet character mod q given by exponents on the unit-group generators."""

    modulus: int
    index: int
    exponents: tuple[int, ...]
    conductor: int
    parity: int
    _group: "CharacterGroup"

    @property
    def primitive(self) -> bool:
        return self.conductor == self.modulus

    @property
    def is_principal(self) -> bool:
        return all(k == 0 for k in self.exponents)

    @cached_property
    def phases(self) -> np.ndarray:
        """Integer phase of chi(r) in units of 2 pi / E, r = 0..q-1; -1 on non-units."""
        return self._group._phase_rows(np.array([self.exponents], dtype=np.int64))[0]

    @property
    def order_denominator(self) -> int:
        return self._group.exponent

    @cached_property
    def values(self) -> np.ndarray:
        ph = self.phases
        vals = np.exp(2j * np.pi * np.where(ph < 0, 0, ph) / self._group.exponent)
        vals[ph < 0] = 0.0
        return vals

    def __call__(self, n: int) -> complex:
        return complex(self.values[int(n) % self.modulus])

    def is_real(self) -> bool:
        ph = self.phases
        return bool(np.all((ph < 0) | ((2 * ph) % self._group.exponent == 0)))

    def __repr__(self) -> str:
        return (
            f"DirichletCharacter(q={self.modulus}, index={self.index}, "
            f"conductor={self.conductor}, parity={self.parity})"
        )


class CharacterGroup:
    """All phi(q) Dirichlet characters mod q."""

    def __init__(self, q: int):
        q = int(q)
        if q < 1:
            raise ValueError(f"modulus must be positive, got {q}")
        if q > MAX_MODULUS:
            raise ValueError(f"modulus {q} exceeds enumeration ceiling {MAX_MODULUS}")
        self.modulus = q
        self.factorization = factorize(q).factors
        self.generators: list[_Generator] = []
        local_logs: list[np.ndarray] = []
        owner: list[int] = []  # position in factorization of each generator
        for i, (p, e) in enumerate(self.factorization):
            gens = _local_generators(p, e)
            self.generators += gens
            local_logs += _local_logs(p, e, gens)
            owner += [i] * len(gens)
        self.orders = tuple(g.order for g in self.generators)
        self.exponent = math.lcm(*self.orders) if self.orders else 1

        residues = np.arange(q)
        unit = np.array([math.gcd(int(r), q) == 1 for r in residues])
        self.units = unit
        self.logs = np.zeros((len(self.generators), q), dtype=np.int64)
        for j, (g, table) in enumerate(zip(self.generators, local_logs)):
            self.logs[j] = table[residues % g.modulus]
        self.logs[:, ~unit] = 0

        chars = []
        log_minus_one = self.logs[:, (q - 1) % q] if q > 2 else np.zeros(len(self.generators), dtype=np.int64)
        for idx, ks in enumerate(itertools.product(*(range(o) for o in self.orders))):
            cond = 1
            for i, (p, e) in enumerate(self.factorization):
                sub = tuple(k for k, o in zip(ks, owner) if o == i)
                gens = [g for g, o in zip(self.generators, owner) if o == i]
                cond *= p ** _conductor_exponent(p, e, sub, gens)
            turn = sum(Fraction(k * int(l), o) for k, l, o in zip(ks, log_minus_one, self.orders))
            parity = 0 if turn.denominator == 1 else 1
            chars.append(DirichletCharacter(q, idx, tuple(ks), cond, parity, self))
        self.characters: tuple[DirichletCharacter, ...] = tuple(chars)
        self._prim_matrix: np.ndarray | None = None

    def __len__(self) -> int:
        return len(self.characters)

    def __iter__(self):
        return iter(self.characters)

    def __getitem__(self, i: int) -> DirichletCharacter:
        return self.characters[i]

    @property
    def primitive(self) -> tuple[DirichletCharacter, ...]:
        return tuple(c for c in self.characters if c.primitive)

    def _phase_rows(self, ks: np.ndarray) -> np.ndarray:
        if ks.shape[1] == 0:
            rows = np.zeros((ks.shape[0], self.modulus), dtype=np.int64)
        else:
            scale = np.array([self.exponent // o for o in self.orders], dtype=np.int64)
            rows = ((ks * scale) @ self.logs) % self.exponent
        rows[:, ~self.units] = -1
        return rows

    def value_matrix(self, primitive_only: bool = True) -> np.ndarray:
        """Complex matrix V[i, r] = chi_i(r) over the selected characters."""
        if primitive_only and self.modulus <= 2000:
            if self._prim_matrix is None:
                self._prim_matrix = self._build_matrix(self.primitive)
                self._prim_matrix.setflags(write=False)
            return self._prim_matrix
        return self._build_matrix(self.primitive if primitive_only else self.characters)

    def _build_matrix(self, chars) -> np.ndarray:
        if not chars:
            return np.zeros((0, self.modulus), dtype=complex)
        ph = self._phase_rows(np.array([c.exponents for c in chars], dtype=np.int64))
        vals = np.exp(2j * np.pi * np.where(ph < 0, 0, ph) / self.exponent)
        vals[ph < 0] = 0.0
        return vals

    def conjugate(self, chi: DirichletCharacter) -> DirichletCharacter:
        ks = tuple((-k) % o for k, o in zip(chi.exponents, self.orders))
        return self.characters[self._index_of(ks)]

    def _index_of(self, ks: tuple[int, ...]) -> int:
        idx = 0
        for k, o in zip(ks, self.orders):
            idx = idx * o + k
        return idx


@lru_cache(maxsize=512)
def character_group(q: int) -> CharacterGroup:
    return CharacterGroup(q)


def primitive_count(q: int) -> int:
    """Number of primitive characters mod q (multiplicative closed form)."""
    out = 1
    for p, e in factorize(q).factors:
        if e == 1:
            out *= p - 2
        else:
            out *= p ** (e - 2) * (p - 1) ** 2
    return out


# ----------------------------------------------------------------------------
# Orthogonality identities


def orthogonality_rhs(q: int, m: int, n: int) -> int:
    """sum_{d | q, d | (m - n)} phi(d) mu(q/d)."""
    mu = mobius_table(q)
    return sum(euler_phi(d) * int(mu[q // d]) for d in divisors(q) if (m - n) % d == 0)


def orthogonality_check(q: int, m: int, n: int) -> tuple[complex, int]:
    """Both sides of sum*_{chi mod q} chi(m) conj(chi(n)) = sum_{d|q, d|m-n} phi(d) mu(q/d)."""
    if math.gcd(m * n, q) != 1:
        raise ValueError(f"gcd(mn, q) must be 1 (q={q}, m={m}, n={n})")
    V = character_group(q).value_matrix(primitive_only=True)
    lhs = complex(np.sum(V[:, m % q] * np.conj(V[:, n % q])))
    return lhs, orthogonality_rhs(q, m, n)


def orthogonality_table(q: int, mn_max: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Both orthogonality sides for every m, n <= mn_max coprime to q.

    Returns (ms, lhs, rhs) with lhs[i, j], rhs[i, j] for the pair (ms[i], ms[j]).
    """
    ms = np.array([m for m in range(1, mn_max + 1) if math.gcd(m, q) == 1], dtype=np.int64)
    V = character_group(q).value_matrix(primitive_only=True)
    cols = V[:, ms % q]
    lhs = cols.T @ np.conj(cols)
    mu = mobius_table(q)
    phi = phi_table(q)
    diff = ms[:, None] - ms[None, :]
    rhs = np.zeros(diff.shape, dtype=np.int64)
    for d in divisors(q):
        rhs += (diff % d == 0) * int(phi[d] * mu[q // d])
    return ms, lhs, rhs


def lemma1_sweep(q_max: int, mn_max: int, tol: float = 1e-8) -> tuple[int, int]:
    """(cases, failures) of primitive-character orthogonality over q <= q_max, m, n <= mn_max."""
    cases = failures = 0
    for q in range(1, q_max + 1):
        _, lhs, rhs = orthogonality_table(q, mn_max)
        cases += rhs.size
        failures += int(np.count_nonzero(np.abs(lhs - rhs) > tol))
    return cases, failures


def lemma2_sweep(c_max: int) -> tuple[int, int]:
    """(cases, failures) of phi(d)/phi(cd) = (1/phi(c)) sum_{a|(c,d)} mu(a)/a, exact."""
    phi = phi_table(c_max * c_max)
    mu = mobius_table(c_max)
    inner = [Fraction(0)] + [
        sum((Fraction(int(mu[a]), a) for a in divisors(g)), Fraction(0)) for g in range(1, c_max + 1)
    ]
    cases = failures = 0
    for c in range(1, c_max + 1):
        for d in range(1, c_max + 1):
            cases += 1
            lhs = Fraction(int(phi[d]), int(phi[c * d]))
            if lhs != inner[math.gcd(c, d)] / int(phi[c]):
                failures += 1
    return cases, failures


def phi_ratio_identity(c: int, d: int) -> tuple[Fraction, Fraction]:
    """Both sides of phi(d)/phi(cd) = (1/phi(c)) sum_{a | (c, d)} mu(a)/a."""
    if c < 1 or d < 1:
        raise ValueError("c and d must be positive")
    lhs = Fraction(euler_phi(d), euler_phi(c * d))
    g = math.gcd(c, d)
    mu = mobius_table(g)
    rhs = sum((Fraction(int(mu[a]), a) for a in divisors(g)), Fraction(0)) / euler_phi(c)
    return lhs, rhs


# ----------------------------------------------------------------------------
# Gauss sums and root numbers


def gauss_sum(chi: DirichletCharacter) -> complex:
    q = chi.modulus
    return complex(np.sum(chi.values * np.exp(2j * np.pi * np.arange(q) / q)))


def root_number(chi: DirichletCharacter) -> complex:
    """epsilon_chi = tau(chi) / (i^a sqrt(q)) for primitive chi."""
    return gauss_sum(chi) / (1j**chi.parity * math.sqrt(chi.modulus))


# ----------------------------------------------------------------------------
# Character averages over q ~ Q


def _fold(coeffs: dict[int, complex], q: int) -> np.ndarray:
    out = np.zeros(q, dtype=complex)
    for n, c in coeffs.items():
        out[n % q] += c
    return out


def moduli_in_support(Q: float, N: int = 1) -> list[int]:
    """Integers q with Q < q < 2Q (the open support of W(q/Q)) and gcd(q, N) = 1."""
    lo, hi = math.floor(Q) + 1, math.ceil(2 * Q) - 1
    if hi > MAX_MODULUS:
        raise ValueError(f"2Q = {2 * Q} exceeds the character enumeration ceiling")
    return [q for q in range(max(lo, 1), hi + 1) if math.gcd(q, N) == 1]


def character_average(
    a: dict[int, complex], b: dict[int, complex], Q: float, W, N: int = 1
) -> complex:
    """sum_{(q,N)=1} W(q/Q)/phi(q) sum*_{chi mod q} (sum_m a_m chi(m)) (sum_n b_n conj chi(n))."""
    terms = []
    for q in moduli_in_support(Q, N):
        wq = float(W(q / Q))
        if wq == 0.0:
            continue
        V = character_group(q).value_matrix(primitive_only=True)
        if V.shape[0] == 0:
            continue
        A = V @ _fold(a, q)
        B = np.conj(V) @ _fold(b, q)
        terms.append(wq / euler_phi(q) * complex(np.sum(A * B)))
    return complex(math.fsum(t.real for t in terms), math.fsum(t.imag for t in terms))


def delta_exact(m: int, n: int, Q: float, W) -> complex:
    """Delta(m, n) = sum_q W(q/Q)/phi(q) sum*_{chi mod q} chi(m) conj(chi(n))."""
    return character_average({int(m): 1.0}, {int(n): 1.0}, Q, W)
