"""Primitive characters: conductors, Gauss sums and the two averaging identities."""

# %%
import math

from smallgaps import (
    character_group,
    gauss_sum,
    lemma1_sweep,
    lemma2_sweep,
    orthogonality_check,
    phi_ratio_identity,
    primitive_count,
)

# %% the group mod 8: exponent vectors, conductors and parity
for chi in character_group(8):
    print(chi.index, chi.exponents, "conductor", chi.conductor, "parity", chi.parity)

# %% counts of primitive characters
print([primitive_count(q) for q in range(1, 21)])

# %% |tau(chi)| = sqrt(q) exactly when chi is primitive
G = character_group(12)
for chi in G:
    print(chi.index, chi.conductor, round(abs(gauss_sum(chi)) ** 2, 10))

# %% sum over primitive chi of chi(m) conj chi(n) against the divisor sum
for q, m, n in ((5, 1, 1), (5, 1, 2), (12, 5, 17), (30, 7, 37)):
    lhs, rhs = orthogonality_check(q, m, n)
    print(f"q={q} m={m} n={n}: {lhs.real:+.1f} vs {rhs:+d}")

# %% the phi-ratio identity in exact rationals
print(phi_ratio_identity(12, 18))

# %% exhaustive sweeps
print("lemma 1:", lemma1_sweep(60, 60))
print("lemma 2:", lemma2_sweep(100))
