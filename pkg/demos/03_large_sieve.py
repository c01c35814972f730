"""Asymptotic large sieve: character averages against their diagonal main terms."""

# %%
import math

import numpy as np

from smallgaps import (
    A_slope,
    A_sum,
    B_sum,
    als_moebius_corollary,
    default_weight,
    delta_diagonal_main,
    g_N_weight,
    singular_constant,
    tail_bilinear,
)

W = default_weight()
print("W^(1) =", W.mellin_at_1)
c = singular_constant(10**6)
print(f"c = {c.value:.10f}, log-tail bound {c.tail_bound:.1e}")

# %% Delta(m, m) for m <= 10 at two scales; only the radical of m matters
for Q in (100, 200):
    errs = [delta_diagonal_main(m, Q, W).rel_error for m in range(1, 11)]
    print(f"Q={Q}:", " ".join(f"{e:.1e}" for e in errs), " median", f"{np.median(errs):.2e}")

# %% the Moebius corollary and an off-diagonal tail
for Q in (60, 120):
    r = als_moebius_corollary(Q, 60, W)
    print(f"Q={Q}: exact {r.exact.real:.6f} main {r.main_term.real:.6f} rel {r.rel_error:.4f}")
print("disjoint-support bilinear form:", abs(tail_bilinear(60, 30, W)))

# %% A(X) grows like c_f c_fg log X; the two-scale slope isolates the constant
for X in (10**3, 10**4, 10**5, 10**6):
    print(f"X=1e{int(math.log10(X))}: A={A_sum(X).real:.5f}  slope={A_slope(X):.5f}  6/pi^2={6 / math.pi**2:.5f}")

# %% B(X) against -slope F(alpha log X, beta log X) log^2 X
X = 10**5
L = math.log(X)
s = A_slope(X)
for a in (0, 1 / L):
    for b in (0, 1 / L):
        r = B_sum(X, alpha=a, beta=b, slope=s)
        print(f"alpha log X={a * L:.0f} beta log X={b * L:.0f}: ratio {r.ratio.real:.4f}")

# %% same with the weight g = r(n), which enters the mean value of the mollifier
g = g_N_weight(1)
print("slope with g_1:", A_slope(10**6, g))
