"""Gap constants mu_d and lambda_d.

mu_d solves j_d(mu) = mu + 2 int_0^{mu/d} sinc^2 = 1 and bounds the smallest
normalized gap from above; lambda_d solves the mirror equation with a minus sign.
"""

# %%
import math

import numpy as np

from smallgaps import gap_constant_table, h_alpha, j_large, j_small, mu_asymptotic, solve_lambda, solve_mu

# %% the first few constants
for d in range(1, 6):
    mu, lam = solve_mu(d), solve_lambda(d)
    print(f"d={d}  mu={mu.value:.6f} (residual {mu.residual:.1e})  lambda={lam.value:.6f}")

# %% j_1 around its root: slope is 1 + 2 sinc^2(mu), so a 5e-4 error in mu moves j by ~1e-3
for mu in (0.365, 0.3655, 0.366):
    print(f"j_1({mu}) = {j_small(1, mu):.6f}")
print("j_1^+(1.94) =", round(j_large(1, 1.94), 6))

# %% approach to 1 - 2/d + 4/d^2: the d^3-scaled remainder levels off
tab = gap_constant_table(2000)
for d in (10, 50, 100, 500, 2000):
    rem = (tab["mu"][d - 1] - mu_asymptotic(d)) * d**3
    print(f"d={d:5d}  mu_d={tab['mu'][d - 1]:.8f}  (mu_d - asym) d^3 = {rem:+.4f}")

# %% the same threshold seen through h(alpha) with log X = 2 log Q
logQ = 25.0
d = 2
mu2 = solve_mu(d).value
for eps in (-0.01, 0.0, 0.01):
    a = math.pi * (mu2 + eps) / (d * logQ)
    print(f"mu = mu_2 {eps:+.2f}: h = {h_alpha(a, d, logQ, 2 * logQ):.6f}")

# %% residuals stay below the solver tolerance across the whole table
print("max residuals:", float(np.max(tab["mu_res"])), float(np.max(tab["lam_res"])))
