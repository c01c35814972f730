"""The mollified mean values M and M(alpha) at a desk-sized scale.

M averages int_0^1 |H_X(1/2 + it, chi)|^2 over primitive chi with q near Q;
M(alpha) restricts the integral to windows of half-width alpha around zeros
in [0, 1). The asymptotic argument needs M(alpha) > M; at Q = 40 it is a long way off.
"""

# %%
import math

from smallgaps import default_weight, exact_M, exact_M_alpha, exact_M_alpha_terms, primitive_count_sum

W = default_weight()
Q, X = 40, 40

# %% X = 1 reduces M to a weighted character count
print(exact_M(Q, 1, W).exact, primitive_count_sum(Q, W))

# %% exact M against c W^(1) Q c_f c_fg log X
rep = exact_M(Q, X, W)
print(f"M = {rep.exact:.5f}, main = {rep.main_term:.5f}, ratio {rep.exact / rep.main_term:.3f}")

# %% M(alpha) as the windows widen
for mu in (0.2, 0.366, 0.6, 1.0):
    alpha = math.pi * mu / math.log(Q)
    print(f"mu={mu:.3f} alpha={alpha:.4f}: M(alpha) = {exact_M_alpha(Q, X, alpha, W):.5f}")

# %% few characters have a zero with 0 <= gamma < 1 at this height, which caps M(alpha)
terms = exact_M_alpha_terms(Q, X, 1.0, W)
with_zero = [t for t in terms if t.zeros]
print(f"{len(with_zero)} of {len(terms)} characters have a zero in [0, 1)")
share = sum(t.weight * t.full_integral for t in with_zero) / sum(t.weight * t.full_integral for t in terms)
print(f"their share of M: {share:.3f}")
