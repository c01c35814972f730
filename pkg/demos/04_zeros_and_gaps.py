"""Zeros of L(s, chi) on the critical line and their normalized gaps."""

# %%
import numpy as np

from smallgaps import character_group, dirichlet_L, gap_statistics, hardy_Z, scan_modulus, scan_zeros
from smallgaps.zeros import local_density

# %% zeta: the first three zeros
led = scan_zeros(character_group(1)[0], 0, 30)
print(led.ordinates, "expected count", round(led.expected_count, 3))

# %% Z(t) for the character mod 4 is real and changes sign at each zero
chi4 = character_group(4).primitive[0]
t = np.linspace(5.9, 6.1, 5)
print(np.round(hardy_Z(t, chi4), 6))
print("L(1, chi_4) =", dirichlet_L(1, chi4).real, " pi/4 =", np.pi / 4)

# %% counts against the smooth main term for small moduli
for q in (3, 5, 7, 11, 13):
    for l in scan_modulus(q, 0, 30):
        print(f"q={q:2d} chi={l.chi_index:2d}: {l.count:2d} zeros, expected {l.expected_count:5.2f}")

# %% pooled local-normalized gaps for q <= 30
gaps = []
for q in range(3, 31):
    for l in scan_modulus(q, 0, 30):
        if l.count >= 2:
            gaps.append(gap_statistics(l, "local").gaps)
gaps = np.concatenate(gaps)
print(f"{gaps.size} gaps, mean {gaps.mean():.4f}, min {gaps.min():.4f}")
print("fraction below mu_1 = 0.3655:", np.mean(gaps < 0.3655))
print("density at q=30, t=1:", float(local_density(30, 1.0)))
