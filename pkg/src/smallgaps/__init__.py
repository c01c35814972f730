"""Small gaps between zeros of twisted L-functions: the numerical companion.

Modules
-------
arith       factorization, sieves, coefficient systems, multiplicative weights
characters  Dirichlet character groups, conductors, Gauss sums, character averages
special     smooth weight, F kernel, sinc^2 integrals, the gap constants mu_d, lambda_d
als         large sieve main terms, singular constant, the sums A(X) and B(X)
zeros       Hurwitz zeta, L(s, chi), Hardy Z, zero ledgers, gap statistics, M and M(alpha)
"""

__version__ = "0.1.0"

from .arith import (
    CoefficientSystem,
    Factorization,
    MultiplicativeWeight,
    UNIT_WEIGHT,
    coefficient_system_from_streams,
    divisors,
    euler_phi,
    factorize,
    mertens_residual,
    moebius,
    mobius_table,
    phi_table,
    primes_up_to,
    von_mangoldt,
    von_mangoldt_table,
    zeta_coefficient_system,
)
from .characters import (
    CharacterGroup,
    DirichletCharacter,
    character_average,
    character_group,
    delta_exact,
    gauss_sum,
    lemma1_sweep,
    lemma2_sweep,
    orthogonality_check,
    phi_ratio_identity,
    primitive_count,
    root_number,
)
from .special import (
    GapConstantResult,
    SmoothWeight,
    default_weight,
    gap_constant_table,
    h_alpha,
    j_large,
    j_small,
    kernel_F,
    kernel_F_closed,
    kernel_F_series,
    lambda_asymptotic,
    mu_asymptotic,
    solve_lambda,
    solve_mu,
)
from .als import (
    A_slope,
    A_sum,
    B_exact,
    B_sum,
    ComparisonReport,
    EulerProductValue,
    als_moebius_corollary,
    delta_diagonal_main,
    g_N_weight,
    r_factor,
    s_N_main,
    singular_constant,
    tail_bilinear,
)
from .zeros import (
    GapStatistics,
    ZeroLedger,
    dirichlet_L,
    exact_M,
    exact_M_alpha,
    exact_M_alpha_terms,
    expected_zero_count,
    gap_statistics,
    hardy_Z,
    hurwitz_zeta,
    primitive_count_sum,
    rotated_L,
    scan_modulus,
    scan_zeros,
)
