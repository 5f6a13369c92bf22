"""Single place for numerical defaults.

Every tolerance, cap and sweep used anywhere in the package lives here so
that the CLI can document and override them in one spot.  No environment
variables are consulted.
"""

from dataclasses import dataclass
import math


@dataclass(frozen=True)
class Defaults:
    # predicate tolerances (max absolute entry deviation)
    unitary_tol: float = 1e-9
    hermitian_tol: float = 1e-9
    anti_hermitian_tol: float = 1e-9

    # cyclic Jacobi eigensolver
    jacobi_conv: float = 1e-13      # off-diagonal Frobenius mass, relative
    jacobi_max_sweeps: int = 60

    # principal logarithm branch handling
    branch_warn_margin: float = 1e-6

    # dense matrix capacity
    dim_cap: int = 4096

    # Lie closure
    closure_tol: float = 1e-8       # admission threshold is closure_tol * dim
    recipe_exact_tol: float = 1e-9  # in-span mass allowed for an exact recipe
    membership_tol: float = 1e-8

    # monomial span rank threshold (Gram eigenvalues)
    span_rank_tol: float = 1e-9

    # compiler
    m_sweep: tuple = (1, 2, 4, 8, 16, 32, 64)
    tau_clip: float = math.pi
    merge_product_tol: float = 1e-12
    refine_max_iter: int = 60


DEFAULTS = Defaults()
