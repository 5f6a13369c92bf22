"""Acceptance suite.

Each criterion prints one pass/fail line (run with -s to see them) and
asserts its stated tolerance.  The dimension-table criterion pins the
published u(N)-style counts (N^2 and l^{2n}); commutator closures of
traceless generators live in su(N), so those rows report the measured
dimension one below the pinned value and fail.  The failing rows are kept
as stated rather than loosened; see the README notes.
"""

import time
import warnings
from itertools import product as iproduct

import numpy as np
import pytest

from liegates.compiler import CompileConfig, compile, compile_report
from liegates.errors import BranchCutWarning, NotMemberError
from liegates.generators import clifford_gammas, torus_T, two_local_clifford_set
from liegates.lieclosure import build_family, closure, membership
from liegates.linalg import (
    expm_antiherm,
    frob_norm,
    herm_eig,
    logm_unitary,
    max_abs,
    random_anti_hermitian,
    random_unitary,
    tensor,
)
from liegates.symalg import Monomial, mono_eval, mono_mul, span_dimension

SZ = np.array([[1, 0], [0, -1]], dtype=complex)


def report(criterion: int, name: str, ok: bool, detail: str = "") -> None:
    status = "PASS" if ok else "FAIL"
    suffix = f" ({detail})" if detail else ""
    print(f"[criterion {criterion}] {name}: {status}{suffix}")
    assert ok, f"criterion {criterion} {name}{suffix}"


# ---------------------------------------------------------------------------
# criterion 1: relation suite, violations <= 1e-12, under 10 s
# ---------------------------------------------------------------------------

def test_criterion_1_relation_suite():
    start = time.perf_counter()
    worst = 0.0
    for n in (1, 2, 3):
        mats = clifford_gammas(n).matrices()
        eye = np.eye(2**n)
        for i, a in enumerate(mats):
            for j, b in enumerate(mats):
                target = -2.0 * eye if i == j else 0.0 * eye
                worst = max(worst, max_abs(a @ b + b @ a - target))
    for n, l in ((1, 2), (1, 3), (1, 5), (2, 2), (2, 3)):
        mats = torus_T(n, l).matrices()
        zeta = np.exp(2j * np.pi / l)
        eye = np.eye(l**n)
        for j in range(len(mats)):
            for k in range(j + 1, len(mats)):
                worst = max(worst, max_abs(mats[j] @ mats[k] - zeta * (mats[k] @ mats[j])))
        for m in mats:
            worst = max(worst, max_abs(np.linalg.matrix_power(m, l) - eye))
    elapsed = time.perf_counter() - start
    report(1, "relation suite", worst <= 1e-12 and elapsed < 10.0,
           f"max violation {worst:.2e}, {elapsed:.2f} s")


# ---------------------------------------------------------------------------
# criterion 2: dimension table, exact integer match, under 5 min
# ---------------------------------------------------------------------------

DIMENSION_ROWS = [
    ("clifford_full", 1, 2, 3),
    ("clifford_full", 2, 2, 10),
    ("clifford_full", 3, 2, 21),
    ("clifford_plus_u", 1, 2, 4),
    ("clifford_plus_u", 2, 2, 16),
    ("clifford_plus_u", 3, 2, 64),
    ("clifford_two_local", 2, 2, 16),
    ("clifford_two_local", 3, 2, 64),
    ("torus_splits", 1, 3, 9),
    ("torus_splits", 1, 4, 16),
    ("torus_splits", 2, 3, 81),
    ("torus_two_local", 2, 3, 81),
]


@pytest.fixture(scope="module")
def closure_dims():
    start = time.perf_counter()
    dims = {}
    bases = {}
    for label, n, l, _ in DIMENSION_ROWS:
        basis = closure(build_family(label, n, l))
        dims[(label, n, l)] = basis.dim
        bases[(label, n, l)] = basis
    elapsed = time.perf_counter() - start
    return dims, bases, elapsed


@pytest.mark.parametrize("label,n,l,expected", DIMENSION_ROWS)
def test_criterion_2_dimension_table(closure_dims, label, n, l, expected):
    dims, _, _ = closure_dims
    dim = dims[(label, n, l)]
    report(2, f"dimension {label} (n={n}, l={l})", dim == expected,
           f"dim {dim}, pinned {expected}")


def test_criterion_2_runtime(closure_dims):
    _, _, elapsed = closure_dims
    report(2, "dimension table runtime", elapsed < 300.0, f"{elapsed:.1f} s")


# ---------------------------------------------------------------------------
# criterion 3: monomial span ranks
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("l,n", [(2, 1), (3, 1), (2, 2), (3, 2)])
def test_criterion_3_monomial_span(l, n):
    rank = span_dimension(l, n)
    report(3, f"monomial span (l={l}, n={n})", rank == l ** (2 * n),
           f"rank {rank}")


# ---------------------------------------------------------------------------
# criterion 4: symbolic products against dense multiplication
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("l,n", [(2, 1), (3, 1)])
def test_criterion_4_symbolic_vs_dense_exhaustive(l, n):
    gens = torus_T(n, l)
    monos = [
        Monomial(l, n, p, e)
        for p in range(2 * l)
        for e in iproduct(range(l), repeat=2 * n)
    ]
    values = {m: mono_eval(m, gens) for m in monos}
    worst = 0.0
    for a in monos:
        for b in monos:
            worst = max(
                worst, max_abs(mono_eval(mono_mul(a, b), gens) - values[a] @ values[b])
            )
    report(4, f"symbolic vs dense exhaustive (l={l}, n={n})", worst <= 1e-12,
           f"{len(monos)**2} pairs, worst {worst:.2e}")


@pytest.mark.parametrize("l,n", [(2, 2), (3, 2)])
def test_criterion_4_symbolic_vs_dense_random(l, n):
    rng = np.random.default_rng(1000 * l + n)
    gens = torus_T(n, l)
    worst = 0.0
    for _ in range(1000):
        a, b = (
            Monomial(
                l, n, int(rng.integers(0, 2 * l)),
                tuple(int(x) for x in rng.integers(0, l, 2 * n)),
            )
            for _ in range(2)
        )
        worst = max(
            worst,
            max_abs(mono_eval(mono_mul(a, b), gens) - mono_eval(a, gens) @ mono_eval(b, gens)),
        )
    report(4, f"symbolic vs dense random (l={l}, n={n})", worst <= 1e-12,
           f"1000 pairs, worst {worst:.2e}")


# ---------------------------------------------------------------------------
# criterion 5: exp/log roundtrip away from the branch cut
# ---------------------------------------------------------------------------

@pytest.mark.parametrize("dim", [2, 4, 8, 9])
def test_criterion_5_exp_log_roundtrip(dim):
    rng = np.random.default_rng(500 + dim)
    worst = 0.0
    for _ in range(200):
        a = random_anti_hermitian(dim, rng)
        lam, _ = herm_eig(-1j * a)
        top = float(np.max(np.abs(lam)))
        if top >= np.pi - 1e-3:
            a = a * (np.pi - 1.1e-3) / top
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", BranchCutWarning)
            worst = max(worst, frob_norm(logm_unitary(expm_antiherm(a)) - a))
    report(5, f"exp/log roundtrip (dim {dim})", worst <= 1e-9,
           f"200 samples, worst {worst:.2e}")


# ---------------------------------------------------------------------------
# criterion 6: compiler convergence, exact primitives, correct rejection
# ---------------------------------------------------------------------------

@pytest.fixture(scope="module")
def two_local_basis():
    gens = two_local_clifford_set(2)
    return gens, closure(gens)


def test_criterion_6_convergence_sweep(two_local_basis):
    gens, basis = two_local_basis
    rng = np.random.default_rng(2026)
    m_values = (1, 2, 4, 8, 16, 32, 64)
    all_monotone = True
    worst_final = 0.0
    for _ in range(20):
        u = random_unitary(4, rng)
        u = u / np.linalg.det(u) ** 0.25
        rows = compile_report(u, gens, basis, m_values)["rows"]
        errs = [r["phase_invariant_error"] for r in rows]
        for a, b in zip(errs, errs[1:]):
            if b > 1.1 * a and not (a < 1e-8 and b < 1e-8):
                all_monotone = False
        worst_final = max(worst_final, errs[-1])
    report(6, "random SU(4) sweep", all_monotone and worst_final <= 1e-2,
           f"20 targets, worst final error {worst_final:.2e}, monotone {all_monotone}")


def test_criterion_6_primitive_exact(two_local_basis):
    gens, basis = two_local_basis
    worst = 0.0
    for gen_id, theta in (("G0", 0.3), ("G1G2", -0.8), ("Gu", 1.1)):
        u = expm_antiherm(theta * gens.by_id(gen_id).matrix)
        seq = compile(u, gens, basis, CompileConfig(slices=1))
        worst = max(worst, seq.report["phase_invariant_error"])
    report(6, "primitive exponentials exact at one slice", worst <= 1e-10,
           f"worst {worst:.2e}")


def test_criterion_6_non_universal_rejection():
    gens = clifford_gammas(2)
    basis = closure(gens)
    u = expm_antiherm(0.5j * tensor(SZ, SZ))
    try:
        compile(u, gens, basis)
    except NotMemberError as exc:
        report(6, "non-universal set rejects", exc.residual > 0.1,
               f"residual {exc.residual:.3f}")
        return
    report(6, "non-universal set rejects", False, "target was not rejected")


# ---------------------------------------------------------------------------
# criterion 7: recipe fidelity over the criterion-2 bases
# ---------------------------------------------------------------------------

@pytest.mark.parametrize(
    "label,n,l", sorted({(label, n, l) for label, n, l, _ in DIMENSION_ROWS})
)
def test_criterion_7_recipe_fidelity(closure_dims, label, n, l):
    _, bases, _ = closure_dims
    basis = bases[(label, n, l)]
    residual = basis.max_recipe_residual()
    report(7, f"recipe fidelity {label} (n={n}, l={l})", residual <= 1e-8,
           f"dim {basis.dim}, max residual {residual:.2e}")
