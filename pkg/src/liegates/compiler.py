"""Unitary-to-gate-sequence compiler.

Given a target unitary and a generator set whose Lie closure is known, the
compiler takes the principal logarithm, reads off coordinates in the
closure basis, and emits a first-order product of slices; each coordinate
is realised either as a primitive exponential or as a nested
group-commutator word following the element's recipe tree, so

    exp(t P) exp(t Q) exp(-t P) exp(-t Q)  ~  exp(t^2 [P, Q]).

The plain scheme converges to the target only like 1 / sqrt(slices), far
too slowly to be useful, so by default the coordinates are re-solved by a
damped fixed-point iteration against the actual slice product; this keeps
the gate alphabet, the word structure and the gate count unchanged while
driving the error to the numerical floor whenever the iteration contracts.
All reported errors use the global-phase-invariant distance; the trace
part of the logarithm (a pure global phase) is projected out before the
coordinate solve.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass, field, replace

import numpy as np

from .config import DEFAULTS
from .errors import (
    BranchCutWarning,
    DepthExhaustedError,
    DimensionMismatchError,
    MatrixPropertyError,
    NotMemberError,
    UnknownGeneratorError,
)
from .generators import GeneratorSet
from .lieclosure import LieBasis, membership
from .linalg import (
    Matrix,
    as_matrix,
    dagger,
    error_metrics,
    herm_eig,
    is_unitary,
    logm_unitary,
    phase_invariant_dist,
    principal_sqrt_unitary,
    unitary_eig,
)


@dataclass(frozen=True)
class CompileConfig:
    slices: int = 1
    max_commutator_depth: int = 8
    target_error: float | None = None
    tau_clip: float = DEFAULTS.tau_clip
    refine: bool = True
    refine_max_iter: int = DEFAULTS.refine_max_iter
    merge: bool = False

    def __post_init__(self):
        if self.slices < 1:
            raise ValueError("slices must be at least 1")
        if self.max_commutator_depth < 0:
            raise ValueError("max_commutator_depth must be non-negative")
        if self.tau_clip <= 0:
            raise ValueError("tau_clip must be positive")


@dataclass
class GateSequence:
    items: list[tuple[str, float]]
    target_dim: int
    report: dict = field(default_factory=dict)

    @property
    def gate_count(self) -> int:
        return len(self.items)


# ---------------------------------------------------------------------------
# gate evaluation
# ---------------------------------------------------------------------------

def _generator_eig(gens: GeneratorSet, gen_id: str):
    """Cached eigendecomposition of -i A for generator A (A anti-Hermitian)."""
    cached = gens._eig_cache.get(gen_id)
    if cached is None:
        try:
            mat = gens.by_id(gen_id).matrix
        except KeyError:
            raise UnknownGeneratorError(gen_id) from None
        lam, w = herm_eig(-1j * mat)
        # wrap period: defined when the spectrum is +/- a single magnitude
        mags = np.abs(lam)
        top = float(np.max(mags)) if lam.size else 0.0
        period = None
        if top > 1e-12 and np.all(np.abs(mags - top) <= 1e-12 * max(top, 1.0)):
            period = 2.0 * math.pi / top
        cached = (lam, w, period)
        gens._eig_cache[gen_id] = cached
    return cached


def gate_matrix(gens: GeneratorSet, gen_id: str, tau: float) -> Matrix:
    """exp(A tau) for the generator with the given id."""
    lam, w, _ = _generator_eig(gens, gen_id)
    return (w * np.exp(1j * lam * tau)) @ dagger(w)


def evaluate(seq, gens: GeneratorSet) -> Matrix:
    """Ordered product of the sequence gates, first item leftmost."""
    items = seq.items if isinstance(seq, GateSequence) else seq
    out = np.eye(gens.dim, dtype=complex)
    for gen_id, tau in items:
        out = out @ gate_matrix(gens, gen_id, float(tau))
    return out


def merge_adjacent(items: list[tuple[str, float]]) -> list[tuple[str, float]]:
    """Peephole pass: fold runs of equal-id gates into one (exact product)."""
    out: list[tuple[str, float]] = []
    for gen_id, tau in items:
        if out and out[-1][0] == gen_id:
            merged = out[-1][1] + tau
            out[-1] = (gen_id, merged)
        else:
            out.append((gen_id, float(tau)))
    return [(g, t) for g, t in out if abs(t) > 1e-15]


# ---------------------------------------------------------------------------
# recipe realisation
# ---------------------------------------------------------------------------

def _realize(basis: LieBasis, idx: int, theta: float,
             out: list[tuple[str, float]]) -> None:
    if abs(theta) < 1e-15:
        return
    rec = basis.recipes[idx]
    if rec.kind == "leaf":
        out.append((rec.gen_id, theta / rec.coeff))
        return
    left, right, u = rec.left, rec.right, theta / rec.coeff
    if u < 0:
        left, right, u = rec.right, rec.left, -u
    t = math.sqrt(u)
    _realize(basis, left, t, out)
    _realize(basis, right, t, out)
    _realize(basis, left, -t, out)
    _realize(basis, right, -t, out)


def _wrap_and_clip(items: list[tuple[str, float]], gens: GeneratorSet,
                   clip: float) -> list[tuple[str, float]]:
    """Reduce angles by the generator's period and split oversized ones.

    Both moves leave the evaluated product unchanged.
    """
    out: list[tuple[str, float]] = []
    for gen_id, tau in items:
        _, _, period = _generator_eig(gens, gen_id)
        if period is not None:
            tau = math.remainder(tau, period)
        if abs(tau) < 1e-15:
            continue
        if abs(tau) > clip:
            parts = math.ceil(abs(tau) / clip)
            out.extend([(gen_id, tau / parts)] * parts)
        else:
            out.append((gen_id, tau))
    return out


def _slice_items(coords: np.ndarray, basis: LieBasis, slices: int,
                 gens: GeneratorSet, cfg: CompileConfig) -> list[tuple[str, float]]:
    items: list[tuple[str, float]] = []
    for j, c in enumerate(coords):
        if abs(c) < 1e-14:
            continue
        _realize(basis, j, float(c) / slices, items)
    return _wrap_and_clip(items, gens, cfg.tau_clip)


def _slice_power(slice_items, gens: GeneratorSet, slices: int) -> Matrix:
    v = evaluate(slice_items, gens)
    return np.linalg.matrix_power(v, slices)


# ---------------------------------------------------------------------------
# compilation
# ---------------------------------------------------------------------------

def _traceless(a: Matrix) -> Matrix:
    n = a.shape[0]
    return a - (np.trace(a) / n) * np.eye(n, dtype=complex)


def _refine_coords(u: Matrix, coords: np.ndarray, basis: LieBasis,
                   gens: GeneratorSet, slices: int, cfg: CompileConfig) -> np.ndarray:
    """Fixed-point coordinate solve against the realised slice product.

    Compares logarithms in the algebra frame (target coordinates against
    the coordinates of the realised product) and backtracks on steps that
    do not reduce the phase-invariant error, keeping the best iterate.
    """
    floor = 1e-11

    def product_for(c):
        return _slice_power(_slice_items(c, basis, slices, gens, cfg), gens, slices)

    target = coords.copy()
    c = coords.copy()
    v = product_for(c)
    best_err, best_c = phase_invariant_dist(u, v), c.copy()
    for _ in range(cfg.refine_max_iter):
        err = phase_invariant_dist(u, v)
        if err < best_err:
            best_err, best_c = err, c.copy()
        if best_err <= floor:
            break
        with warnings.catch_warnings():
            warnings.simplefilter("ignore", BranchCutWarning)
            realised_log = _traceless(logm_unitary(v))
        delta = target - membership(realised_log, basis, tol=1.0).coefficients
        if np.linalg.norm(delta) < 1e-14:
            break
        accepted = False
        for step in (1.0, 0.5, 0.25, 0.125):
            cand = c + step * delta
            v_cand = product_for(cand)
            if phase_invariant_dist(u, v_cand) < err:
                c, v, accepted = cand, v_cand, True
                break
        if not accepted:
            break
    err = phase_invariant_dist(u, v)
    if err < best_err:
        best_c = c
    return best_c


def _compile_fixed(u: Matrix, gens: GeneratorSet, basis: LieBasis,
                   slices: int, cfg: CompileConfig,
                   _split_done: bool = False) -> GateSequence:
    n = gens.dim
    phases, _ = unitary_eig(u)
    if not _split_done and np.any(math.pi - np.abs(phases) < DEFAULTS.branch_warn_margin):
        # compile the principal square root and emit it twice, avoiding the
        # logarithm discontinuity at eigenphase pi
        root = principal_sqrt_unitary(u)
        half = _compile_fixed(root, gens, basis, slices, cfg, _split_done=True)
        items = half.items + half.items
        realised = evaluate(items, gens)
        frob, phase_inv = error_metrics(u, realised)
        return GateSequence(
            items,
            n,
            {
                "frob_error": frob,
                "phase_invariant_error": phase_inv,
                "slice_count": 2 * slices,
                "gate_count": len(items),
                "square_root_split": True,
            },
        )

    with warnings.catch_warnings():
        warnings.simplefilter("ignore", BranchCutWarning)
        log = logm_unitary(u)
    log0 = _traceless(log)
    res = membership(log0, basis)
    if not res.member:
        raise NotMemberError(
            res.residual,
            f"target logarithm lies outside the generated algebra "
            f"(residual {res.residual:.6g})",
        )
    needed = [j for j, c in enumerate(res.coefficients) if abs(c) >= 1e-14]
    max_depth = max((basis.depth(j) for j in needed), default=0)
    if max_depth > cfg.max_commutator_depth:
        raise DepthExhaustedError(
            f"recipe depth {max_depth} exceeds configured maximum "
            f"{cfg.max_commutator_depth}"
        )

    coords = res.coefficients
    if cfg.refine and needed:
        coords = _refine_coords(u, coords, basis, gens, slices, cfg)

    slice_items = _slice_items(coords, basis, slices, gens, cfg)
    items = slice_items * slices
    if cfg.merge:
        items = merge_adjacent(items)
    realised = evaluate(items, gens)
    frob, phase_inv = error_metrics(u, realised)
    return GateSequence(
        items,
        n,
        {
            "frob_error": frob,
            "phase_invariant_error": phase_inv,
            "slice_count": slices,
            "gate_count": len(items),
        },
    )


def compile(u, gens: GeneratorSet, basis: LieBasis,
            cfg: CompileConfig | None = None) -> GateSequence:
    """Compile a unitary into a sequence of generator exponentials.

    The target's principal logarithm must lie in the basis span up to a
    global phase, otherwise NotMemberError carries the off-span residual.
    When cfg.target_error is set the slice count is doubled until the
    phase-invariant error reaches the target or stops improving; the error
    actually achieved is always reported, never promised.
    """
    cfg = cfg or CompileConfig()
    m = as_matrix(u)
    if m.shape[0] != gens.dim or m.shape[0] != basis.matrix_dim:
        raise DimensionMismatchError(
            f"target dimension {m.shape[0]} does not match generators ({gens.dim})"
        )
    if not is_unitary(m):
        raise MatrixPropertyError("compile requires a unitary target")

    if cfg.target_error is None:
        return _compile_fixed(m, gens, basis, cfg.slices, cfg)

    best: GateSequence | None = None
    slices = cfg.slices
    while True:
        seq = _compile_fixed(m, gens, basis, slices, cfg)
        if best is None or seq.report["phase_invariant_error"] < best.report["phase_invariant_error"]:
            best = seq
        if best.report["phase_invariant_error"] <= cfg.target_error or slices >= 4096:
            break
        slices *= 2
    best.report["target_error"] = cfg.target_error
    best.report["target_error_met"] = bool(
        best.report["phase_invariant_error"] <= cfg.target_error
    )
    return best


def compile_report(u, gens: GeneratorSet, basis: LieBasis,
                   m_values: tuple[int, ...] | None = None,
                   cfg: CompileConfig | None = None) -> dict:
    """Phase-invariant error for each slice count in a doubling sweep.

    The monotone flag allows ten percent slack and ignores noise once both
    errors sit below 1e-8.
    """
    cfg = cfg or CompileConfig()
    m_values = DEFAULTS.m_sweep if m_values is None else tuple(m_values)
    rows = []
    for m in m_values:
        seq = compile(u, gens, basis, replace(cfg, slices=m, target_error=None))
        rows.append(
            {
                "slices": m,
                "frob_error": seq.report["frob_error"],
                "phase_invariant_error": seq.report["phase_invariant_error"],
                "gate_count": seq.report["gate_count"],
            }
        )
    monotone = True
    for prev, cur in zip(rows, rows[1:]):
        a, b = prev["phase_invariant_error"], cur["phase_invariant_error"]
        if b > 1.1 * a and not (a < 1e-8 and b < 1e-8):
            monotone = False
    return {"rows": rows, "monotone": monotone}
