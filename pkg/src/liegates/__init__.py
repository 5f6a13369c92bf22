"""Generator families, Lie-closure certification and gate-sequence compilation.

The package builds the anti-Hermitian generator sets behind universal gate
constructions on qubits (order 2) and qudits (order l), certifies their
commutation relations and closure dimensions, evaluates an exact symbolic
monomial algebra against the dense matrices, and compiles arbitrary
unitaries into sequences of generator exponentials with a quantified,
global-phase-invariant error.
"""

from .config import DEFAULTS, Defaults
from .compiler import (
    CompileConfig,
    GateSequence,
    compile,
    compile_report,
    evaluate,
    gate_matrix,
    merge_adjacent,
)
from .generators import (
    Generator,
    GeneratorSet,
    clifford_gammas,
    clifford_plus_u,
    gamma_u,
    hermitian_split,
    locality,
    pauli,
    relation_report,
    tau,
    torus_T,
    torus_split_set,
    two_local_clifford_set,
    two_local_torus_set,
    weyl_pair,
)
from .lieclosure import (
    LieBasis,
    MembershipResult,
    Recipe,
    build_family,
    closure,
    dimension_table,
    membership,
    predicted_dimension,
    spin_subgroup_check,
)
from .linalg import (
    anticommutator,
    commutator,
    error_metrics,
    expm_antiherm,
    frob_inner,
    herm_eig,
    is_anti_hermitian,
    is_hermitian,
    is_unitary,
    logm_unitary,
    phase_invariant_dist,
    principal_sqrt_unitary,
    random_anti_hermitian,
    random_unitary,
    tensor,
    unitary_eig,
)
from .symalg import (
    Monomial,
    identity_monomial,
    mono_eval,
    mono_inv,
    mono_mul,
    mono_pow,
    parse_monomial,
    render_monomial,
    span_dimension,
)
from . import errors

__all__ = [
    "DEFAULTS",
    "Defaults",
    "CompileConfig",
    "GateSequence",
    "Generator",
    "GeneratorSet",
    "LieBasis",
    "MembershipResult",
    "Monomial",
    "Recipe",
    "anticommutator",
    "build_family",
    "clifford_gammas",
    "clifford_plus_u",
    "closure",
    "commutator",
    "compile",
    "compile_report",
    "dimension_table",
    "error_metrics",
    "errors",
    "evaluate",
    "expm_antiherm",
    "frob_inner",
    "gamma_u",
    "gate_matrix",
    "herm_eig",
    "hermitian_split",
    "identity_monomial",
    "is_anti_hermitian",
    "is_hermitian",
    "is_unitary",
    "locality",
    "logm_unitary",
    "membership",
    "merge_adjacent",
    "mono_eval",
    "mono_inv",
    "mono_mul",
    "mono_pow",
    "parse_monomial",
    "pauli",
    "phase_invariant_dist",
    "predicted_dimension",
    "principal_sqrt_unitary",
    "random_anti_hermitian",
    "random_unitary",
    "relation_report",
    "render_monomial",
    "span_dimension",
    "spin_subgroup_check",
    "tau",
    "tensor",
    "torus_T",
    "torus_split_set",
    "two_local_clifford_set",
    "two_local_torus_set",
    "unitary_eig",
    "weyl_pair",
]
__version__ = "0.1.0"
