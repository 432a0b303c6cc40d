"""Quantum permutation group invariants of complex Hadamard matrices."""

from .decomposition import FourierDecomposition, decompose, quotient_table, verify_decomposition
from .groups import FiniteGroup, GroupFingerprint, GroupLabel, Monomial, Perm, fingerprint, generate, invariant_factors, match_named
from .hadamard import (
    EquivalenceWitness,
    HadamardMatrix,
    apply_equivalence,
    butson_level,
    catalogue,
    dephase,
    find_equivalence,
    fourier,
    haagerup,
    mq,
    scramble,
    sylvester,
    tao,
    tensor,
    tensor_fourier,
    validate,
)
from .magic import (
    MagicBasis,
    ProjectionGrid,
    block_concat,
    commutation_profile,
    e_sigma,
    magic_basis,
    projection_grid,
    validate_magic_unitary,
)
from .phase import Approx, Exact, phase_mul, phase_quot, snap_to_root, vec_equal_mod_scalar
from .report import analyze
from .squares import MagicSquare, extract_square, normalize, rows_as_permutations

__version__ = "0.1.0"

__all__ = [
    "Approx",
    "EquivalenceWitness",
    "Exact",
    "FiniteGroup",
    "FourierDecomposition",
    "GroupFingerprint",
    "GroupLabel",
    "HadamardMatrix",
    "MagicBasis",
    "MagicSquare",
    "Monomial",
    "Perm",
    "ProjectionGrid",
    "analyze",
    "apply_equivalence",
    "block_concat",
    "butson_level",
    "catalogue",
    "commutation_profile",
    "decompose",
    "dephase",
    "e_sigma",
    "extract_square",
    "find_equivalence",
    "fingerprint",
    "fourier",
    "generate",
    "haagerup",
    "invariant_factors",
    "magic_basis",
    "match_named",
    "mq",
    "normalize",
    "phase_mul",
    "phase_quot",
    "projection_grid",
    "quotient_table",
    "rows_as_permutations",
    "scramble",
    "snap_to_root",
    "sylvester",
    "tao",
    "tensor",
    "tensor_fourier",
    "validate",
    "validate_magic_unitary",
    "vec_equal_mod_scalar",
    "verify_decomposition",
]
