"""Exact computations with finite-dimensional Leibniz algebras.

The main entry points are re-exported here; see the submodules for the rest:
:mod:`~leibniz.exactla` (fields, matrices, subspaces), :mod:`~leibniz.algebra`,
:mod:`~leibniz.invariants`, :mod:`~leibniz.derivations`,
:mod:`~leibniz.constructions`, :mod:`~leibniz.verify` and :mod:`~leibniz.cli`.
"""

from .algebra import (
    AlgebraHom,
    LeibnizAlgebra,
    certify_hom,
    check_leibniz,
    direct_product,
    is_ideal,
    is_lie,
    is_subalgebra,
    quotient_algebra,
)
from .constructions import Representation, hemisemidirect, hol, hol_lie, witness_nonperfect
from .derivations import (
    derivation_algebra,
    derivation_tower,
    ideal_I,
    is_complete,
    lie_derivations,
    phi_to_DL,
)
from .errors import ConsistencyError, HypothesisError, InputError, LeibnizError, NotAnIdealError
from .exactla import GF, QQ, Field, Matrix, Subspace
from .invariants import (
    center,
    center_of_quotient_trivial,
    derived_subalgebra,
    invariant_report,
    is_perfect,
    is_subideal,
    left_center,
    leibniz_kernel,
    lie_center,
    normalizer,
)
from .verify import VerificationReport, run_suite

__version__ = "0.1.0"

__all__ = [
    "AlgebraHom",
    "ConsistencyError",
    "Field",
    "GF",
    "HypothesisError",
    "InputError",
    "LeibnizAlgebra",
    "LeibnizError",
    "Matrix",
    "NotAnIdealError",
    "QQ",
    "Representation",
    "Subspace",
    "VerificationReport",
    "center",
    "center_of_quotient_trivial",
    "certify_hom",
    "check_leibniz",
    "derivation_algebra",
    "derivation_tower",
    "derived_subalgebra",
    "direct_product",
    "hemisemidirect",
    "hol",
    "hol_lie",
    "ideal_I",
    "invariant_report",
    "is_complete",
    "is_ideal",
    "is_lie",
    "is_perfect",
    "is_subalgebra",
    "is_subideal",
    "left_center",
    "leibniz_kernel",
    "lie_center",
    "lie_derivations",
    "normalizer",
    "phi_to_DL",
    "quotient_algebra",
    "run_suite",
    "witness_nonperfect",
]
