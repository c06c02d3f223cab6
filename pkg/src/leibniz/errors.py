"""Exception hierarchy shared by every module."""

from __future__ import annotations


class LeibnizError(Exception):
    """Base class for all errors raised by this package."""


class InputError(LeibnizError, ValueError):
    """Malformed or incompatible input: bad shapes, mixed fields, bad files."""


class NotAnIdealError(InputError):
    """A subspace expected to be an ideal is not closed under multiplication.

    ``pair`` names the offending basis products as ``(i, j, side)`` where
    ``side`` is ``"left"`` for ``[e_i, s_j]`` and ``"right"`` for ``[s_j, e_i]``.
    """

    def __init__(self, message: str, pair=None):
        super().__init__(message)
        self.pair = pair


class HypothesisError(LeibnizError):
    """A construction was refused because its mathematical hypothesis fails.

    ``witness`` carries whatever concrete object demonstrates the failure
    (a central element, an escaping derivation, ...), in serializable form.
    """

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class ConsistencyError(LeibnizError, AssertionError):
    """An internal runtime assertion failed; indicates a bug, not bad input."""
