"""Exception hierarchy shared by all pipelines."""

from __future__ import annotations


class PoshError(Exception):
    """Base class for all errors raised by this package."""


class InputError(PoshError):
    """Malformed or out-of-domain input (CLI exit code 2)."""


class StructuralError(PoshError):
    """A data structure violates its own invariants (malformed rotation, unplaced vertex, ...)."""


class NonPlanarError(InputError):
    """Input graph is not planar.  Carries an optional Kuratowski witness."""

    def __init__(self, message: str = "graph is not planar", witness=None):
        super().__init__(message)
        self.witness = witness


class NotBipartiteError(InputError):
    """Input graph is not bipartite.  Carries an odd-cycle witness (vertex list)."""

    def __init__(self, message: str = "graph is not bipartite", odd_cycle=None):
        super().__init__(message)
        self.odd_cycle = odd_cycle


class OneSidedViolation(PoshError):
    """A Hamiltonian order fails the one-sidedness test.  ``index`` is the first bad position j."""

    def __init__(self, message: str, index: int):
        super().__init__(message)
        self.index = index


class InvariantError(PoshError):
    """An internal pipeline invariant failed; indicates a bug, not bad input."""


class CertificationError(PoshError):
    """A produced drawing failed exact verification (CLI exit code 1)."""
