"""Exception types and resource guards."""

import os

DEFAULT_MAX_QUBITS = 12
MAX_QUBITS_ENV = "SYMSEP_MAX_QUBITS"


class SymsepError(Exception):
    """Base class for all errors raised by symsep."""


class StateError(SymsepError, ValueError):
    """Invalid state, dimension mismatch or violated precondition."""


class SymmetryError(StateError):
    """Input lacks a symmetry that the operation requires."""


class GuardError(SymsepError):
    """A resource guard would be exceeded."""


def max_qubits():
    """Qubit-equivalent size limit for dense pure-state sweeps.

    Reads ``SYMSEP_MAX_QUBITS`` so the limit can be raised for a single run.
    """
    raw = os.environ.get(MAX_QUBITS_ENV)
    if raw is None:
        return DEFAULT_MAX_QUBITS
    try:
        value = int(raw)
    except ValueError as exc:
        raise GuardError(f"{MAX_QUBITS_ENV} must be an integer, got {raw!r}") from exc
    if value < 1:
        raise GuardError(f"{MAX_QUBITS_ENV} must be positive, got {value}")
    return value


def check_guard(condition, message):
    if not condition:
        raise GuardError(message)
