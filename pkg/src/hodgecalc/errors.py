"""Exception hierarchy shared by every module.

Each class carries a short ``code`` string so the CLI can emit
machine-readable diagnostics without string matching.
"""

from __future__ import annotations


class HodgeError(Exception):
    code = "error"

    def to_dict(self) -> dict:
        return {"error": self.code, "message": str(self)}


class ArgumentError(HodgeError, ValueError):
    code = "argument"


class RangeError(HodgeError, IndexError):
    code = "range"


class CodimensionError(ArgumentError):
    code = "codimension"


class UnsupportedError(HodgeError):
    code = "unsupported"


class HypothesisError(HodgeError):
    """A characteristic or open-question hypothesis needed by an operation fails."""

    code = "hypothesis"


class InconsistencyError(HodgeError):
    """Supplied dimension data contradicts a spectral-sequence upper bound."""

    code = "inconsistency"


class InvalidFanError(HodgeError, ValueError):
    code = "invalid-fan"
