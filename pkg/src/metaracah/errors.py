"""Exceptions shared across the package."""

from __future__ import annotations


class DegenerateParameters(Exception):
    """Raised when a parameter choice makes a required denominator vanish.

    Carries the list of offending expressions so callers can report which
    genericity condition failed.
    """

    def __init__(self, offenders):
        if isinstance(offenders, str):
            offenders = [offenders]
        self.offenders = list(offenders)
        super().__init__("; ".join(self.offenders))


class PreconditionViolated(Exception):
    """An argument combination outside an operation's stated domain."""


class NondegenerateSpectrumViolated(Exception):
    """An eigenspace solve did not produce the expected one-dimensional space."""
