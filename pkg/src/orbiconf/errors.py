"""Exception types shared across the package."""

from __future__ import annotations


class BudgetExceeded(RuntimeError):
    """A search or closure ran past its configured budget.

    Callers that produce verdicts turn this into an *inconclusive* outcome;
    it must never be read as a negative answer.
    """

    def __init__(self, what: str, budget: int, explored: int | None = None):
        self.what = what
        self.budget = budget
        self.explored = explored
        msg = f"{what}: budget of {budget} exceeded"
        if explored is not None:
            msg += f" after {explored} steps"
        super().__init__(msg)


class ConfigurationError(ValueError):
    """An incidence structure failed the configuration axioms."""

    def __init__(self, message: str, report=None):
        super().__init__(message)
        self.report = report


class CoveringError(ValueError):
    """A proposed point map is not a covering; ``witness`` names the culprit."""

    def __init__(self, message: str, witness=None):
        super().__init__(message)
        self.witness = witness


class OrbiStructureError(ValueError):
    """Weighted (orbi-) incidence data violates a structural invariant."""


class ParseError(ValueError):
    def __init__(self, message: str, lineno: int | None = None):
        self.lineno = lineno
        if lineno is not None:
            message = f"line {lineno}: {message}"
        super().__init__(message)
