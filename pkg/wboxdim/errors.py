"""Exception hierarchy for wboxdim.

Every error carries the process exit code the CLI maps it to.
"""
from __future__ import annotations


class WboxdimError(Exception):
    """Base class for all wboxdim failures."""

    exit_code = 2

    def diagnostic(self) -> str:
        return f"{type(self).__name__}: {self}"


class InvalidInput(WboxdimError, ValueError):
    """A precondition of an operation does not hold."""


class ParameterError(InvalidInput):
    """(lambda, n_b) does not describe an admissible Weierstrass graph."""


class OutOfRange(ParameterError):
    def __init__(self, lam: float) -> None:
        self.lam = lam
        super().__init__(f"lambda must lie in the open interval (0, 1), got {lam!r}")


class BaseTooSmall(ParameterError):
    def __init__(self, n_b: object) -> None:
        self.n_b = n_b
        super().__init__(f"n_b must be an integer >= 3, got {n_b!r}")


class ContractivityViolation(ParameterError):
    def __init__(self, lam: float, n_b: int) -> None:
        self.lam = lam
        self.n_b = n_b
        super().__init__(f"lambda * n_b must exceed 1, got {lam!r} * {n_b} = {lam * n_b!r}")


class DigitOutOfRange(InvalidInput):
    def __init__(self, digit: int, n_b: int) -> None:
        self.digit = digit
        self.n_b = n_b
        super().__init__(f"digit {digit!r} is outside 0..{n_b - 1}")


class IndexOutOfRange(InvalidInput):
    def __init__(self, j: int, upper: int) -> None:
        self.j = j
        self.upper = upper
        super().__init__(f"index j={j!r} is outside 0..{upper}")


class ToleranceTooSmall(InvalidInput):
    def __init__(self, tol: float, k_terms: int, cap: int) -> None:
        self.tol = tol
        self.k_terms = k_terms
        self.cap = cap
        super().__init__(f"tolerance {tol!r} needs {k_terms} terms, above the cap of {cap}")


class BudgetExceeded(WboxdimError):
    """The requested construction is larger than the configured budget."""

    exit_code = 3

    def __init__(self, what: str, size: int, budget: int) -> None:
        self.what = what
        self.size = size
        self.budget = budget
        super().__init__(f"{what} needs {size} elements, budget is {budget}")
