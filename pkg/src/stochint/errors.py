"""Exception types shared across the package."""

from __future__ import annotations


class ShapeMismatchError(ValueError):
    """Operands disagree on grid, degree, or matrix dimension."""


class UnsupportedPointError(ValueError):
    """A time point that is not a grid boundary was requested."""


class TruncationOverflowError(RuntimeError):
    """A strict-policy operation produced a nonzero component above the truncation."""

    def __init__(self, degree: int, message: str | None = None):
        self.degree = degree
        super().__init__(message or f"nonzero component at degree {degree} exceeds the truncation")


class NotAdaptedError(ValueError):
    """A step process violates the support/predictability condition."""

    def __init__(self, cell: int, degree: int | None = None, multiset: tuple[int, ...] | None = None):
        self.cell = cell
        self.degree = degree
        self.multiset = multiset
        detail = f"cell {cell}"
        if degree is not None:
            detail += f", degree {degree}, multiset {multiset}"
        super().__init__(f"process is not adapted at {detail}")


class MeasurabilityError(RuntimeError):
    """Integration was requested for an operator that fails the measurability check."""

    def __init__(self, cell: int, report=None):
        self.cell = cell
        self.report = report
        super().__init__(f"operator on cell {cell} is not measurable at boundary {cell - 1}")


class NotRepresentableError(ValueError):
    """A Fock vector with diagonal support has no discrete chaos expansion."""

    def __init__(self, multiset: tuple[int, ...]):
        self.multiset = multiset
        super().__init__(f"multiset {multiset} has a repeated cell; not representable")
