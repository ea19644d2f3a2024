"""Truncated symmetric Fock space over L^2([0, T]).

A :class:`FockVector` holds one symmetric-coefficient component per degree
0..N, with the weighted norm ||f||^2 = sum_d d! * ||f_d||^2.  The module also
provides the Wick product (degreewise symmetric-tensor convolution), the
family of time projections that keep only components supported up to a given
boundary, and the degree-1 increment vectors those projections generate.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import factorial
from typing import Sequence

from .errors import ShapeMismatchError, TruncationOverflowError
from .grid import TimeGrid
from . import symtensor
from .symtensor import SymCoeffs

#: Wick-product policies: "strict" raises when a nonzero component would be
#: cut by the output truncation, "drop" silently discards it.
POLICIES = ("strict", "drop")


@dataclass(frozen=True, eq=False)
class FockVector:
    grid: TimeGrid
    components: tuple[SymCoeffs, ...]

    def __post_init__(self):
        if not self.components:
            raise ValueError("need at least the degree-0 component")
        for d, comp in enumerate(self.components):
            if comp.grid != self.grid:
                raise ShapeMismatchError("component grid mismatch")
            if comp.degree != d:
                raise ShapeMismatchError(f"component {d} has degree {comp.degree}")

    @property
    def truncation(self) -> int:
        return len(self.components) - 1

    def component(self, d: int) -> SymCoeffs:
        """Degree-d part; degrees above the truncation are zero."""
        if d <= self.truncation:
            return self.components[d]
        return symtensor.zero(self.grid, d)

    def max_degree(self) -> int:
        """Highest degree with a nonzero component (-1 for the zero vector)."""
        return max((d for d, c in enumerate(self.components) if not c.is_zero()), default=-1)

    def __add__(self, other: "FockVector") -> "FockVector":
        if other.grid != self.grid:
            raise ShapeMismatchError("operands live on different grids")
        top = max(self.truncation, other.truncation)
        return FockVector(self.grid, tuple(self.component(d) + other.component(d) for d in range(top + 1)))

    def __sub__(self, other: "FockVector") -> "FockVector":
        return self + (-1.0) * other

    def __mul__(self, scalar: complex) -> "FockVector":
        return FockVector(self.grid, tuple(scalar * c for c in self.components))

    __rmul__ = __mul__

    def pad(self, truncation: int) -> "FockVector":
        if truncation < self.truncation:
            raise ValueError("pad cannot shrink the truncation")
        extra = tuple(symtensor.zero(self.grid, d) for d in range(self.truncation + 1, truncation + 1))
        return FockVector(self.grid, self.components + extra)

    def to_json(self) -> dict:
        return {"truncation": self.truncation, "components": [c.to_json() for c in self.components]}

    @classmethod
    def from_json(cls, grid: TimeGrid, obj: dict) -> "FockVector":
        comps = tuple(SymCoeffs.from_json(grid, c) for c in obj["components"])
        return cls(grid, comps)


def from_components(components: Sequence[SymCoeffs]) -> FockVector:
    return FockVector(components[0].grid, tuple(components))


def vacuum(grid: TimeGrid, truncation: int = 0) -> FockVector:
    comps = [symtensor.scalar(grid, 1.0)]
    comps += [symtensor.zero(grid, d) for d in range(1, truncation + 1)]
    return FockVector(grid, tuple(comps))


def zero_vector(grid: TimeGrid, truncation: int = 0) -> FockVector:
    comps = tuple(symtensor.zero(grid, d) for d in range(truncation + 1))
    return FockVector(grid, comps)


def cell_increment(grid: TimeGrid, k: int) -> FockVector:
    """(0, indicator of cell k, 0, ...); squared norm equals the cell length."""
    return FockVector(grid, (symtensor.zero(grid, 0), symtensor.cell_indicator(grid, k)))


def indicator_vector(grid: TimeGrid, upto: int | None = None) -> FockVector:
    """(0, indicator of [0, t_j], 0, ...) for a boundary index j (default n)."""
    j = grid.n if upto is None else upto
    if not 0 <= j <= grid.n:
        raise ValueError(f"boundary index {j} out of range 0..{grid.n}")
    deg1 = SymCoeffs(grid, 1, {(k,): 1.0 + 0.0j for k in range(1, j + 1)})
    return FockVector(grid, (symtensor.zero(grid, 0), deg1))


def fock_inner(f: FockVector, g: FockVector) -> complex:
    """sum_d d! <f_d, g_d>; truncations may differ (missing degrees are zero)."""
    if f.grid != g.grid:
        raise ShapeMismatchError("operands live on different grids")
    top = min(f.truncation, g.truncation)
    return sum(
        factorial(d) * symtensor.sym_inner(f.components[d], g.components[d]) for d in range(top + 1)
    )


def norm2(f: FockVector) -> float:
    return sum(factorial(d) * symtensor.norm2(c) for d, c in enumerate(f.components))


def entrywise_distance(f: FockVector, g: FockVector) -> float:
    """Largest coefficient difference across all degrees and multisets."""
    if f.grid != g.grid:
        raise ShapeMismatchError("operands live on different grids")
    top = max(f.truncation, g.truncation)
    return max(symtensor.entrywise_distance(f.component(d), g.component(d)) for d in range(top + 1))


def wick(f: FockVector, g: FockVector, policy: str = "strict", truncation: int | None = None) -> FockVector:
    """Wick product: degree-n output is sum_m f_m (x) g_{n-m} (symmetric tensor).

    The output truncation defaults to max of the operands'.  Under "strict" a
    nonzero component above it raises; under "drop" it is discarded.
    """
    if policy not in POLICIES:
        raise ValueError(f"unknown policy {policy!r}")
    if f.grid != g.grid:
        raise ShapeMismatchError("operands live on different grids")
    out_trunc = max(f.truncation, g.truncation) if truncation is None else truncation
    full = f.truncation + g.truncation
    comps = []
    for n in range(min(out_trunc, full) + 1):
        acc = symtensor.zero(f.grid, n)
        for m in range(n + 1):
            fm = f.component(m) if m <= f.truncation else None
            gn = g.component(n - m) if n - m <= g.truncation else None
            if fm is None or gn is None or fm.is_zero() or gn.is_zero():
                continue
            acc = acc + symtensor.sym_tensor(fm, gn)
        comps.append(acc)
    comps += [symtensor.zero(f.grid, d) for d in range(len(comps), out_trunc + 1)]
    if policy == "strict":
        for n in range(out_trunc + 1, full + 1):
            acc = symtensor.zero(f.grid, n)
            for m in range(max(0, n - g.truncation), min(n, f.truncation) + 1):
                fm, gn = f.component(m), g.component(n - m)
                if fm.is_zero() or gn.is_zero():
                    continue
                acc = acc + symtensor.sym_tensor(fm, gn)
            if not acc.is_zero():
                raise TruncationOverflowError(n)
    return FockVector(f.grid, tuple(comps))


def resolution_project(f: FockVector, j: int) -> FockVector:
    """Keep multisets supported on cells 1..j (boundary index j); zero the rest.

    Offered at grid boundaries only: interior times would need indicators that
    are not piecewise constant on the grid, so refine instead.  j = n is the
    identity, j = 0 keeps only the degree-0 part.
    """
    if not 0 <= j <= f.grid.n:
        raise ValueError(f"boundary index {j} out of range 0..{f.grid.n}")
    comps = [f.components[0]]
    for d in range(1, f.truncation + 1):
        kept = {ms: v for ms, v in f.components[d].values.items() if ms[-1] <= j}
        comps.append(SymCoeffs(f.grid, d, kept))
    return FockVector(f.grid, tuple(comps))


def refine_vector(f: FockVector, factor: int) -> FockVector:
    """Re-express f on the refined grid (same element of the Fock space)."""
    comps = tuple(symtensor.refine_values(c, factor) for c in f.components)
    return FockVector(comps[0].grid, comps)
