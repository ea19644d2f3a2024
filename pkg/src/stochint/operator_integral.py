"""Stochastic integrals of operator-valued step functions in C^dim.

The data is a step resolution of identity (mutually orthogonal projections
P_0, P_1..P_n summing to the identity, with P_0 the atom at t = 0) and a
fixed vector M.  The curve t -> E_t M, E_t = P_0 + sum_{i<=k(t)} P_i, is a
martingale-like vector path, and the integral of an operator step process
{A_k} against it is

    integral = sum_k A_k (P_k M).

An operator is *measurable* at boundary j when it acts boundedly on the span
of the future increments {P_i M : i > j} with a norm that stays constant as
the boundary advances, and commutes with every later E_l on that span.  Those
two conditions are exactly what makes the triangle-free norm bound

    ||integral||^2 <= sum_k ||A_k||_{restricted}^2 * mu(cell k)

hold, with mu(cell k) = ||P_k M||^2.  Because the resolutions here are step
functions, the sup over continuous time in the norm-constancy condition
collapses to the finitely many boundaries, which makes the check decidable.

Convention: the value of a process on cell k = (t_{k-1}, t_k] must be
measurable at the *left* boundary k-1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import MeasurabilityError, ShapeMismatchError
from .grid import TimeGrid

#: absolute tolerance for idempotency / commutation checks
COMMUTE_TOL = 1e-10
#: relative tolerance for norm constancy across boundaries
NORM_RTOL = 1e-9
#: increments with norm below this are treated as absent
DEGENERATE_TOL = 1e-12


def _as_matrix(a, dim: int | None = None) -> np.ndarray:
    m = np.asarray(a, dtype=complex)
    if m.ndim != 2 or m.shape[0] != m.shape[1]:
        raise ShapeMismatchError(f"expected a square matrix, got shape {m.shape}")
    if dim is not None and m.shape[0] != dim:
        raise ShapeMismatchError(f"expected dimension {dim}, got {m.shape[0]}")
    return m


def _matrix_json(m: np.ndarray) -> list:
    return [[[v.real, v.imag] for v in row] for row in m]


def _matrix_from_json(obj) -> np.ndarray:
    return np.array([[complex(re, im) for re, im in row] for row in obj], dtype=complex)


@dataclass(frozen=True, eq=False)
class ProjectorMeasure:
    """Step projector-valued measure: atom at 0 plus one projection per cell."""

    grid: TimeGrid
    atom: np.ndarray
    cells: tuple[np.ndarray, ...]
    validate: bool = field(default=True, repr=False)

    def __post_init__(self):
        atom = _as_matrix(self.atom)
        dim = atom.shape[0]
        cells = tuple(_as_matrix(c, dim) for c in self.cells)
        object.__setattr__(self, "atom", atom)
        object.__setattr__(self, "cells", cells)
        if len(cells) != self.grid.n:
            raise ShapeMismatchError(f"expected {self.grid.n} cell projections, got {len(cells)}")
        if self.validate:
            self._check_projections()
        cums = [atom]
        for c in cells:
            cums.append(cums[-1] + c)
        object.__setattr__(self, "_cumulative", tuple(cums))

    def _check_projections(self):
        parts = (self.atom,) + self.cells
        for p in parts:
            if np.linalg.norm(p - p.conj().T) > COMMUTE_TOL:
                raise ValueError("projection is not Hermitian")
            if np.linalg.norm(p @ p - p) > COMMUTE_TOL:
                raise ValueError("projection is not idempotent")
        for i in range(len(parts)):
            for j in range(i + 1, len(parts)):
                if np.linalg.norm(parts[i] @ parts[j]) > COMMUTE_TOL:
                    raise ValueError(f"projections {i} and {j} are not orthogonal")
        total = sum(parts[1:], parts[0])
        if np.linalg.norm(total - np.eye(self.dim)) > COMMUTE_TOL:
            raise ValueError("projections do not sum to the identity")

    @property
    def dim(self) -> int:
        return self.atom.shape[0]

    def cell_projection(self, k: int) -> np.ndarray:
        if not 1 <= k <= self.grid.n:
            raise ValueError(f"cell index {k} out of range 1..{self.grid.n}")
        return self.cells[k - 1]

    def boundary_projection(self, j: int) -> np.ndarray:
        """E at boundary j: atom plus the first j cell projections."""
        if not 0 <= j <= self.grid.n:
            raise ValueError(f"boundary index {j} out of range 0..{self.grid.n}")
        return self._cumulative[j]

    def to_json(self) -> dict:
        return {
            "boundaries": self.grid.to_json(),
            "dim": self.dim,
            "atom": _matrix_json(self.atom),
            "cells": [_matrix_json(c) for c in self.cells],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "ProjectorMeasure":
        grid = TimeGrid.from_json(obj["boundaries"])
        atom = _matrix_from_json(obj["atom"])
        cells = tuple(_matrix_from_json(c) for c in obj["cells"])
        return cls(grid, atom, cells)


@dataclass(frozen=True, eq=False)
class VectorMartingale:
    """A fixed vector transported by a projector measure: t -> E_t M."""

    measure: ProjectorMeasure
    vector: np.ndarray

    def __post_init__(self):
        v = np.asarray(self.vector, dtype=complex).reshape(-1)
        if v.shape[0] != self.measure.dim:
            raise ShapeMismatchError("vector dimension does not match the measure")
        if np.linalg.norm(v) == 0.0:
            raise ValueError("the martingale vector must be nonzero")
        object.__setattr__(self, "vector", v)
        incs = tuple(p @ v for p in self.measure.cells)
        object.__setattr__(self, "_increments", incs)

    @property
    def grid(self) -> TimeGrid:
        return self.measure.grid

    @property
    def dim(self) -> int:
        return self.measure.dim

    def increment(self, k: int) -> np.ndarray:
        """P_k M, the martingale increment over cell k."""
        if not 1 <= k <= self.grid.n:
            raise ValueError(f"cell index {k} out of range 1..{self.grid.n}")
        return self._increments[k - 1]

    def mu(self, k: int) -> float:
        """Scalar measure of cell k: squared norm of the increment."""
        return float(np.linalg.norm(self.increment(k)) ** 2)

    def mu_total(self) -> float:
        return sum(self.mu(k) for k in range(1, self.grid.n + 1))

    def to_json(self) -> dict:
        return {
            "measure": self.measure.to_json(),
            "vector": [[v.real, v.imag] for v in self.vector],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "VectorMartingale":
        measure = ProjectorMeasure.from_json(obj["measure"])
        vector = np.array([complex(re, im) for re, im in obj["vector"]])
        return cls(measure, vector)


@dataclass(frozen=True, eq=False)
class OperatorStepProcess:
    """One operator per grid cell; the value at t = 0 is never read."""

    grid: TimeGrid
    operators: tuple[np.ndarray, ...]

    def __post_init__(self):
        ops = tuple(_as_matrix(a) for a in self.operators)
        if len(ops) != self.grid.n:
            raise ShapeMismatchError(f"expected {self.grid.n} operators, got {len(ops)}")
        dims = {a.shape[0] for a in ops}
        if len(dims) > 1:
            raise ShapeMismatchError("operators have mixed dimensions")
        object.__setattr__(self, "operators", ops)

    @property
    def dim(self) -> int:
        return self.operators[0].shape[0]

    def operator(self, k: int) -> np.ndarray:
        if not 1 <= k <= self.grid.n:
            raise ValueError(f"cell index {k} out of range 1..{self.grid.n}")
        return self.operators[k - 1]

    def to_json(self) -> dict:
        return {
            "boundaries": self.grid.to_json(),
            "operators": [_matrix_json(a) for a in self.operators],
        }

    @classmethod
    def from_json(cls, obj: dict) -> "OperatorStepProcess":
        grid = TimeGrid.from_json(obj["boundaries"])
        ops = tuple(_matrix_from_json(a) for a in obj["operators"])
        return cls(grid, ops)


def future_increment_span(mart: VectorMartingale, j: int) -> np.ndarray:
    """Orthonormal basis (columns) of span{P_i M : i > j}.

    The increments are mutually orthogonal already, so normalization
    suffices; increments with norm below DEGENERATE_TOL are dropped.  May be
    empty (dim x 0).
    """
    if not 0 <= j <= mart.grid.n:
        raise ValueError(f"boundary index {j} out of range 0..{mart.grid.n}")
    cols = []
    for i in range(j + 1, mart.grid.n + 1):
        v = mart.increment(i)
        nv = np.linalg.norm(v)
        if nv >= DEGENERATE_TOL:
            cols.append(v / nv)
    if not cols:
        return np.zeros((mart.dim, 0), dtype=complex)
    return np.column_stack(cols)


def restricted_norm(a: np.ndarray, basis: np.ndarray) -> float:
    """Operator norm of A restricted to the subspace spanned by the basis."""
    a = _as_matrix(a)
    if basis.shape[1] == 0:
        return 0.0
    if basis.shape[0] != a.shape[0]:
        raise ShapeMismatchError("basis dimension does not match the operator")
    return float(np.linalg.norm(a @ basis, 2))


@dataclass(frozen=True)
class MeasurabilityReport:
    """Verdict plus the worst violation of each condition."""

    ok: bool
    boundary: int
    norm_deviation: float
    commutator_deviation: float
    restricted_norms: tuple[float, ...]

    def __bool__(self) -> bool:
        return self.ok


def check_measurable(
    a: np.ndarray,
    mart: VectorMartingale,
    j: int,
    tol: float = COMMUTE_TOL,
    norm_rtol: float = NORM_RTOL,
) -> MeasurabilityReport:
    """Decide measurability of `a` at boundary j.

    Condition (i): the restricted norm over the future-increment span is the
    same at every later boundary (relative tolerance `norm_rtol`; boundaries
    whose span is empty are skipped).  Condition (ii): for every basis vector
    g of the span at j and every boundary l >= j, ||A E_l g - E_l A g|| <= tol.
    Boundary j = n is vacuously measurable.
    """
    a = _as_matrix(a, mart.dim)
    n = mart.grid.n
    if not 0 <= j <= n:
        raise ValueError(f"boundary index {j} out of range 0..{n}")
    if j == n:
        return MeasurabilityReport(True, j, 0.0, 0.0, ())

    norms = []
    for l in range(j, n):
        basis_l = future_increment_span(mart, l)
        if basis_l.shape[1] == 0:
            continue
        norms.append(restricted_norm(a, basis_l))
    if norms:
        ref = max(norms)
        norm_dev = ref - min(norms)
        norm_ok = norm_dev <= norm_rtol * max(1.0, ref)
    else:
        norm_dev = 0.0
        norm_ok = True

    basis = future_increment_span(mart, j)
    comm_dev = 0.0
    for l in range(j, n + 1):
        e = mart.measure.boundary_projection(l)
        for g in basis.T:
            comm_dev = max(comm_dev, float(np.linalg.norm(a @ (e @ g) - e @ (a @ g))))
    comm_ok = comm_dev <= tol

    return MeasurabilityReport(norm_ok and comm_ok, j, norm_dev, comm_dev, tuple(norms))


def stochastic_integral(
    proc: OperatorStepProcess, mart: VectorMartingale, enforce: bool = True
) -> np.ndarray:
    """sum_k A_k (P_k M).  With `enforce`, every A_k must be measurable at k-1."""
    if proc.grid != mart.grid:
        raise ShapeMismatchError("process and martingale live on different grids")
    if proc.dim != mart.dim:
        raise ShapeMismatchError("process dimension does not match the martingale")
    out = np.zeros(mart.dim, dtype=complex)
    for k in range(1, mart.grid.n + 1):
        a = proc.operator(k)
        if enforce:
            report = check_measurable(a, mart, k - 1)
            if not report.ok:
                raise MeasurabilityError(k, report)
        out += a @ mart.increment(k)
    return out


def process_quasinorm(proc: OperatorStepProcess, mart: VectorMartingale) -> float:
    """sqrt(sum_k ||A_k||_{restricted at k-1}^2 * mu(cell k))."""
    if proc.grid != mart.grid:
        raise ShapeMismatchError("process and martingale live on different grids")
    acc = 0.0
    for k in range(1, mart.grid.n + 1):
        basis = future_increment_span(mart, k - 1)
        acc += restricted_norm(proc.operator(k), basis) ** 2 * mart.mu(k)
    return float(np.sqrt(acc))


def integral_norm_bound(
    proc: OperatorStepProcess, mart: VectorMartingale, enforce: bool = True
) -> tuple[float, float]:
    """(||integral||^2, quasinorm^2); callers assert lhs <= rhs + 1e-10."""
    lhs = float(np.linalg.norm(stochastic_integral(proc, mart, enforce=enforce)) ** 2)
    rhs = process_quasinorm(proc, mart) ** 2
    return lhs, rhs


def unitary_transport(
    u: np.ndarray, proc: OperatorStepProcess, mart: VectorMartingale, enforce: bool = True
) -> tuple[np.ndarray, np.ndarray]:
    """Compare U(integral) with the integral of {U A_k U^-1} against (UEU^-1, UM)."""
    u = _as_matrix(u, mart.dim)
    if np.linalg.norm(u.conj().T @ u - np.eye(u.shape[0])) >= 1e-10:
        raise ValueError("matrix is not unitary")
    left = u @ stochastic_integral(proc, mart, enforce=enforce)
    uh = u.conj().T
    measure = ProjectorMeasure(
        mart.grid,
        u @ mart.measure.atom @ uh,
        tuple(u @ p @ uh for p in mart.measure.cells),
    )
    transported = VectorMartingale(measure, u @ mart.vector)
    conj_proc = OperatorStepProcess(proc.grid, tuple(u @ a @ uh for a in proc.operators))
    right = stochastic_integral(conj_proc, transported, enforce=enforce)
    return left, right
