"""Brute-force ordered-tensor oracle.

A degree-d function is held as a full n^d array of block values.  Products,
symmetrization, and integrals are computed by direct enumeration over ordered
tuples and permutations, independently of the sparse multiset implementation
under test.
"""

from __future__ import annotations

from itertools import permutations, product

import numpy as np

from stochint.grid import TimeGrid
from stochint.symtensor import SymCoeffs


def dense_from_sym(f: SymCoeffs) -> np.ndarray:
    """Expand multiset storage to the full ordered array."""
    n = f.grid.n
    out = np.zeros((n,) * f.degree, dtype=complex)
    if f.degree == 0:
        return np.array(f[()], dtype=complex)
    for idx in product(range(n), repeat=f.degree):
        out[idx] = f[tuple(i + 1 for i in idx)]
    return out


def dense_inner(grid: TimeGrid, a: np.ndarray, b: np.ndarray) -> complex:
    """Integral of conj(a)*b over [0,T]^d by summing block volumes."""
    if a.ndim == 0:
        return complex(np.conj(a) * b)
    lengths = np.asarray(grid.lengths)
    vol = np.ones_like(a, dtype=float)
    for axis in range(a.ndim):
        shape = [1] * a.ndim
        shape[axis] = len(lengths)
        vol = vol * lengths.reshape(shape)
    return complex(np.sum(np.conj(a) * b * vol))


def dense_sym_tensor(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Ordered tensor product averaged over all permutations of the slots."""
    prod_ab = np.multiply.outer(a, b)
    d = prod_ab.ndim
    if d == 0:
        return prod_ab
    out = np.zeros_like(prod_ab)
    for perm in permutations(range(d)):
        out += np.transpose(prod_ab, perm)
    return out / _fact(d)


def _fact(d: int) -> int:
    out = 1
    for i in range(2, d + 1):
        out *= i
    return out


def dense_symmetrize_insert(per_cell: list[np.ndarray]) -> np.ndarray:
    """(1/d) sum_k u^(cell of slot k) evaluated on the remaining slots."""
    n = len(per_cell)
    base = per_cell[0].ndim
    d = base + 1
    out = np.zeros((n,) * d, dtype=complex)
    for idx in product(range(n), repeat=d):
        acc = 0.0 + 0.0j
        for slot in range(d):
            rest = idx[:slot] + idx[slot + 1 :]
            u = per_cell[idx[slot]]
            acc += u[rest] if base else complex(u)
        out[idx] = acc / d
    return out
