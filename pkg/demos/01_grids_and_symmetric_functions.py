#!/usr/bin/env python3
# Time grids and sparse symmetric functions: the data everything else builds on.

from stochint import (
    block_weight,
    cell_indicator,
    locate,
    ones,
    refine,
    sym_inner,
    sym_tensor,
    symmetrize_insert,
    uniform_grid,
)
from stochint import symtensor

print("== grids ==")
g = uniform_grid(1.0, 4)
print("boundaries:", g.boundaries)
print("cell lengths:", g.lengths)
print("locate(0.5) ->", locate(g, 0.5), "(right-closed cells)")
print("locate(0.5001) ->", locate(g, 0.5001))
print("locate(0.0) ->", locate(g, 0.0), "(the atom at the origin)")
print("refined:", refine(g, 2).boundaries)

print()
print("== symmetric coefficients ==")
# a degree-2 function is stored on cell multisets; the weight of a multiset is
# (number of ordered tuples in the block) x (block volume)
g2 = uniform_grid(1.0, 2)
for ms in [(1, 1), (1, 2), (2, 2)]:
    print(f"weight{ms} =", block_weight(g2, ms))

f = ones(g2, 2)
print("||all-ones deg 2||^2 =", sym_inner(f, f).real, "(the unit square has volume 1)")

print()
print("== symmetric tensor products ==")
e1, e2 = cell_indicator(g2, 1), cell_indicator(g2, 2)
t = sym_tensor(e1, e2)
print("e1 (x) e2 entries:", dict(t.values))
print("  off-diagonal value 1/2: the symmetrization averages the two slot orders")
t = sym_tensor(e1, e1)
print("e1 (x) e1 entries:", dict(t.values))

print()
print("== symmetrization of a per-cell family ==")
# one degree-1 value per cell; slot averaging produces a degree-2 function
u = [symtensor.zero(g2, 1), e1]
s = symmetrize_insert(u)
print("insert entries:", dict(s.values))
print("  value at {1,2} is (0 + 1)/2; both diagonals vanish")
