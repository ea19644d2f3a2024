import numpy as np
import pytest

from stochint import fock, symtensor
from stochint.errors import NotAdaptedError, TruncationOverflowError
from stochint.fock import (
    FockVector,
    cell_increment,
    entrywise_distance,
    indicator_vector,
    vacuum,
    zero_vector,
)
from stochint.fock_ito import (
    FockStepProcess,
    check_adapted,
    fock_basis,
    ito_isometry,
    ito_symmetrize,
    ito_wick,
    skorohod_integral,
    skorohod_norm,
    wick_operator_process,
)
from stochint.grid import uniform_grid
from stochint.operator_integral import check_measurable, stochastic_integral
from stochint.randomgen import generator, random_adapted_process, random_grid

G2 = uniform_grid(1.0, 2)


def constant_process(grid, value: FockVector) -> FockStepProcess:
    return FockStepProcess(grid, (value,) * grid.n)


def test_adapted_verdicts():
    assert check_adapted(constant_process(G2, vacuum(G2, 1))).ok

    own_cell = FockStepProcess(G2, (cell_increment(G2, 1), zero_vector(G2, 1)))
    report = check_adapted(own_cell)
    assert not report.ok
    assert (report.cell, report.degree, report.multiset) == (1, 1, (1,))

    past_cell = FockStepProcess(G2, (zero_vector(G2, 1), cell_increment(G2, 1)))
    assert check_adapted(past_cell).ok


def test_ito_of_constant_one_is_the_indicator():
    out = ito_wick(constant_process(G2, vacuum(G2, 1)))
    assert entrywise_distance(out, indicator_vector(G2)) == 0.0


def test_ito_worked_example():
    proc = FockStepProcess(G2, (zero_vector(G2, 2), cell_increment(G2, 1).pad(2)))
    out = ito_wick(proc)
    assert out.component(2)[(1, 2)] == pytest.approx(0.5)
    assert fock.norm2(out) == pytest.approx(0.25)


def test_ito_zero():
    out = ito_wick(constant_process(G2, zero_vector(G2, 1)))
    assert fock.norm2(out) == 0.0


def test_ito_rejects_non_adapted():
    own_cell = FockStepProcess(G2, (cell_increment(G2, 1), zero_vector(G2, 1)))
    with pytest.raises(NotAdaptedError):
        ito_wick(own_cell)
    with pytest.raises(NotAdaptedError):
        ito_symmetrize(own_cell)


def test_ito_overflow_without_headroom():
    # nonzero top-degree component cannot absorb the extra increment
    deg1 = FockVector(G2, (symtensor.zero(G2, 0), symtensor.cell_indicator(G2, 1)))
    proc = FockStepProcess(G2, (zero_vector(G2, 1), deg1))
    with pytest.raises(TruncationOverflowError):
        ito_wick(proc)


def test_symmetrize_route_examples():
    proc = constant_process(G2, vacuum(G2, 1))
    assert entrywise_distance(ito_symmetrize(proc), indicator_vector(G2)) == 0.0

    proc = FockStepProcess(G2, (zero_vector(G2, 2), cell_increment(G2, 1).pad(2)))
    assert ito_symmetrize(proc).component(2)[(1, 2)] == pytest.approx(0.5)


def test_symmetrize_shifts_degrees():
    g3 = uniform_grid(1.0, 3)
    deg3 = symtensor.SymCoeffs(g3, 3, {(1, 1, 2): 1.0})
    value = FockVector(
        g3,
        (symtensor.zero(g3, 0), symtensor.zero(g3, 1), symtensor.zero(g3, 2), deg3),
    )
    proc = FockStepProcess(g3, (zero_vector(g3, 3), zero_vector(g3, 3), value))
    out = ito_symmetrize(proc)
    assert all(out.component(d).is_zero() for d in range(4))
    assert not out.component(4).is_zero()


def test_route_equivalence_random():
    for seed in range(150):
        rng = generator(1200 + seed)
        grid = random_grid(rng, int(rng.integers(1, 7)))
        proc = random_adapted_process(
            rng, grid, 4, int(rng.integers(0, 4)), off_diagonal=bool(rng.integers(0, 2))
        )
        assert entrywise_distance(ito_wick(proc), ito_symmetrize(proc)) < 1e-12


def test_isometry_examples_and_random():
    proc = constant_process(G2, vacuum(G2, 1))
    assert ito_isometry(proc) == (pytest.approx(1.0), pytest.approx(1.0))

    proc = FockStepProcess(G2, (zero_vector(G2, 2), cell_increment(G2, 1).pad(2)))
    lhs, rhs = ito_isometry(proc)
    assert (lhs, rhs) == (pytest.approx(0.25), pytest.approx(0.25))

    zero = constant_process(G2, zero_vector(G2, 1))
    assert ito_isometry(zero) == (0.0, 0.0)

    for seed in range(100):
        rng = generator(1300 + seed)
        grid = random_grid(rng, int(rng.integers(1, 7)))
        proc = random_adapted_process(rng, grid, 4, int(rng.integers(0, 4)))
        lhs, rhs = ito_isometry(proc)
        assert abs(lhs - rhs) <= 1e-12 * max(1.0, rhs)


def test_skorohod_extends_ito():
    for seed in range(50):
        rng = generator(1400 + seed)
        grid = random_grid(rng, int(rng.integers(1, 6)))
        proc = random_adapted_process(rng, grid, 3, int(rng.integers(0, 3)))
        assert entrywise_distance(skorohod_integral(proc), ito_symmetrize(proc)) <= 1e-15


def test_skorohod_diagonal_example():
    proc = FockStepProcess(G2, (cell_increment(G2, 1), zero_vector(G2, 1)))
    out = skorohod_integral(proc)
    assert out.component(2)[(1, 1)] == pytest.approx(1.0)
    assert out.component(2)[(1, 2)] == 0.0
    assert skorohod_norm(proc) ** 2 == pytest.approx(0.5)


def test_skorohod_zero():
    proc = constant_process(G2, zero_vector(G2, 1))
    assert skorohod_norm(proc) == 0.0


def test_adapted_off_diagonal_gives_off_diagonal_integral():
    for seed in range(50):
        rng = generator(1500 + seed)
        grid = random_grid(rng, int(rng.integers(2, 7)))
        proc = random_adapted_process(rng, grid, 4, 3, off_diagonal=True)
        out = ito_wick(proc)
        assert all(c.is_off_diagonal() for c in out.components)


def test_fock_basis_size():
    from math import comb

    grid = uniform_grid(1.0, 6)
    basis = fock_basis(grid, 4)
    assert len(basis) == sum(comb(6 + d - 1, d) for d in range(5))  # 210


def test_wick_operator_identity_for_vacuum():
    proc = constant_process(G2, vacuum(G2, 1))
    realization = wick_operator_process(proc)
    for k in (1, 2):
        np.testing.assert_allclose(
            realization.process.operator(k), np.eye(realization.dim), atol=1e-14
        )
    vec = stochastic_integral(realization.process, realization.martingale, enforce=False)
    out = realization.coords_to_vector(vec)
    assert entrywise_distance(out, indicator_vector(G2)) < 1e-14


def test_wick_operator_worked_example():
    proc = FockStepProcess(G2, (zero_vector(G2, 2), cell_increment(G2, 1).pad(2)))
    realization = wick_operator_process(proc)
    vec = stochastic_integral(realization.process, realization.martingale, enforce=False)
    out = realization.coords_to_vector(vec)
    assert out.component(2)[(1, 2)] == pytest.approx(0.5)
    assert entrywise_distance(out, ito_wick(proc)) < 1e-14


def test_wick_operator_measurability_and_bridge_random():
    for seed in range(20):
        rng = generator(1600 + seed)
        grid = random_grid(rng, int(rng.integers(2, 5)))
        max_deg = int(rng.integers(0, 3))
        proc = random_adapted_process(rng, grid, max_deg + 1, max_deg)
        realization = wick_operator_process(proc)
        for k in range(1, grid.n + 1):
            assert check_measurable(
                realization.process.operator(k), realization.martingale, k - 1
            ).ok
        vec = stochastic_integral(realization.process, realization.martingale, enforce=False)
        assert entrywise_distance(realization.coords_to_vector(vec), ito_wick(proc)) < 1e-12


def test_wick_operator_needs_headroom():
    deg1 = FockVector(G2, (symtensor.zero(G2, 0), symtensor.cell_indicator(G2, 1)))
    proc = FockStepProcess(G2, (zero_vector(G2, 1), deg1))
    with pytest.raises(TruncationOverflowError):
        wick_operator_process(proc)


def test_process_json_roundtrip():
    rng = generator(37)
    grid = random_grid(rng, 4)
    proc = random_adapted_process(rng, grid, 3, 2)
    back = FockStepProcess.from_json(grid, proc.to_json())
    for k in range(1, grid.n + 1):
        assert entrywise_distance(back.value(k), proc.value(k)) == 0.0
