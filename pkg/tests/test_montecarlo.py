import csv

import numpy as np
import pytest

from stochint.grid import uniform_grid
from stochint.montecarlo import (
    brownian_ensemble,
    export_csv,
    hermite_polynomial,
    hermite_reference,
    iterated_samples,
    linear_samples,
    mean_and_stderr,
    path_seeds,
    poisson_ensemble,
)
from stochint.randomgen import generator, random_sym_coeffs
from stochint import symtensor

G8 = uniform_grid(1.0, 8)


def test_same_seed_bitwise_identical():
    a = brownian_ensemble(G8, 500, 7)
    b = brownian_ensemble(G8, 500, 7)
    assert np.array_equal(a.increments, b.increments)


def test_different_seeds_differ():
    a = brownian_ensemble(G8, 100, 7)
    b = brownian_ensemble(G8, 100, 8)
    assert not np.array_equal(a.increments, b.increments)


def test_paths_are_order_independent():
    # path p depends only on (seed, p): a larger ensemble extends a smaller one
    small = brownian_ensemble(G8, 50, 3)
    large = brownian_ensemble(G8, 500, 3)
    assert np.array_equal(small.increments, large.increments[:50])
    small_p = poisson_ensemble(G8, 50, 3)
    large_p = poisson_ensemble(G8, 500, 3)
    assert np.array_equal(small_p.increments, large_p.increments[:50])


def test_path_seed_mix_spreads():
    seeds = path_seeds(0, 1000)
    assert len(np.unique(seeds)) == 1000


def test_brownian_moments():
    ens = brownian_ensemble(uniform_grid(1.0, 4), 200_000, 11)
    for k in range(4):
        col = ens.increments[:, k]
        assert abs(col.mean()) < 5 * col.std() / np.sqrt(len(col))
        assert col.var() == pytest.approx(0.25, rel=0.02)


def test_poisson_moments():
    ens = poisson_ensemble(uniform_grid(1.0, 4), 200_000, 11, intensity=2.0)
    for k in range(4):
        col = ens.increments[:, k]
        assert abs(col.mean()) < 5 * col.std() / np.sqrt(len(col))
        assert col.var() == pytest.approx(0.25, rel=0.05)


def test_invalid_arguments():
    with pytest.raises(ValueError):
        brownian_ensemble(G8, 0, 1)
    with pytest.raises(ValueError):
        poisson_ensemble(G8, 10, 1, intensity=0.0)


def test_hermite_values():
    x = np.linspace(-2, 2, 9)
    np.testing.assert_allclose(hermite_polynomial(0, x), np.ones_like(x))
    np.testing.assert_allclose(hermite_polynomial(1, x), x)
    np.testing.assert_allclose(hermite_polynomial(2, x), x**2 - 1)
    np.testing.assert_allclose(hermite_polynomial(3, x), x**3 - 3 * x)


def test_first_order_reference_is_exact():
    ens = brownian_ensemble(G8, 2000, 5)
    g = symtensor.ones(G8, 1)
    diff = iterated_samples(g, ens).real - hermite_reference(g, 1, ens)
    assert np.abs(diff).max() < 1e-12


def test_second_order_difference_is_the_quadratic_variation_defect():
    ens = brownian_ensemble(G8, 2000, 5)
    g = symtensor.ones(G8, 1)
    disc = iterated_samples(symtensor.sym_tensor(g, g), ens).real
    oracle = hermite_reference(g, 2, ens)
    total = ens.terminal()
    qv = (ens.increments**2).sum(axis=1)
    np.testing.assert_allclose(disc, total**2 - qv, atol=1e-10)
    np.testing.assert_allclose(oracle, total**2 - 1.0, atol=1e-10)


def test_iterated_skips_diagonal_entries():
    ens = brownian_ensemble(G8, 100, 5)
    diag = symtensor.SymCoeffs(G8, 2, {(1, 1): 3.0})
    assert np.abs(iterated_samples(diag, ens)).max() == 0.0


def test_iterated_second_moment_matches_weighted_norm():
    rng = generator(77)
    grid = uniform_grid(1.0, 16)
    ens = brownian_ensemble(grid, 200_000, 13)
    f2 = random_sym_coeffs(rng, grid, 2, strict=True, entries=6)
    samples = np.abs(iterated_samples(f2, ens)) ** 2
    target = 2.0 * symtensor.norm2(f2)
    mean, se = mean_and_stderr(samples)
    assert abs(mean - target) < 5 * se


def test_linear_samples_isometry():
    ens = brownian_ensemble(uniform_grid(1.0, 8), 200_000, 17)
    g = symtensor.ones(G8, 1)
    w2 = np.abs(linear_samples(g, ens)) ** 2
    mean, se = mean_and_stderr(w2)
    assert abs(mean - 1.0) < 5 * se


def test_csv_export(tmp_path):
    ens = brownian_ensemble(uniform_grid(1.0, 3), 4, 19)
    out = tmp_path / "paths.csv"
    export_csv(ens, out)
    with open(out) as handle:
        rows = list(csv.reader(handle))
    assert rows[0] == ["path", "cell", "increment"]
    assert len(rows) == 1 + 4 * 3
    assert float(rows[1][2]) == ens.increments[0, 0]
