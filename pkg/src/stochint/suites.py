"""Randomized and exact verification suites.

Each suite builds a :class:`~stochint.reports.SuiteReport` whose checks carry
explicit tolerances; the CLI and the acceptance tests both run through these
entry points.  Tolerances can be overridden per check family via the
``tolerances`` mapping (see :data:`DEFAULT_TOLERANCES` for the known keys).
Trial streams derive from (seed, suite id, trial index), so results do not
depend on execution order.
"""

from __future__ import annotations

import time
from itertools import combinations_with_replacement

import numpy as np

from . import bernoulli as brn
from . import fock, fock_ito, montecarlo, symtensor
from .errors import TruncationOverflowError
from .fock import FockVector
from .fock_ito import FockStepProcess
from .grid import uniform_grid
from .operator_integral import (
    OperatorStepProcess,
    VectorMartingale,
    check_measurable,
    integral_norm_bound,
    stochastic_integral,
    unitary_transport,
)
from .randomgen import (
    generator,
    random_adapted_process,
    random_fock_vector,
    random_grid,
    random_martingale,
    random_measurable_process,
    random_predictable,
    random_sym_coeffs,
    random_unitary,
)
from .reports import SuiteReport, bound, count_zero, equality, merge_reports

DEFAULT_TOLERANCES = {
    "bound": 1e-10,
    "scalar_equality": 1e-10,
    "linearity": 1e-10,
    "transport": 1e-10,
    "telescoping": 1e-12,
    "route_equivalence": 1e-12,
    "isometry": 1e-12,
    "skorohod_match": 1e-15,
    "wick_algebra": 1e-12,
    "projection": 1e-12,
    "bridge": 1e-12,
    "pointwise": 1e-12,
    "norm_identity": 1e-10,
    "martingale_exact": 1e-12,
    "chaos_isometry": 1e-12,
}

# suite ids keep the per-trial seed streams of different suites disjoint
_OPERATOR, _FOCK_ITO, _BERNOULLI, _MC, _BRIDGE, _WICK, _TRANSPORT = range(7)


def _tol(tolerances: dict | None, key: str) -> float:
    if tolerances and key in tolerances:
        return float(tolerances[key])
    return DEFAULT_TOLERANCES[key]


def _finish(report: SuiteReport, started: float) -> SuiteReport:
    report.wall_time_s = time.perf_counter() - started
    return report


# --------------------------------------------------------------------------
# operator-integral suite ("hstoch")
# --------------------------------------------------------------------------


def verify_operator_suite(
    cells: int = 6,
    dim: int = 8,
    trials: int = 1000,
    transport_trials: int = 200,
    seed: int = 0,
    tolerances: dict | None = None,
    input_data: dict | None = None,
) -> SuiteReport:
    """Norm bound, linearity, measurability and transport on random data."""
    started = time.perf_counter()
    report = SuiteReport(
        "hstoch", seed, f"random grids, cells<={cells}, dim<={dim}, trials={trials}"
    )

    self_check_failures = 0
    max_bound_violation = 0.0
    max_scalar_dev = 0.0
    max_linearity_dev = 0.0
    monotone_violations = 0
    negative_misses = 0
    max_telescoping_dev = 0.0

    for t in range(trials):
        rng = generator(seed, _OPERATOR, t)
        n = int(rng.integers(1, cells + 1))
        d = int(rng.integers(2, dim + 1))
        grid = random_grid(rng, n)
        mart = random_martingale(rng, grid, d)
        scalar = t % 2 == 1
        proc = random_measurable_process(rng, mart, scalar_action=scalar)

        for k in range(1, n + 1):
            if not check_measurable(proc.operator(k), mart, k - 1):
                self_check_failures += 1
        lhs, rhs = integral_norm_bound(proc, mart, enforce=False)
        max_bound_violation = max(max_bound_violation, lhs - rhs)
        if scalar:
            max_scalar_dev = max(max_scalar_dev, abs(lhs - rhs))

        if t % 5 == 0:
            other = random_measurable_process(rng, mart, scalar_action=not scalar)
            a, b = complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2))
            combined = OperatorStepProcess(
                grid,
                tuple(a * x + b * y for x, y in zip(proc.operators, other.operators)),
            )
            direct = stochastic_integral(combined, mart, enforce=False)
            split = a * stochastic_integral(proc, mart, enforce=False) + b * stochastic_integral(
                other, mart, enforce=False
            )
            max_linearity_dev = max(max_linearity_dev, float(np.linalg.norm(direct - split)))

        if t % 10 == 0:
            # measurable at j stays measurable at every later boundary
            for j in range(1, n + 1):
                if not check_measurable(proc.operator(1), mart, j):
                    monotone_violations += 1
            # an operator moving one future increment direction into an
            # earlier spectral slice must be flagged
            alive = [k for k in range(1, n + 1) if mart.mu(k) > 1e-12]
            if len(alive) >= 2:
                i1, i2 = alive[0], alive[-1]
                q1 = mart.increment(i1) / np.linalg.norm(mart.increment(i1))
                q2 = mart.increment(i2) / np.linalg.norm(mart.increment(i2))
                bad = np.outer(q1, q2.conj())
                if check_measurable(bad, mart, i2 - 1):
                    negative_misses += 1
            identity = OperatorStepProcess(grid, tuple(np.eye(d) for _ in range(n)))
            tele = stochastic_integral(identity, mart, enforce=False)
            expected = mart.vector - mart.measure.atom @ mart.vector
            max_telescoping_dev = max(max_telescoping_dev, float(np.linalg.norm(tele - expected)))

    max_transport_dev = 0.0
    for t in range(transport_trials):
        rng = generator(seed, _TRANSPORT, t)
        n = int(rng.integers(1, cells + 1))
        d = int(rng.integers(2, dim + 1))
        mart = random_martingale(rng, random_grid(rng, n), d)
        proc = random_measurable_process(rng, mart, scalar_action=t % 2 == 0)
        left, right = unitary_transport(random_unitary(rng, d), proc, mart, enforce=False)
        max_transport_dev = max(max_transport_dev, float(np.linalg.norm(left - right)))

    report.add(count_zero("measurability_self_check_failures", self_check_failures))
    report.add(bound("isometry_bound_max_violation", max_bound_violation, 0.0, _tol(tolerances, "bound")))
    report.add(equality("scalar_family_max_equality_dev", max_scalar_dev, 0.0, _tol(tolerances, "scalar_equality")))
    report.add(equality("linearity_max_dev", max_linearity_dev, 0.0, _tol(tolerances, "linearity")))
    report.add(count_zero("measurability_monotone_violations", monotone_violations))
    report.add(count_zero("nonmeasurable_detected_misses", negative_misses))
    report.add(equality("telescoping_max_dev", max_telescoping_dev, 0.0, _tol(tolerances, "telescoping")))
    report.add(equality("unitary_transport_max_dev", max_transport_dev, 0.0, _tol(tolerances, "transport")))

    if input_data is not None:
        mart = VectorMartingale.from_json(input_data["martingale"])
        proc = OperatorStepProcess.from_json(input_data["process"])
        failures = sum(
            0 if check_measurable(proc.operator(k), mart, k - 1) else 1
            for k in range(1, proc.grid.n + 1)
        )
        lhs, rhs = integral_norm_bound(proc, mart, enforce=False)
        report.add(count_zero("file_measurability_failures", failures))
        report.add(bound("file_isometry_bound", lhs, rhs, _tol(tolerances, "bound")))

    return _finish(report, started)


# --------------------------------------------------------------------------
# Fock-space Ito suite ("fock-ito")
# --------------------------------------------------------------------------


def verify_fock_ito_suite(
    cells: int = 6,
    degree: int = 3,
    trials: int = 500,
    bridge_trials: int = 100,
    seed: int = 0,
    tolerances: dict | None = None,
) -> SuiteReport:
    """Two-route equality, isometry, Skorohod extension, Wick algebra,
    projection family, and the operator realization of Wick multiplication."""
    started = time.perf_counter()
    report = SuiteReport(
        "fock-ito",
        seed,
        f"random grids, cells<={cells}, degree<={degree}, trials={trials}",
    )

    max_route_dev = 0.0
    max_isometry_dev = 0.0
    max_skorohod_dev = 0.0
    offdiag_violations = 0

    for t in range(trials):
        rng = generator(seed, _FOCK_ITO, t)
        n = int(rng.integers(1, cells + 1))
        grid = random_grid(rng, n)
        max_deg = int(rng.integers(0, degree + 1))
        off_diag = bool(rng.integers(0, 2))
        proc = random_adapted_process(rng, grid, degree + 1, max_deg, off_diagonal=off_diag)

        iw = fock_ito.ito_wick(proc)
        isym = fock_ito.ito_symmetrize(proc)
        max_route_dev = max(max_route_dev, fock.entrywise_distance(iw, isym))

        lhs, rhs = fock_ito.ito_isometry(proc)
        max_isometry_dev = max(max_isometry_dev, abs(lhs - rhs) / max(1.0, rhs))

        sk = fock_ito.skorohod_integral(proc)
        max_skorohod_dev = max(max_skorohod_dev, fock.entrywise_distance(sk, isym))

        if off_diag:
            for comp in iw.components:
                if not comp.is_off_diagonal():
                    offdiag_violations += 1

    # Wick algebra on random vectors with enough headroom for triple products
    max_wick_dev = 0.0
    overflow_misses = 0
    for t in range(max(1, trials // 5)):
        rng = generator(seed, _WICK, t)
        n = int(rng.integers(1, cells + 1))
        grid = random_grid(rng, n)
        f = random_fock_vector(rng, grid, 1).pad(6)
        g = random_fock_vector(rng, grid, 1).pad(6)
        h = random_fock_vector(rng, grid, 1).pad(6)
        fg = fock.wick(f, g)
        max_wick_dev = max(max_wick_dev, fock.entrywise_distance(fg, fock.wick(g, f)))
        max_wick_dev = max(
            max_wick_dev,
            fock.entrywise_distance(fock.wick(fg, h), fock.wick(f, fock.wick(g, h))),
        )
        a, b = complex(*rng.standard_normal(2)), complex(*rng.standard_normal(2))
        lin = fock.wick(a * f + b * g, h)
        split = a * fock.wick(f, h) + b * fock.wick(g, h)
        max_wick_dev = max(max_wick_dev, fock.entrywise_distance(lin, split))
        max_wick_dev = max(
            max_wick_dev, fock.entrywise_distance(fock.wick(fock.vacuum(grid, 6), f), f)
        )
        # strict policy must refuse to drop a nonzero top component
        top = symtensor.cell_indicator(grid, 1)
        full = FockVector(grid, tuple(symtensor.zero(grid, d) for d in range(6)) + (symtensor.ones(grid, 6),))
        try:
            fock.wick(full, FockVector(grid, (symtensor.zero(grid, 0), top)), "strict", 6)
            overflow_misses += 1
        except TruncationOverflowError:
            pass

    # the projection family at boundaries: idempotent, self-adjoint,
    # monotone, and with the squared norm of the projected indicator equal to
    # the boundary time
    max_proj_dev = 0.0
    max_lebesgue_dev = 0.0
    for t in range(20):
        rng = generator(seed, _WICK, 10_000 + t)
        n = int(rng.integers(1, cells + 1))
        grid = random_grid(rng, n)
        f = random_fock_vector(rng, grid, 2)
        g = random_fock_vector(rng, grid, 2)
        z = fock.indicator_vector(grid)
        for j in range(n + 1):
            pf = fock.resolution_project(f, j)
            max_proj_dev = max(
                max_proj_dev, fock.entrywise_distance(fock.resolution_project(pf, j), pf)
            )
            sym_dev = abs(
                fock.fock_inner(pf, g) - fock.fock_inner(f, fock.resolution_project(g, j))
            )
            max_proj_dev = max(max_proj_dev, sym_dev)
            for j2 in range(j, n + 1):
                both = fock.resolution_project(fock.resolution_project(f, j2), j)
                max_proj_dev = max(max_proj_dev, fock.entrywise_distance(both, pf))
            max_lebesgue_dev = max(
                max_lebesgue_dev,
                abs(fock.norm2(fock.resolution_project(z, j)) - grid.boundaries[j]),
            )

    report.add(equality("route_equivalence_max_dev", max_route_dev, 0.0, _tol(tolerances, "route_equivalence")))
    report.add(equality("isometry_max_scaled_dev", max_isometry_dev, 0.0, _tol(tolerances, "isometry")))
    report.add(equality("skorohod_extends_ito_max_dev", max_skorohod_dev, 0.0, _tol(tolerances, "skorohod_match")))
    report.add(count_zero("offdiagonal_output_violations", offdiag_violations))
    report.add(equality("wick_algebra_max_dev", max_wick_dev, 0.0, _tol(tolerances, "wick_algebra")))
    report.add(count_zero("strict_overflow_misses", overflow_misses))
    report.add(equality("projection_family_max_dev", max_proj_dev, 0.0, _tol(tolerances, "projection")))
    report.add(equality("projected_indicator_measure_max_dev", max_lebesgue_dev, 0.0, _tol(tolerances, "projection")))

    # dense-matrix realization of Wick multiplication
    max_bridge_dev = 0.0
    bridge_measurability_failures = 0
    nonadapted_misses = 0
    for t in range(bridge_trials):
        rng = generator(seed, _BRIDGE, t)
        n = int(rng.integers(2, cells + 1))
        grid = random_grid(rng, n)
        max_deg = int(rng.integers(0, min(3, degree) + 1))
        proc = random_adapted_process(rng, grid, max_deg + 1, max_deg, off_diagonal=False)
        realization = fock_ito.wick_operator_process(proc)
        for k in range(1, n + 1):
            if not check_measurable(realization.process.operator(k), realization.martingale, k - 1):
                bridge_measurability_failures += 1
        vec = stochastic_integral(realization.process, realization.martingale, enforce=False)
        via_operators = realization.coords_to_vector(vec)
        max_bridge_dev = max(
            max_bridge_dev, fock.entrywise_distance(via_operators, fock_ito.ito_wick(proc))
        )
        if t < 5:
            # a value whose support reaches its own cell yields an operator
            # that must fail the measurability check one boundary earlier
            shifted = fock_ito.FockStepProcess(
                grid,
                tuple(
                    fock.cell_increment(grid, k - 1).pad(2) if k > 1 else fock.vacuum(grid, 2)
                    for k in range(1, n + 1)
                ),
            )
            shifted_real = fock_ito.wick_operator_process(shifted)
            k_bad = 2  # operator multiplies by the cell-1 increment
            if check_measurable(
                shifted_real.process.operator(k_bad), shifted_real.martingale, k_bad - 2
            ):
                nonadapted_misses += 1

    report.add(equality("wick_operator_bridge_max_dev", max_bridge_dev, 0.0, _tol(tolerances, "bridge")))
    report.add(count_zero("wick_operator_measurability_failures", bridge_measurability_failures))
    report.add(count_zero("wick_nonadapted_detected_misses", nonadapted_misses))
    report.notes.append(
        "wick-operator bridge checks are finite-grid numerical evidence, not a proof"
    )
    report.notes.append(
        "operator matrices use the drop policy above the realization truncation"
    )
    return _finish(report, started)


# --------------------------------------------------------------------------
# Bernoulli suite ("bernoulli")
# --------------------------------------------------------------------------


def verify_bernoulli_suite(
    cells: int = 5,
    trials: int = 200,
    seed: int = 0,
    tolerances: dict | None = None,
) -> SuiteReport:
    """Exact identities on the sign space: martingale structure, the
    measurability equivalence, both integral transports, and the chaos map."""
    started = time.perf_counter()
    report = SuiteReport("bernoulli", seed, f"sign spaces, cells<={cells}, trials={trials}")

    rng = generator(seed, _BERNOULLI, 0)
    space = brn.BernoulliSpace(random_grid(rng, max(2, cells)))

    mart_mean = 0.0
    mart_var = 0.0
    for k in range(1, space.n + 1):
        inc = space.increment(k)
        mart_mean = max(mart_mean, brn.max_abs(brn.cond_expect(inc, k - 1)))
        var = brn.cond_expect(inc * inc, k - 1) - space.constant(space.grid.length(k))
        mart_var = max(mart_var, brn.max_abs(var))
    report.add(equality("martingale_mean_max", mart_mean, 0.0, _tol(tolerances, "martingale_exact")))
    report.add(equality("martingale_variance_max", mart_var, 0.0, _tol(tolerances, "martingale_exact")))

    max_cond_dev = 0.0
    contraction_violations = 0
    for t in range(20):
        rng = generator(seed, _BERNOULLI, 100 + t)
        x = brn.RandomVariable(space, rng.standard_normal(space.size) + 1j * rng.standard_normal(space.size))
        y = brn.RandomVariable(space, rng.standard_normal(space.size) + 1j * rng.standard_normal(space.size))
        for k in range(space.n + 1):
            ck = brn.cond_expect(x, k)
            max_cond_dev = max(max_cond_dev, brn.max_abs(brn.cond_expect(ck, k) - ck))
            adj = abs(brn.cond_expect(x, k).inner(y) - x.inner(brn.cond_expect(y, k)))
            max_cond_dev = max(max_cond_dev, adj)
            if ck.norm2() > x.norm2() + 1e-12:
                contraction_violations += 1
            for j in range(k + 1):
                nested = brn.cond_expect(ck, j)
                max_cond_dev = max(max_cond_dev, brn.max_abs(nested - brn.cond_expect(x, j)))
    report.add(equality("conditional_projection_max_dev", max_cond_dev, 0.0, _tol(tolerances, "martingale_exact")))
    report.add(count_zero("conditional_contraction_violations", contraction_violations))

    # exhaustive equivalence on the sign-product basis for small n
    agreement_violations = 0
    max_norm_identity_dev = 0.0
    for n in (1, 2, 3):
        small = brn.BernoulliSpace(uniform_grid(1.0, n))
        realization = brn.classical_realization(small)
        from itertools import chain, combinations

        subsets = chain.from_iterable(combinations(range(1, n + 1), r) for r in range(n + 1))
        for cells_in_product in subsets:
            f = small.walsh(cells_in_product)
            for k in range(n + 1):
                verdicts = brn.measurability_equivalence(f, k, realization)
                if not verdicts.agree:
                    agreement_violations += 1
                if verdicts.classical:
                    for nu in verdicts.restricted_norms:
                        max_norm_identity_dev = max(
                            max_norm_identity_dev, abs(nu - verdicts.function_norm)
                        )
    report.add(count_zero("measurability_equivalence_violations", agreement_violations))
    report.add(equality("restricted_norm_identity_max_dev", max_norm_identity_dev, 0.0, _tol(tolerances, "norm_identity")))

    # integrating a predictable family as multiplication operators agrees with
    # the plain increment sum
    spaces = {n: brn.BernoulliSpace(uniform_grid(1.0, n)) for n in range(1, cells + 1)}
    realizations = {n: brn.classical_realization(sp) for n, sp in spaces.items()}
    max_route_dev = 0.0
    for t in range(trials):
        rng = generator(seed, _BERNOULLI, 1000 + t)
        n = int(rng.integers(1, cells + 1))
        sp = spaces[n]
        integrands = random_predictable(rng, sp)
        via_ops, via_incs = brn.multiplication_integral_pair(sp, integrands, realizations[n])
        max_route_dev = max(max_route_dev, brn.max_abs(via_ops - via_incs))
    report.add(equality("multiplication_route_max_dev", max_route_dev, 0.0, _tol(tolerances, "pointwise")))

    # chaos map: isometry on off-diagonal pairs
    max_chaos_dev = 0.0
    for t in range(trials):
        rng = generator(seed, _BERNOULLI, 2000 + t)
        n = int(rng.integers(1, cells + 1))
        sp = spaces[n]
        f = random_fock_vector(rng, sp.grid, min(n, 3), strict=True)
        g = random_fock_vector(rng, sp.grid, min(n, 3), strict=True)
        lhs = brn.chaos_map(f, sp).inner(brn.chaos_map(g, sp))
        rhs = fock.fock_inner(f, g)
        max_chaos_dev = max(max_chaos_dev, abs(lhs - rhs))
    report.add(equality("chaos_isometry_max_dev", max_chaos_dev, 0.0, _tol(tolerances, "chaos_isometry")))

    # transport of the Ito integral through the chaos map
    max_intertwine_dev = 0.0
    predictability_violations = 0
    max_proj_intertwine_dev = 0.0
    for t in range(trials):
        rng = generator(seed, _BERNOULLI, 3000 + t)
        n = int(rng.integers(2, cells + 1))
        sp = brn.BernoulliSpace(uniform_grid(1.0, n))
        proc = random_adapted_process(rng, sp.grid, 3, 2, off_diagonal=True)
        left, right, transported = brn.chaos_integral_pair(proc, sp)
        max_intertwine_dev = max(max_intertwine_dev, brn.max_abs(left - right))
        for k, f_k in enumerate(transported, start=1):
            if not brn.is_measurable_at(f_k, k - 1):
                predictability_violations += 1
        vec = random_fock_vector(rng, sp.grid, min(n, 2), strict=True)
        for j in range(n + 1):
            a = brn.chaos_map(fock.resolution_project(vec, j), sp)
            b = brn.cond_expect(brn.chaos_map(vec, sp), j)
            max_proj_intertwine_dev = max(max_proj_intertwine_dev, brn.max_abs(a - b))
    report.add(equality("chaos_ito_intertwine_max_dev", max_intertwine_dev, 0.0, _tol(tolerances, "pointwise")))
    report.add(count_zero("transported_predictability_violations", predictability_violations))
    report.add(equality("chaos_projection_intertwine_max_dev", max_proj_intertwine_dev, 0.0, _tol(tolerances, "pointwise")))

    # full chaos basis on three cells: gram matrix matches, dimensions count
    n = 3
    sp = brn.BernoulliSpace(uniform_grid(1.0, n))
    from itertools import chain, combinations

    multisets = list(chain.from_iterable(combinations(range(1, n + 1), d) for d in range(n + 1)))
    max_gram_dev = 0.0
    for ms_a in multisets:
        fa = _indicator_vector_for(sp.grid, ms_a)
        for ms_b in multisets:
            fb = _indicator_vector_for(sp.grid, ms_b)
            lhs = brn.chaos_map(fa, sp).inner(brn.chaos_map(fb, sp))
            rhs = fock.fock_inner(fa, fb)
            max_gram_dev = max(max_gram_dev, abs(lhs - rhs))
    report.add(equality("chaos_basis_gram_max_dev", max_gram_dev, 0.0, _tol(tolerances, "chaos_isometry")))
    report.add(equality("chaos_dimension_count", float(len(multisets)), float(sp.size), 0.0))

    return _finish(report, started)


def _indicator_vector_for(grid, multiset) -> FockVector:
    d = len(multiset)
    comps = [
        symtensor.SymCoeffs(grid, deg, {tuple(multiset): 1.0} if deg == d else {})
        for deg in range(d + 1)
    ]
    return FockVector(grid, tuple(comps))


# --------------------------------------------------------------------------
# Monte Carlo suite ("mc")
# --------------------------------------------------------------------------


def mc_suite(
    model: str = "brownian",
    cells: int = 64,
    paths: int = 100_000,
    seed: int = 0,
    intensity: float = 1.0,
) -> SuiteReport:
    """Statistical checks at four standard errors against closed-form
    references; the Gaussian model also checks the iterated-sum second
    moments with an O(max cell length) discretization allowance."""
    started = time.perf_counter()
    grid = uniform_grid(1.0, cells)
    report = SuiteReport(f"mc-{model}", seed, f"uniform grid, cells={cells}, paths={paths}")
    max_len = max(grid.lengths)

    if model == "brownian":
        ens = montecarlo.brownian_ensemble(grid, paths, seed)
        again = montecarlo.brownian_ensemble(grid, paths, seed)
        report.add(count_zero("ensemble_deterministic", int(not np.array_equal(ens.increments, again.increments))))

        g = symtensor.ones(grid, 1)
        d1 = montecarlo.iterated_samples(g, ens).real - montecarlo.hermite_reference(g, 1, ens)
        report.add(equality("order1_reference_max_dev", float(np.abs(d1).max()), 0.0, 1e-12))

        square = symtensor.ones(grid, 2)  # the symmetric square of g
        square_samples = montecarlo.iterated_samples(square, ens).real
        diff = square_samples - montecarlo.hermite_reference(g, 2, ens)
        mean, se = montecarlo.mean_and_stderr(diff)
        report.add(equality("order2_mean_diff", mean, 0.0, 4.0 * se))

        # order 3 on a prefix window keeps the dense coefficient set tractable
        window = min(cells, 24)
        g3 = symtensor.SymCoeffs(grid, 1, {(c,): 1.0 for c in range(1, window + 1)})
        cube = symtensor.SymCoeffs(
            grid,
            3,
            {ms: 1.0 for ms in combinations_with_replacement(range(1, window + 1), 3)},
        )
        diff = montecarlo.iterated_samples(cube, ens).real - montecarlo.hermite_reference(g3, 3, ens)
        mean, se = montecarlo.mean_and_stderr(diff)
        report.add(equality("order3_mean_diff", mean, 0.0, 4.0 * se))

        samples = square_samples**2
        target = 2.0 * symtensor.norm2(square)
        mean, se = montecarlo.mean_and_stderr(samples)
        report.add(equality("power_second_moment", mean, target, 4.0 * se + 4.0 * max_len * target))

        rng = generator(seed, _MC, 0)
        f2 = random_sym_coeffs(rng, grid, 2, strict=True, entries=6)
        samples = np.abs(montecarlo.iterated_samples(f2, ens)) ** 2
        target = 2.0 * symtensor.norm2(f2)
        mean, se = montecarlo.mean_and_stderr(samples)
        report.add(equality("offdiagonal_second_moment", mean, target, 4.0 * se + 4.0 * max_len * target))

        w2 = np.abs(montecarlo.linear_samples(g, ens)) ** 2
        mean, se = montecarlo.mean_and_stderr(w2)
        report.add(equality("linear_isometry", mean, symtensor.norm2(g), 4.0 * se))
    elif model == "poisson":
        ens = montecarlo.poisson_ensemble(grid, paths, seed, intensity=intensity)
        again = montecarlo.poisson_ensemble(grid, paths, seed, intensity=intensity)
        report.add(count_zero("ensemble_deterministic", int(not np.array_equal(ens.increments, again.increments))))

        mean, se = montecarlo.mean_and_stderr(ens.increments.reshape(-1))
        report.add(equality("increment_mean", mean, 0.0, 4.0 * se))

        g = symtensor.ones(grid, 1)
        w2 = np.abs(montecarlo.linear_samples(g, ens)) ** 2
        mean, se = montecarlo.mean_and_stderr(w2)
        report.add(equality("linear_isometry", mean, symtensor.norm2(g), 4.0 * se))

        term = ens.terminal() ** 2
        mean, se = montecarlo.mean_and_stderr(term)
        report.add(equality("terminal_second_moment", mean, grid.horizon, 4.0 * se))
    else:
        raise ValueError(f"unknown model {model!r}")

    return _finish(report, started)


# --------------------------------------------------------------------------
# grid-refinement study ("refine")
# --------------------------------------------------------------------------


def refinement_study(start_cells: int = 2, levels: int = 6, seed: int = 0) -> SuiteReport:
    """Integrate the left-endpoint indicator process (the canonical non-step
    target) on doubling grids.  The squared-norm defect against the limit
    value T^2/2 is an explicit left-Riemann-sum error: positive, monotone,
    and halving per refinement."""
    started = time.perf_counter()
    report = SuiteReport("refine", seed, f"uniform grids, cells {start_cells}..{start_cells * 2 ** (levels - 1)}")
    limit = 0.5  # T = 1

    rows = []
    defects = []
    step_diffs = []
    previous = None
    cells = start_cells
    for _ in range(levels):
        grid = uniform_grid(1.0, cells)
        proc = FockStepProcess(
            grid,
            tuple(fock.indicator_vector(grid, k - 1).pad(2) for k in range(1, grid.n + 1)),
        )
        integral = fock_ito.ito_wick(proc)
        value = fock.norm2(integral)
        defect = limit - value
        row = {"cells": cells, "integral_norm2": value, "defect": defect}
        if previous is not None:
            diff2 = fock.norm2(fock.refine_vector(previous, 2) - integral)
            step_diffs.append(diff2)
            row["step_diff_norm2"] = diff2
        rows.append(row)
        defects.append(defect)
        previous = integral
        cells *= 2

    report.table = rows
    report.add(count_zero("defect_positive_violations", sum(1 for d in defects if d <= 0.0)))
    report.add(
        count_zero(
            "defect_monotone_violations",
            sum(1 for a, b in zip(defects, defects[1:]) if b >= a),
        )
    )
    ratios = [a / b for a, b in zip(defects, defects[1:])]
    report.add(count_zero("defect_halving_violations", sum(1 for r in ratios if not 1.0 <= r <= 4.0)))
    closed = max(abs(d - 1.0 / (2.0 * row_cells)) for d, row_cells in zip(defects, (start_cells * 2 ** j for j in range(levels))))
    report.add(equality("defect_closed_form_max_dev", closed, 0.0, 1e-12))
    if step_diffs:
        report.add(
            count_zero(
                "step_diff_monotone_violations",
                sum(1 for a, b in zip(step_diffs, step_diffs[1:]) if b >= a),
            )
        )
        sratios = [a / b for a, b in zip(step_diffs, step_diffs[1:])]
        report.add(count_zero("step_diff_rate_violations", sum(1 for r in sratios if not 1.0 <= r <= 4.0)))
    return _finish(report, started)


def verify_all(
    cells: int = 4,
    degree: int = 3,
    trials: int = 200,
    seed: int = 0,
    tolerances: dict | None = None,
) -> SuiteReport:
    """Run the three verification suites and flatten them into one report."""
    started = time.perf_counter()
    parts = [
        verify_operator_suite(
            cells=cells,
            trials=trials,
            transport_trials=min(200, trials),
            seed=seed,
            tolerances=tolerances,
        ),
        verify_fock_ito_suite(
            cells=cells,
            degree=degree,
            trials=trials,
            bridge_trials=min(100, trials),
            seed=seed,
            tolerances=tolerances,
        ),
        verify_bernoulli_suite(cells=min(cells, 5), trials=trials, seed=seed, tolerances=tolerances),
    ]
    merged = merge_reports("all", seed, f"cells<={cells}, degree<={degree}, trials={trials}", parts)
    return _finish(merged, started)
