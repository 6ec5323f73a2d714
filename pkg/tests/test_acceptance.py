"""Acceptance gate: one test per numbered criterion, each printing a
pass/fail line.  Exact identities are asserted with rational equality (no
tolerances); statistical criteria carry their declared error bars; runtime
limits are asserted where declared.
"""
import time

import pytest

from flatchain import verify

SEED = 20240811


def _gate(number, title, rows, max_seconds=None, elapsed=None):
    ok = all(r.passed for r in rows)
    detail = "; ".join(f"{r.name}: {r.detail}" for r in rows)
    stamp = f" [{elapsed:.1f}s]" if elapsed is not None else ""
    print(f"[criterion {number:>2}] {'PASS' if ok else 'FAIL'}{stamp} "
          f"{title} -- {detail}")
    for r in rows:
        assert r.passed, f"criterion {number}: {r.name}: {r.detail}"
    if max_seconds is not None:
        assert elapsed is not None and elapsed < max_seconds, \
            f"criterion {number} took {elapsed:.1f}s (limit {max_seconds}s)"


def test_criterion_01_algebraic_exactness():
    t0 = time.time()
    rows = [verify.check_boundary_squared(SEED),
            verify.check_partial_boundaries(SEED),
            verify.check_translate(SEED),
            verify.check_restrict(SEED)]
    _gate(1, "boundary involutions, anticommutation, commutations",
          rows, max_seconds=10, elapsed=time.time() - t0)


def test_criterion_02_isometry_suite():
    rows = [verify.check_iota(SEED),
            verify.check_slicing_equals_mass(SEED),
            verify.check_n_norms(SEED)]
    _gate(2, "nested reinterpretation and slicing-mass isometries", rows)


def test_criterion_03_mass_slicing_bounds():
    t0 = time.time()
    rows = [verify.check_mass_slicing_bounds(SEED)]
    _gate(3, "mass vs slicing mass, 500 cells, exact squared comparisons",
          rows, max_seconds=30, elapsed=time.time() - t0)


def test_criterion_04_decomposition_sum_rules():
    rows = [verify.check_jdecomp_partition(SEED),
            verify.check_jdecomp_boundary_split(SEED)]
    _gate(4, "type decomposition slicing-mass sum rules", rows)


def test_criterion_05_deformation():
    rows = [verify.check_deform_commutes(SEED),
            verify.check_grid_fixpoint(SEED),
            verify.check_support_inflation(SEED),
            verify.check_segment_average(SEED)]
    _gate(5, "deformation commutes, fixes grid chains, averages exactly",
          rows)


def test_criterion_06_deformation_convergence():
    t0 = time.time()
    rows = [verify.check_convergence(SEED)]
    _gate(6, "shift-averaged flat distances decrease by 4x over the sweep",
          rows, max_seconds=120, elapsed=time.time() - t0)


def test_criterion_07_dyadic_cauchy():
    rows = [verify.check_cauchy(SEED)]
    _gate(7, "dyadic refinement distances decay geometrically (<= 0.7)",
          rows)


def test_criterion_08_triangle_counterexample():
    rows = [verify.check_counterexample(SEED)]
    _gate(8, "triangle, staircases, prism fillings, corner certificates",
          rows)


def test_criterion_09_solver_soundness():
    rows = [verify.check_flatnorm_basics(SEED),
            verify.check_exhaustive_equals_lp(SEED),
            verify.check_refinement_monotone(SEED)]
    _gate(9, "witnesses re-verify; exhaustive = LP on tiny complexes;"
             " refinement monotone", rows)


def test_criterion_10_total_coefficient_bounds():
    rows = [verify.check_chi_flat_bound(SEED)]
    _gate(10, "total coefficient bounded by the grid flat norms", rows)


def test_criterion_11_rotation_average_report():
    rows = [verify.check_grassmann_report(SEED)]
    _gate(11, "rotation-averaged projection mass (reported, not gated)", rows)
