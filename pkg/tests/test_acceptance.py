"""Acceptance criteria, one test each.

Every test records a PASS/FAIL line through the ``criterion`` fixture before
asserting, so the terminal summary lists all twelve even when some fail.
Run alone with ``pytest tests/test_acceptance.py -v``.
"""

import math
import time

import numpy as np
import pytest

from dalpha import (canonical_key, complete_digraph, directed_cycle, k_n_k_m, mu_alpha,
                    mu_closed_form, second_min_closed_form, t_star)
from dalpha.enumeration import build_catalog
from dalpha.families import alpha_zero_connectivity_min
from dalpha.spectrum import DEFAULT_ALPHA_GRID
from dalpha.verify import (bound_suite, conjecture_sweep, extremal_scan, monotonicity_check,
                           random_sc_digraph)
from oracles import dense_perron, floyd_warshall

GRID = DEFAULT_ALPHA_GRID
POSITIVE = [a for a in GRID if a > 0]


def _scan_cells(n, kind, ks, alphas, catalog):
    for k in ks:
        for a in alphas:
            yield k, a, extremal_scan(n, a, f"{kind}({k})", catalog=catalog)


def _connectivity_expected(n, k, a):
    keys = {canonical_key(k_n_k_m(n, k, 1))}
    if a == 0:
        keys.add(canonical_key(k_n_k_m(n, k, n - k - 1)))
    return sorted(keys)


@pytest.fixture(scope="module")
def catalogs():
    return {n: build_catalog(n) for n in (4, 5)}


def test_c01_global_extremes(criterion):
    bad, timing = [], {}
    for n in (4, 5):
        t0 = time.perf_counter()
        cat = build_catalog(n)
        reps = [extremal_scan(n, a, "all", catalog=cat) for a in GRID]
        timing[n] = time.perf_counter() - t0
        kn, cn = canonical_key(complete_digraph(n)), canonical_key(directed_cycle(n))
        for r in reps:
            if not (abs(r.min_value - (n - 1)) <= 1e-9 and r.minimizers == [kn]
                    and abs(r.max_value - n * (n - 1) / 2) <= 1e-9 and r.maximizers == [cn]):
                bad.append((n, r.alpha))
    ok = not bad and timing[4] < 1.0 and timing[5] < 300.0
    criterion(1, "global extremes K_n / C_n at n = 4, 5", ok,
              f"n=4 {timing[4]:.2f}s, n=5 {timing[5]:.1f}s, mismatches {bad}")
    assert ok


def test_c02_closed_form_equivalence(criterion):
    t0 = time.perf_counter()
    worst, cells = 0.0, 0
    for n in range(3, 13):
        for k in range(1, n - 1):
            for m in range(1, n - k):
                g = k_n_k_m(n, k, m)
                for a in GRID:
                    worst = max(worst, abs(mu_closed_form(n, k, m, a) - mu_alpha(g, a).radius))
                    cells += 1
    elapsed = time.perf_counter() - t0
    ok = worst <= 1e-8 and elapsed < 30
    criterion(2, "closed form = numeric root for K(n,k,m), n <= 12", ok,
              f"{cells} cells, max err {worst:.2e}, {elapsed:.1f}s")
    assert ok


def test_c03_alpha_zero_tie(criterion):
    worst = 0.0
    for n in range(3, 41):
        for k in range(1, n - 1):
            a, b = mu_closed_form(n, k, 1, 0), mu_closed_form(n, k, n - k - 1, 0)
            explicit = (n - 2 + math.sqrt(n * n + 4 * n - 4 * k - 4)) / 2
            worst = max(worst, abs(a - b), abs(a - explicit), abs(alpha_zero_connectivity_min(n, k) - a))
    ok = worst <= 1e-12
    criterion(3, "alpha = 0 tie K(n,k,1) ~ K(n,k,n-k-1), n <= 40", ok, f"max diff {worst:.1e}")
    assert ok


def test_c04_strict_ordering(criterion):
    smallest, cells = math.inf, 0
    for n in range(4, 41):
        for k in range(1, n - 1):
            if n < 2 * k + 2:
                continue
            for a in POSITIVE:
                smallest = min(smallest, mu_closed_form(n, k, n - k - 1, a) - mu_closed_form(n, k, 1, a))
                cells += 1
    ok = smallest > 0
    criterion(4, "strict ordering for n >= 2k+2", ok, f"{cells} cells, min gap {smallest:.3e}")
    assert ok


def test_c05_dichromatic_minimizer(criterion, catalogs):
    bad, margin = [], math.inf
    for n in (4, 5):
        for k, a, r in _scan_cells(n, "dichromatic", (2, 3), GRID, catalogs[n]):
            if r.margin is not None:
                margin = min(margin, r.margin)
            if r.minimizers != [canonical_key(t_star(n, k))] or not (r.margin is None or r.margin > 1e-8):
                bad.append((n, k, a))
    ok = not bad
    criterion(5, "dichromatic minimizer is T_n^{k*}", ok, f"min margin {margin:.3e}, failures {bad}")
    assert ok


def test_c06_vertex_connectivity_minimizer(criterion, catalogs):
    bad, gap_region = [], []
    for n in (4, 5):
        for k, a, r in _scan_cells(n, "vertex_conn", range(1, n - 1), GRID, catalogs[n]):
            hit = r.minimizers == _connectivity_expected(n, k, a)
            if a <= 0.8:
                if not hit:
                    bad.append((n, k, a))
            elif not hit:
                gap_region.append((n, k, a))
    ok = not bad
    criterion(6, "vertex-connectivity minimizer K(n,k,1), alpha = 0 tie set", ok,
              f"failures {bad}; alpha = 0.9 off-prediction cells (report only) {gap_region}")
    assert ok


def test_c07_arc_connectivity_minimizer(criterion, catalogs):
    bad = []
    for n in (4, 5):
        for k, a, r in _scan_cells(n, "arc_conn", range(1, n - 1), GRID, catalogs[n]):
            if r.minimizers != _connectivity_expected(n, k, a):
                bad.append((n, k, a))
    ok = not bad
    criterion(7, "arc-connectivity minimizer K(n,k,1), alpha = 0 tie set", ok, f"failures {bad}")
    assert ok


def test_c08_arc_monotonicity(criterion):
    rep = monotonicity_check(1000, (3, 4, 5), seed=2024, alphas=GRID)
    ok = not rep.counterexamples and rep.min_gap > 1e-9
    criterion(8, "mu strictly drops on arc addition", ok,
              f"{rep.checks} checks, min gap {rep.min_gap:.3e}, "
              f"{len(rep.counterexamples)} counterexamples")
    assert ok


def test_c09_bound_suite(criterion):
    alphas = sorted(set(GRID) | {0.75})
    reps = [bound_suite(n, alphas, labeled=True) for n in (2, 3, 4)]
    ok = all(r.passed for r in reps) and reps[-1].digraphs == 1606
    detail = "; ".join(f"n={r.n}: {r.digraphs} digraphs, {r.checks} checks, "
                       f"{r.low_alpha_equalities} equalities at alpha <= 1/2" for r in reps)
    criterion(9, "row-sum, alpha*Tr_max and transmission bounds, n <= 4", ok, detail)
    assert ok


def test_c10_consistency_anchor(criterion):
    rng = np.random.default_rng(10)
    worst = 0.0
    for _ in range(100):
        g = random_sc_digraph(int(rng.integers(2, 9)), rng)
        d = np.array(floyd_warshall(g), dtype=float)
        q = np.diag(d.sum(axis=1)) + d
        worst = max(worst, abs(2 * mu_alpha(g, 0.5).radius - dense_perron(q)))
    ok = worst <= 1e-9
    criterion(10, "2 mu_{1/2} = Perron root of Diag(Tr) + D", ok, f"max diff {worst:.2e}")
    assert ok


def test_c11_second_minimum(criterion, catalogs):
    bad, worst = [], 0.0
    for n in (4, 5):
        expected = [canonical_key(k_n_k_m(n, n - 2, 1))]
        for a in GRID:
            r = extremal_scan(n, a, "all", catalog=catalogs[n])
            err = abs(r.second_value - second_min_closed_form(n, a))
            worst = max(worst, err)
            if err > 1e-8 or r.second_minimizers != expected:
                bad.append((n, a))
    ok = not bad
    criterion(11, "second minimum is K_n minus an arc", ok, f"max err {worst:.1e}, failures {bad}")
    assert ok


def test_c12_conjecture_sweep(criterion):
    alphas = [round(0.05 * i, 12) for i in range(1, 20)]
    t0 = time.perf_counter()
    cells = conjecture_sweep(30, alphas)
    elapsed = time.perf_counter() - t0
    covered = [c for c in cells if c.covered and c.counterexample]
    open_flags = [c for c in cells if not c.covered and c.counterexample]
    ok = not covered and elapsed < 10
    criterion(12, "K(n,k,m) sweep, n <= 30 (report only on the open region)", ok,
              f"{len(cells)} cells in {elapsed:.2f}s, {len(covered)} flags in proven region, "
              f"{len(open_flags)} in open region")
    assert ok
