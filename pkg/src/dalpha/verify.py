"""Exhaustive extremal scans and numeric experiments.

Scans run over isomorphism classes (see :mod:`dalpha.enumeration`); the
spectral radius and all invariants are relabeling-invariant, so each class
is evaluated once.
"""

from __future__ import annotations

import math
import re
from dataclasses import asdict, dataclass, field
from typing import Iterable, Sequence

import numpy as np

from .digraph import (Digraph, add_arc, distance_data, is_strongly_connected, missing_arcs,
                      reach_mask)
from .enumeration import (Catalog, canonical_key, check_enumerable,
                          get_catalog, n_masks, neighbour_bits, sc_masks)
from .errors import EmptyClass, InvalidParams
from .families import (complete_digraph, directed_cycle, k_n_k_m, mu_closed_form, t_star)
from .spectrum import (DEFAULT_ALPHA_GRID, TIE_TOL, check_alpha, dalpha_stack, perron_batch)

BOUND_TOL = 1e-9
GAP_TOL = 1e-9
THRESHOLD_ALPHA = 0.8  # minimiser over K(n,k,m) is proven to be m = 1 up to here


@dataclass(frozen=True)
class ClassSelector:
    kind: str = "all"     # all | dichromatic | vertex_conn | arc_conn
    k: int | None = None

    KINDS = ("all", "dichromatic", "vertex_conn", "arc_conn")

    def __post_init__(self):
        if self.kind not in self.KINDS:
            raise InvalidParams(f"unknown invariant class {self.kind!r}")
        if (self.kind == "all") != (self.k is None):
            raise InvalidParams(f"class {self.kind!r} {'takes no' if self.kind == 'all' else 'needs a'} parameter")

    @classmethod
    def parse(cls, text: str) -> "ClassSelector":
        m = re.fullmatch(r"\s*(\w+)\s*(?:\(\s*(\d+)\s*\))?\s*", text)
        if not m:
            raise InvalidParams(f"cannot parse class selector {text!r}")
        return cls(m.group(1), int(m.group(2)) if m.group(2) else None)

    def __str__(self):
        return self.kind if self.k is None else f"{self.kind}({self.k})"

    def mask(self, cat: Catalog) -> np.ndarray:
        if self.kind == "all":
            return np.ones(cat.size, dtype=bool)
        values = {"dichromatic": cat.dichromatic, "vertex_conn": cat.vertex_conn,
                  "arc_conn": cat.arc_conn}[self.kind]
        return values == self.k


@dataclass
class ExtremalReport:
    n: int
    alpha: float
    invariant_class: str
    class_size: int
    labeled_members: int
    min_value: float
    max_value: float
    minimizers: list[int]
    maximizers: list[int]
    second_value: float | None
    second_minimizers: list[int]
    margin: float | None
    expected_minimizers: list[int]
    expected_maximizers: list[int]
    matches: bool
    bound_violations: int = 0

    def as_dict(self) -> dict:
        return asdict(self)


def expected_extremes(n: int, alpha: float, sel: ClassSelector) -> tuple[list[int], list[int]]:
    """Canonical keys of the predicted minimiser(s) and, for the full class, maximiser."""
    if sel.kind == "all":
        return [canonical_key(complete_digraph(n))], [canonical_key(directed_cycle(n))]
    if sel.kind == "dichromatic":
        if not 2 <= sel.k <= n:
            return [], []
        return [canonical_key(t_star(n, sel.k))], []
    k = sel.k
    if not 1 <= k <= n - 2:
        return [], []
    keys = {canonical_key(k_n_k_m(n, k, 1))}
    if alpha == 0.0:
        keys.add(canonical_key(k_n_k_m(n, k, n - k - 1)))
    return sorted(keys), []


def _bound_violations(cat: Catalog, idx: np.ndarray, radii: np.ndarray, alpha: float) -> int:
    d = cat.distances[idx].astype(float)
    tr = d.sum(axis=2)
    t = np.einsum("bij,bj->bi", d, tr)
    vals = alpha * tr + (1 - alpha) * t / tr
    bad = ((radii < vals.min(axis=1) - BOUND_TOL) | (radii > vals.max(axis=1) + BOUND_TOL)
           | (radii <= alpha * tr.max(axis=1))
           | (radii < tr.min(axis=1) - BOUND_TOL) | (radii > tr.max(axis=1) + BOUND_TOL))
    return int(bad.sum())


def extremal_scan(n: int, alpha: float, selector: ClassSelector | str = "all",
                  shards: int = 1, allow_n6: bool = False,
                  catalog: Catalog | None = None) -> ExtremalReport:
    """Minimum and maximum ``mu_alpha`` over SC digraphs on ``n`` vertices in one class.

    Extremes are grouped with absolute tolerance ``TIE_TOL``; every class within
    it is listed, so a false uniqueness claim shows up as a longer list.
    """
    alpha = check_alpha(alpha)
    sel = ClassSelector.parse(selector) if isinstance(selector, str) else selector
    check_enumerable(n, allow_n6)
    if catalog is None:
        catalog = get_catalog(n, shards, allow_n6)
    member = sel.mask(catalog)
    idx = np.flatnonzero(member)
    if idx.size == 0:
        raise EmptyClass(f"no SC digraph on {n} vertices lies in class {sel}")
    radii = catalog.radii(alpha)[idx]
    keys = catalog.keys[idx]
    lo, hi = float(radii.min()), float(radii.max())
    at_min = radii <= lo + TIE_TOL
    at_max = radii >= hi - TIE_TOL
    rest = radii[~at_min]
    second = float(rest.min()) if rest.size else None
    second_keys = sorted(int(k) for k in keys[~at_min][rest <= second + TIE_TOL]) if rest.size else []
    exp_min, exp_max = expected_extremes(n, alpha, sel)
    minimizers = sorted(int(k) for k in keys[at_min])
    maximizers = sorted(int(k) for k in keys[at_max])
    matches = minimizers == exp_min and (not exp_max or maximizers == exp_max)
    return ExtremalReport(
        n=n, alpha=alpha, invariant_class=str(sel),
        class_size=int(idx.size), labeled_members=int(catalog.counts[idx].sum()),
        min_value=lo, max_value=hi, minimizers=minimizers, maximizers=maximizers,
        second_value=second, second_minimizers=second_keys,
        margin=None if second is None else second - lo,
        expected_minimizers=exp_min, expected_maximizers=exp_max, matches=matches,
        bound_violations=_bound_violations(catalog, idx, radii, alpha),
    )


def proven_region(sel: ClassSelector, n: int, alpha: float) -> bool:
    """Whether a proven statement predicts the minimiser for this cell."""
    if sel.kind == "vertex_conn":
        return alpha <= THRESHOLD_ALPHA or n >= 2 * sel.k + 2
    return True


# -- arc-addition monotonicity -------------------------------------------------

@dataclass
class MonotonicityReport:
    seed: int
    trials: int
    n_range: list[int]
    alphas: list[float]
    checks: int
    min_gap: float
    counterexamples: list[dict] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.counterexamples and self.min_gap > GAP_TOL

    def as_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


def random_sc_digraph(n: int, rng: np.random.Generator) -> Digraph:
    """Uniform over SC labeled digraphs on ``n`` vertices (rejection over arc subsets)."""
    while True:
        g = Digraph.from_mask(n, int(rng.integers(0, n_masks(n))))
        if is_strongly_connected(g):
            return g


def monotonicity_check(trials: int, n_range: Sequence[int] = (3, 4, 5), seed: int = 0,
                       alphas: Iterable[float] = DEFAULT_ALPHA_GRID) -> MonotonicityReport:
    """Add a random missing arc to a random SC digraph; ``mu_alpha`` must drop strictly."""
    if trials < 1:
        raise InvalidParams("trials must be >= 1")
    alphas = [check_alpha(a) for a in alphas]
    rng = np.random.default_rng(seed)
    report = MonotonicityReport(seed, trials, list(n_range), alphas, 0, math.inf)
    for _ in range(trials):
        n = int(rng.choice(list(n_range)))
        g = random_sc_digraph(n, rng)
        while g.is_complete:
            g = random_sc_digraph(n, rng)
        gaps = missing_arcs(g)
        u, v = gaps[int(rng.integers(len(gaps)))]
        h = add_arc(g, u, v)
        dists = np.stack([distance_data(g).dist, distance_data(h).dist])
        stack = np.concatenate([dalpha_stack(dists, a) for a in alphas])
        radii = perron_batch(stack)[0].reshape(len(alphas), 2)
        for a, (before, after) in zip(alphas, radii):
            gap = float(before - after)
            report.checks += 1
            report.min_gap = min(report.min_gap, gap)
            if gap <= GAP_TOL:
                report.counterexamples.append(
                    {"arcs": g.sorted_arcs(), "n": n, "added": [u, v], "alpha": a, "gap": gap})
    return report


# -- closed-form sweep over K(n, k, m) -------------------------------------------

@dataclass
class ConjectureCell:
    n: int
    k: int
    alpha: float
    values: list[float]       # mu_alpha(K(n, k, m)) for m = 1 .. n-k-1
    argmin_m: int
    margin: float | None      # second best minus best; None when only m = 1 exists
    counterexample: bool
    covered: bool             # inside the proven region (alpha <= 4/5 or n >= 2k+2)

    @property
    def mu_min(self) -> float:
        return self.values[self.argmin_m - 1]

    def as_dict(self) -> dict:
        d = asdict(self)
        d["mu_min"] = self.mu_min
        return d


def conjecture_sweep(n_max: int, alphas: Iterable[float], n_min: int = 4) -> list[ConjectureCell]:
    """For each ``(n, k, alpha)``, which ``m`` minimises ``mu_alpha(K(n, k, m))``?"""
    if n_max < 4:
        raise InvalidParams(f"n_max must be >= 4, got {n_max}")
    grid = sorted({check_alpha(a) for a in alphas if a > 0})
    cells = []
    for n in range(n_min, n_max + 1):
        for k in range(1, n - 1):
            for a in grid:
                vals = [mu_closed_form(n, k, m, a) for m in range(1, n - k)]
                best = min(vals)
                # ties resolve to the smallest m
                arg = next(i for i, v in enumerate(vals) if v <= best + TIE_TOL) + 1
                others = sorted(vals[:arg - 1] + vals[arg:])
                cells.append(ConjectureCell(
                    n=n, k=k, alpha=a, values=vals, argmin_m=arg,
                    margin=others[0] - vals[arg - 1] if others else None,
                    counterexample=arg != 1,
                    covered=a <= THRESHOLD_ALPHA or n >= 2 * k + 2,
                ))
    return cells


# -- minimum arc cuts and component sizes ----------------------------------------

@dataclass
class CutReport:
    n: int
    k: int
    class_size: int           # labeled SC digraphs with arc connectivity k, all degrees > k
    cuts_checked: int
    two_component_cuts: int
    other_cuts: int           # cuts leaving more than two components (outside the hypothesis)
    violation_count: int = 0
    violations: list[dict] = field(default_factory=list)  # first few only

    @property
    def vacuous(self) -> bool:
        return self.class_size == 0

    @property
    def passed(self) -> bool:
        return self.violation_count == 0

    def as_dict(self) -> dict:
        d = asdict(self)
        d["vacuous"] = self.vacuous
        d["passed"] = self.passed
        return d


def _cut_tables(n: int) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Arc masks of out-cuts for every proper nonempty vertex subset, and per-vertex out/in arc masks."""
    pairs = neighbour_bits(n)
    out_arcs = np.zeros(n, dtype=np.int64)
    in_arcs = np.zeros(n, dtype=np.int64)
    for v, row in enumerate(pairs):
        for b, w in row:
            out_arcs[v] |= 1 << b
            in_arcs[w] |= 1 << b
    subsets = range(1, (1 << n) - 1)
    cuts = np.zeros(len(subsets), dtype=np.int64)
    for i, s in enumerate(subsets):
        for v, row in enumerate(pairs):
            if s >> v & 1:
                for b, w in row:
                    if not s >> w & 1:
                        cuts[i] |= 1 << b
    return cuts, out_arcs, in_arcs


def _components(g: Digraph) -> list[int]:
    left = (1 << g.n) - 1
    sizes = []
    while left:
        v = (left & -left).bit_length() - 1
        comp = reach_mask(g.out_masks, 1 << v) & reach_mask(g.in_masks, 1 << v)
        sizes.append(comp.bit_count())
        left &= ~comp
    return sorted(sizes)


def cut_component_check(n: int, k: int, allow_n6: bool = False,
                        chunk: int = 1 << 20, progress=None) -> CutReport:
    """Check that two-component minimum arc cuts leave sides of size >= k + 2.

    Scope: SC digraphs with arc connectivity ``k`` and every in- and
    out-degree above ``k``. A minimum arc cut is exactly the out-cut of some
    vertex subset, so all of them are found by scanning subsets.
    """
    check_enumerable(n, allow_n6)
    if k < 1:
        raise InvalidParams("k must be >= 1")
    cuts, out_arcs, in_arcs = _cut_tables(n)
    report = CutReport(n, k, 0, 0, 0, 0)
    total = n_masks(n)
    for start in range(0, total, chunk):
        masks = np.arange(start, min(start + chunk, total), dtype=np.int64)
        ok = np.ones(masks.size, dtype=bool)
        for v in range(n):
            ok &= np.bitwise_count(masks & out_arcs[v]) > k
            ok &= np.bitwise_count(masks & in_arcs[v]) > k
        masks = masks[ok]
        conn = np.full(masks.size, 1 << 30, dtype=np.int64)
        for c in cuts:
            np.minimum(conn, np.bitwise_count(masks & c), out=conn)
        for mask in masks[conn == k]:
            _check_cuts(n, k, int(mask), cuts, report)
        if progress:
            progress(start + chunk, total)
    return report


def _check_cuts(n: int, k: int, mask: int, cuts: np.ndarray, report: CutReport) -> None:
    report.class_size += 1
    g = Digraph.from_mask(n, mask)
    seen = set()
    for c in cuts:
        s = int(c) & mask
        if s.bit_count() != k or s in seen:
            continue
        seen.add(s)
        report.cuts_checked += 1
        sizes = _components(Digraph.from_mask(n, mask & ~s))
        if len(sizes) != 2:
            report.other_cuts += 1
            continue
        report.two_component_cuts += 1
        if min(sizes) < k + 2:
            report.violation_count += 1
            if len(report.violations) < 20:
                report.violations.append({"arcs": g.sorted_arcs(), "cut_mask": s, "sizes": sizes})


# -- row-sum bound suite -----------------------------------------------------------

@dataclass
class BoundSuiteReport:
    n: int
    alphas: list[float]
    digraphs: int
    checks: int
    sandwich_violations: int = 0        # lower_rowsum <= mu <= upper_rowsum
    trmax_violations: int = 0           # mu > alpha * Tr_max
    transmission_violations: int = 0    # Tr_min <= mu <= Tr_max
    equality_mismatches: int = 0        # alpha > 1/2: bound attained iff distance regular
    low_alpha_equalities: int = 0       # alpha <= 1/2, non-regular, bound attained (reported only)
    max_residual: float = 0.0

    @property
    def passed(self) -> bool:
        return not (self.sandwich_violations or self.trmax_violations
                    or self.transmission_violations or self.equality_mismatches)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["passed"] = self.passed
        return d


def bound_suite(n: int, alphas: Iterable[float] = DEFAULT_ALPHA_GRID + (0.75,),
                labeled: bool | None = None) -> BoundSuiteReport:
    """Check the row-sum, ``alpha*Tr_max`` and transmission bounds on every SC digraph.

    ``labeled`` walks every labeled digraph (default for ``n <= 4``); otherwise one
    representative per isomorphism class is used.
    """
    check_enumerable(n)
    alphas = sorted({check_alpha(a) for a in alphas})
    if labeled is None:
        labeled = n <= 4
    if labeled:
        graphs = [Digraph.from_mask(n, int(m)) for m in sc_masks(n)]
        dists = np.stack([distance_data(g).dist for g in graphs])
    else:
        dists = get_catalog(n).distances
    d = dists.astype(float)
    tr = d.sum(axis=2)
    t = np.einsum("bij,bj->bi", d, tr)
    regular = tr.min(axis=1) == tr.max(axis=1)
    rep = BoundSuiteReport(n, alphas, int(d.shape[0]), 0)
    for a in alphas:
        radii, _, _, res = perron_batch(dalpha_stack(dists, a))
        vals = a * tr + (1 - a) * t / tr
        lower, upper = vals.min(axis=1), vals.max(axis=1)
        rep.checks += radii.size
        rep.max_residual = max(rep.max_residual, float((res / radii).max()))
        rep.sandwich_violations += int(((radii < lower - BOUND_TOL) | (radii > upper + BOUND_TOL)).sum())
        rep.trmax_violations += int((radii <= a * tr.max(axis=1)).sum())
        rep.transmission_violations += int(((radii < tr.min(axis=1) - BOUND_TOL)
                                            | (radii > tr.max(axis=1) + BOUND_TOL)).sum())
        attained = (np.abs(radii - lower) <= BOUND_TOL) | (np.abs(upper - radii) <= BOUND_TOL)
        if a > 0.5:
            rep.equality_mismatches += int((attained != regular).sum())
        else:
            rep.low_alpha_equalities += int((attained & ~regular).sum())
    return rep
