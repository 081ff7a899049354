"""Exhaustive enumeration of strongly connected digraphs on a few vertices.

A labeled digraph on ``n`` vertices is an ``n(n-1)``-bit arc mask (bit
layout in :func:`dalpha.digraph.arc_bit`). Enumeration walks masks in
increasing order, filters strong connectivity with vectorised bit
reachability, and groups masks into isomorphism classes by computing each
new mask's full orbit under vertex relabeling. The canonical key of a
class is the smallest mask in its orbit.
"""

from __future__ import annotations

import os
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from functools import cached_property, lru_cache
from itertools import permutations
from typing import Iterator

import numpy as np

from .coloring import dichromatic_number
from .connectivity import arc_connectivity, vertex_connectivity
from .digraph import Digraph, arc_bit, arc_of_bit, distance_data
from .errors import SizeCap
from .spectrum import dalpha_stack, perron_batch

DEFAULT_MAX_N = 5
HARD_MAX_N = 6
CANONICAL_MAX_N = 8
CHUNK = 1 << 20


def enumeration_cap(allow_n6: bool = False) -> int:
    env = os.environ.get("DALPHA_MAX_N")
    cap = DEFAULT_MAX_N
    if env:
        try:
            cap = int(env)
        except ValueError:
            raise SizeCap(f"DALPHA_MAX_N must be an integer, got {env!r}") from None
        if cap > HARD_MAX_N:
            raise SizeCap(f"DALPHA_MAX_N={cap} refused; enumeration stops at n = {HARD_MAX_N}")
    if allow_n6:
        cap = max(cap, HARD_MAX_N)
    return cap


def check_enumerable(n: int, allow_n6: bool = False) -> None:
    if n < 2:
        raise SizeCap(f"enumeration needs n >= 2, got {n}")
    cap = enumeration_cap(allow_n6)
    if n > cap:
        hint = " (pass allow_n6 / --allow-n6 for n = 6)" if n == HARD_MAX_N else ""
        raise SizeCap(f"n = {n} exceeds the enumeration cap {cap}{hint}")


def n_masks(n: int) -> int:
    return 1 << (n * (n - 1))


@lru_cache(maxsize=None)
def neighbour_bits(n: int) -> tuple[tuple[tuple[int, int], ...], ...]:
    """For each vertex v, pairs ``(bit of arc (v, w), w)``."""
    return tuple(tuple((arc_bit(n, v, w), w) for w in range(n) if w != v) for v in range(n))


def neighbour_masks(n: int, masks: np.ndarray, reverse: bool = False) -> list[np.ndarray]:
    """Per-vertex out- (or in-) neighbourhood bitmasks for an array of arc masks."""
    out = [np.zeros(masks.shape, dtype=np.int64) for _ in range(n)]
    for v, pairs in enumerate(neighbour_bits(n)):
        for b, w in pairs:
            bit = (masks >> b) & 1
            if reverse:
                out[w] |= bit << v
            else:
                out[v] |= bit << w
    return out


def _reaches_all(n: int, nbrs: list[np.ndarray]) -> np.ndarray:
    seen = np.ones(nbrs[0].shape, dtype=np.int64)
    for _ in range(n - 1):
        nxt = seen.copy()
        for v in range(n):
            nxt |= np.where((seen >> v) & 1 == 1, nbrs[v], 0)
        seen = nxt
    return seen == (1 << n) - 1


def strongly_connected_filter(n: int, masks: np.ndarray) -> np.ndarray:
    """Boolean array: which arc masks are strongly connected digraphs."""
    masks = np.asarray(masks, dtype=np.int64)
    ok = _reaches_all(n, neighbour_masks(n, masks))
    sub = masks[ok]
    ok[ok] = _reaches_all(n, neighbour_masks(n, sub, reverse=True))
    return ok


def sc_masks(n: int, lo: int = 0, hi: int | None = None, chunk: int = CHUNK) -> np.ndarray:
    """Sorted strongly connected arc masks in ``[lo, hi)``."""
    hi = n_masks(n) if hi is None else hi
    parts = []
    for start in range(lo, hi, chunk):
        masks = np.arange(start, min(start + chunk, hi), dtype=np.int64)
        parts.append(masks[strongly_connected_filter(n, masks)])
    return np.concatenate(parts) if parts else np.zeros(0, dtype=np.int64)


def enumerate_sc(n: int, lo: int = 0, hi: int | None = None,
                 allow_n6: bool = False) -> Iterator[Digraph]:
    """Every strongly connected labeled digraph on ``n`` vertices, in mask order.

    ``[lo, hi)`` restricts to a bitmask interval so callers can shard.
    """
    check_enumerable(n, allow_n6)
    hi = n_masks(n) if hi is None else hi
    for start in range(lo, hi, CHUNK):
        for mask in sc_masks(n, start, min(start + CHUNK, hi)):
            yield Digraph.from_mask(n, int(mask))


def shard_bounds(n: int, shards: int) -> list[tuple[int, int]]:
    total = n_masks(n)
    cuts = [total * i // shards for i in range(shards + 1)]
    return [(cuts[i], cuts[i + 1]) for i in range(shards) if cuts[i] < cuts[i + 1]]


# -- canonical forms ---------------------------------------------------------

@lru_cache(maxsize=None)
def perm_bit_table(n: int) -> np.ndarray:
    """``T[p, b]`` = bit of the image of arc ``b`` under the p-th permutation."""
    nb = n * (n - 1)
    arcs = [arc_of_bit(n, b) for b in range(nb)]
    perms = list(permutations(range(n)))
    table = np.empty((len(perms), nb), dtype=np.int64)
    for p, perm in enumerate(perms):
        table[p] = [arc_bit(n, perm[u], perm[v]) for u, v in arcs]
    table.setflags(write=False)
    return table


def orbit(n: int, mask: int) -> np.ndarray:
    """Sorted distinct arc masks isomorphic to ``mask``."""
    table = perm_bit_table(n)
    bits = [b for b in range(n * (n - 1)) if mask >> b & 1]
    if not bits:
        return np.zeros(1, dtype=np.int64)
    images = (np.int64(1) << table[:, bits]).sum(axis=1)
    return np.unique(images)


def canonical_mask(n: int, mask: int) -> int:
    return int(orbit(n, mask)[0])


def canonical_key(g: Digraph) -> int:
    """Smallest arc mask over all relabelings; equal keys iff isomorphic."""
    if g.n > CANONICAL_MAX_N:
        raise SizeCap(f"brute-force canonical form capped at n <= {CANONICAL_MAX_N}")
    if g.n == 1:
        return 0
    return canonical_mask(g.n, g.mask)


def classify_shard(n: int, lo: int, hi: int) -> dict[int, int]:
    """Canonical key -> number of labeled SC digraphs in ``[lo, hi)`` with that key."""
    masks = sc_masks(n, lo, hi)
    assigned = np.zeros(masks.size, dtype=bool)
    counts: dict[int, int] = {}
    i = 0
    while i < masks.size:
        if assigned[i]:
            i += 1
            continue
        orb = orbit(n, int(masks[i]))
        # strong connectivity is relabeling-invariant, so in-range images are in ``masks``
        inside = orb[(orb >= lo) & (orb < hi)]
        assigned[np.searchsorted(masks, inside)] = True
        counts[int(orb[0])] = int(inside.size)
        i += 1
    return counts


def _classify_args(args):
    return classify_shard(*args)


def merge_counts(parts) -> dict[int, int]:
    total: dict[int, int] = {}
    for part in parts:
        for key, c in part.items():
            total[key] = total.get(key, 0) + c
    return dict(sorted(total.items()))


# -- catalog of isomorphism classes ------------------------------------------

@dataclass(eq=False)
class Catalog:
    """All isomorphism classes of SC digraphs on ``n`` vertices, with lazy invariants."""

    n: int
    keys: np.ndarray          # canonical masks, ascending
    counts: np.ndarray        # labeled members per class
    _radii: dict = field(default_factory=dict, repr=False)

    @property
    def size(self) -> int:
        return int(self.keys.size)

    @property
    def labeled_total(self) -> int:
        return int(self.counts.sum())

    def index_of(self, key: int) -> int:
        i = int(np.searchsorted(self.keys, key))
        if i >= self.keys.size or self.keys[i] != key:
            raise KeyError(key)
        return i

    @cached_property
    def digraphs(self) -> list[Digraph]:
        return [Digraph.from_mask(self.n, int(k)) for k in self.keys]

    @cached_property
    def distances(self) -> np.ndarray:
        return np.stack([distance_data(g).dist for g in self.digraphs])

    @cached_property
    def dichromatic(self) -> np.ndarray:
        return np.array([dichromatic_number(g)[0] for g in self.digraphs])

    @cached_property
    def vertex_conn(self) -> np.ndarray:
        return np.array([vertex_connectivity(g).value for g in self.digraphs])

    @cached_property
    def arc_conn(self) -> np.ndarray:
        return np.array([arc_connectivity(g) for g in self.digraphs])

    def radii(self, alpha: float) -> np.ndarray:
        alpha = float(alpha)
        if alpha not in self._radii:
            r, _, _, _ = perron_batch(dalpha_stack(self.distances, alpha))
            r.setflags(write=False)
            self._radii[alpha] = r
        return self._radii[alpha]


def build_catalog(n: int, shards: int = 1, allow_n6: bool = False,
                  workers: int | None = None) -> Catalog:
    """Enumerate and classify; the result does not depend on ``shards``."""
    check_enumerable(n, allow_n6)
    jobs = [(n, lo, hi) for lo, hi in shard_bounds(n, shards)]
    if shards > 1 and (workers or os.cpu_count() or 1) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            parts = list(pool.map(_classify_args, jobs))
    else:
        parts = [classify_shard(*j) for j in jobs]
    merged = merge_counts(parts)
    keys = np.fromiter(merged.keys(), dtype=np.int64, count=len(merged))
    counts = np.fromiter(merged.values(), dtype=np.int64, count=len(merged))
    return Catalog(n, keys, counts)


_CATALOGS: dict[int, Catalog] = {}


def get_catalog(n: int, shards: int = 1, allow_n6: bool = False) -> Catalog:
    """Process-wide cached catalog.

    ``shards`` only affects how a missing entry is built; since the result is
    shard-independent, one cache slot per ``n`` is enough.
    """
    if n not in _CATALOGS:
        _CATALOGS[n] = build_catalog(n, shards, allow_n6)
    return _CATALOGS[n]
