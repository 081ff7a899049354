"""Labeled simple digraphs and their distance structure.

Vertices are ``0..n-1``. A :class:`Digraph` is immutable; every operation
that "changes" a digraph returns a new one. Neighbourhoods are kept as
integer bitmasks, which keeps reachability tests cheap enough for
exhaustive enumeration.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .errors import ArcExists, InvalidArc, NotStronglyConnected, ParseError

Arc = tuple[int, int]


def arc_bit(n: int, u: int, v: int) -> int:
    """Bit position of arc ``(u, v)`` in the ``n(n-1)``-bit arc mask."""
    return u * (n - 1) + (v - 1 if v > u else v)


def arc_of_bit(n: int, b: int) -> Arc:
    u, r = divmod(b, n - 1)
    return u, (r + 1 if r >= u else r)


@dataclass(frozen=True)
class Digraph:
    n: int
    arcs: frozenset = field(default_factory=frozenset)

    def __post_init__(self):
        if self.n < 1:
            raise InvalidArc(f"vertex count must be positive, got {self.n}")
        for u, v in self.arcs:
            if u == v:
                raise InvalidArc(f"loop at vertex {u}")
            if not (0 <= u < self.n and 0 <= v < self.n):
                raise InvalidArc(f"arc ({u}, {v}) has an endpoint outside [0, {self.n})")

    @classmethod
    def from_mask(cls, n: int, mask: int) -> "Digraph":
        arcs = frozenset(arc_of_bit(n, b) for b in range(n * (n - 1)) if mask >> b & 1)
        return cls(n, arcs)

    @cached_property
    def mask(self) -> int:
        m = 0
        for u, v in self.arcs:
            m |= 1 << arc_bit(self.n, u, v)
        return m

    @cached_property
    def out_masks(self) -> tuple[int, ...]:
        out = [0] * self.n
        for u, v in self.arcs:
            out[u] |= 1 << v
        return tuple(out)

    @cached_property
    def in_masks(self) -> tuple[int, ...]:
        inn = [0] * self.n
        for u, v in self.arcs:
            inn[v] |= 1 << u
        return tuple(inn)

    def out_neighbors(self, v: int) -> list[int]:
        return [w for w in range(self.n) if self.out_masks[v] >> w & 1]

    def in_neighbors(self, v: int) -> list[int]:
        return [w for w in range(self.n) if self.in_masks[v] >> w & 1]

    def out_degree(self, v: int) -> int:
        return self.out_masks[v].bit_count()

    def in_degree(self, v: int) -> int:
        return self.in_masks[v].bit_count()

    def has_arc(self, u: int, v: int) -> bool:
        return (u, v) in self.arcs

    @property
    def is_complete(self) -> bool:
        return len(self.arcs) == self.n * (self.n - 1)

    def relabel(self, perm: Sequence[int]) -> "Digraph":
        """Image of the digraph under ``v -> perm[v]``."""
        return Digraph(self.n, frozenset((perm[u], perm[v]) for u, v in self.arcs))

    def reverse(self) -> "Digraph":
        return Digraph(self.n, frozenset((v, u) for u, v in self.arcs))

    def sorted_arcs(self) -> list[Arc]:
        return sorted(self.arcs)

    def __repr__(self):
        return f"Digraph(n={self.n}, arcs={self.sorted_arcs()})"


def build_digraph(n: int, arcs: Iterable[Arc] = ()) -> Digraph:
    """Digraph on ``n`` vertices with the given arcs; duplicates collapse."""
    return Digraph(n, frozenset((int(u), int(v)) for u, v in arcs))


def reach_mask(nbr_masks: Sequence[int], start: int, within: int | None = None) -> int:
    """Vertices reachable from the ``start`` bitmask, optionally inside ``within``."""
    if within is None:
        within = (1 << len(nbr_masks)) - 1
    seen = start & within
    frontier = seen
    while frontier:
        nxt = 0
        while frontier:
            low = frontier & -frontier
            nxt |= nbr_masks[low.bit_length() - 1]
            frontier ^= low
        nxt &= within & ~seen
        seen |= nxt
        frontier = nxt
    return seen


def is_strongly_connected(g: Digraph) -> bool:
    full = (1 << g.n) - 1
    return reach_mask(g.out_masks, 1) == full and reach_mask(g.in_masks, 1) == full


def induced_is_acyclic(in_masks: Sequence[int], subset: int) -> bool:
    """Peel off sources of the induced subdigraph until nothing or a cycle is left."""
    left = subset
    while left:
        sources = 0
        for v in _bits(left):
            if not in_masks[v] & left:
                sources |= 1 << v
        if not sources:
            return False
        left &= ~sources
    return True


def _bits(mask: int):
    while mask:
        low = mask & -mask
        yield low.bit_length() - 1
        mask ^= low


def is_acyclic(g: Digraph) -> bool:
    return induced_is_acyclic(g.in_masks, (1 << g.n) - 1)


def topological_order(g: Digraph) -> list[int] | None:
    """Ordering in which every arc goes forward, or ``None`` if a cycle exists."""
    indeg = [g.in_degree(v) for v in range(g.n)]
    queue = deque(v for v in range(g.n) if indeg[v] == 0)
    order = []
    while queue:
        v = queue.popleft()
        order.append(v)
        for w in g.out_neighbors(v):
            indeg[w] -= 1
            if indeg[w] == 0:
                queue.append(w)
    return order if len(order) == g.n else None


@dataclass(frozen=True, eq=False)
class DistanceData:
    """Directed distance matrix plus vertex transmissions (row sums)."""

    dist: np.ndarray
    transmissions: np.ndarray

    @property
    def n(self) -> int:
        return self.dist.shape[0]

    @property
    def tr_min(self) -> int:
        return int(self.transmissions.min())

    @property
    def tr_max(self) -> int:
        return int(self.transmissions.max())


def bfs_distances(g: Digraph, source: int) -> list[int]:
    """Unit-length shortest path lengths from ``source``; -1 when unreachable."""
    dist = [-1] * g.n
    dist[source] = 0
    queue = deque([source])
    while queue:
        v = queue.popleft()
        for w in _bits(g.out_masks[v]):
            if dist[w] < 0:
                dist[w] = dist[v] + 1
                queue.append(w)
    return dist


def distance_data(g: Digraph) -> DistanceData:
    rows = [bfs_distances(g, s) for s in range(g.n)]
    dist = np.array(rows, dtype=np.int64)
    if (dist < 0).any():
        i, j = map(int, np.argwhere(dist < 0)[0])
        raise NotStronglyConnected(f"not strongly connected: vertex {j} is unreachable from vertex {i}")
    dist.setflags(write=False)
    tr = dist.sum(axis=1)
    tr.setflags(write=False)
    return DistanceData(dist, tr)


def add_arc(g: Digraph, u: int, v: int) -> Digraph:
    if u == v or not (0 <= u < g.n and 0 <= v < g.n):
        raise InvalidArc(f"cannot add arc ({u}, {v}) to a digraph on {g.n} vertices")
    if (u, v) in g.arcs:
        raise ArcExists(f"arc ({u}, {v}) already present")
    return Digraph(g.n, g.arcs | {(u, v)})


def missing_arcs(g: Digraph) -> list[Arc]:
    return [(u, v) for u in range(g.n) for v in range(g.n) if u != v and (u, v) not in g.arcs]


def disjoint_union(g1: Digraph, g2: Digraph) -> Digraph:
    """``g1`` keeps labels ``0..n1-1``; ``g2`` is shifted by ``n1``."""
    s = g1.n
    return Digraph(g1.n + g2.n, g1.arcs | frozenset((u + s, v + s) for u, v in g2.arcs))


def join(g1: Digraph, g2: Digraph) -> Digraph:
    u = disjoint_union(g1, g2)
    s = g1.n
    cross = set()
    for a in range(g1.n):
        for b in range(s, u.n):
            cross.add((a, b))
            cross.add((b, a))
    return Digraph(u.n, u.arcs | cross)


# -- text format -------------------------------------------------------------

def format_digraph(g: Digraph) -> str:
    lines = [f"n {g.n}"]
    lines += [f"{u} {v}" for u, v in g.sorted_arcs()]
    return "\n".join(lines) + "\n"


def parse_digraph(text: str) -> Digraph:
    """Parse ``n <count>`` followed by one ``u v`` arc per line; ``#`` lines ignored."""
    n = None
    arcs: list[Arc] = []
    seen = set()
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise ParseError(f"line {lineno}: expected 'n <count>', got {raw!r}")
            try:
                n = int(parts[1])
            except ValueError:
                raise ParseError(f"line {lineno}: vertex count is not an integer") from None
            if n < 1:
                raise ParseError(f"line {lineno}: vertex count must be positive")
            continue
        if len(parts) != 2:
            raise ParseError(f"line {lineno}: expected '<u> <v>', got {raw!r}")
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise ParseError(f"line {lineno}: arc endpoints must be integers") from None
        if (u, v) in seen:
            raise ParseError(f"line {lineno}: duplicate arc ({u}, {v})")
        seen.add((u, v))
        arcs.append((u, v))
    if n is None:
        raise ParseError("missing 'n <count>' header")
    try:
        return build_digraph(n, arcs)
    except InvalidArc as exc:
        raise ParseError(str(exc)) from exc


def read_digraph(path) -> Digraph:
    with open(path) as fh:
        return parse_digraph(fh.read())


def write_digraph(g: Digraph, path) -> None:
    with open(path, "w") as fh:
        fh.write(format_digraph(g))
