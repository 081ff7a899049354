"""Exact dichromatic number by backtracking over acyclic colour classes."""

from __future__ import annotations

from dataclasses import dataclass

from .digraph import Digraph, reach_mask
from .errors import SizeCap

DEFAULT_CAP = 10


@dataclass(frozen=True)
class Coloring:
    k: int
    assignment: tuple[int, ...]

    def classes(self) -> list[list[int]]:
        out = [[] for _ in range(self.k)]
        for v, c in enumerate(self.assignment):
            out[c].append(v)
        return out

    def sizes(self) -> list[int]:
        return [len(c) for c in self.classes()]


def _closes_cycle(g: Digraph, v: int, cls: int) -> bool:
    """Would adding ``v`` to the acyclic set ``cls`` create a directed cycle through ``v``?"""
    inside = cls | (1 << v)
    reached = reach_mask(g.out_masks, g.out_masks[v] & cls, within=cls)
    return bool(reached & g.in_masks[v] & inside)


def _try_colour(g: Digraph, order: list[int], k: int) -> list[int] | None:
    classes = [0] * k
    assign = [-1] * g.n

    def place(i: int, used: int) -> bool:
        if i == len(order):
            return True
        v = order[i]
        # new classes are opened in index order, so only one empty class is tried
        for c in range(min(used + 1, k)):
            if _closes_cycle(g, v, classes[c]):
                continue
            classes[c] |= 1 << v
            assign[v] = c
            if place(i + 1, max(used, c + 1)):
                return True
            classes[c] &= ~(1 << v)
            assign[v] = -1
        return False

    return assign if place(0, 0) else None


def dichromatic_number(g: Digraph, cap: int = DEFAULT_CAP) -> tuple[int, Coloring]:
    """Smallest ``k`` admitting a partition into ``k`` acyclic sets, plus a witness.

    Each ``k`` from 1 upward is refuted or realised by a complete search, so
    the returned value is exact.
    """
    if g.n > cap:
        raise SizeCap(f"exact dichromatic search capped at n <= {cap}, got n = {g.n}")
    order = sorted(range(g.n), key=lambda v: -(g.out_degree(v) + g.in_degree(v)))
    for k in range(1, g.n + 1):
        assign = _try_colour(g, order, k)
        if assign is not None:
            return k, Coloring(k, tuple(assign))
    raise AssertionError("n singleton classes always form a colouring")
