"""Vertex and arc connectivity of strongly connected digraphs via unit max-flow."""

from __future__ import annotations

from collections import deque
from typing import NamedTuple

from .digraph import Digraph, is_strongly_connected
from .errors import NotStronglyConnected


class VertexConnectivity(NamedTuple):
    value: int
    complete: bool  # K_n has no separating set; value is n-1 by convention


def max_flow(n_nodes: int, cap: dict, s: int, t: int, limit: int | None = None) -> int:
    """Edmonds-Karp on a sparse capacity dict ``{(a, b): c}``; stops early at ``limit``."""
    residual: dict = {}
    adj = [[] for _ in range(n_nodes)]
    for (a, b), c in cap.items():
        if (a, b) not in residual:
            adj[a].append(b)
            adj[b].append(a)
            residual.setdefault((b, a), 0)
        residual[(a, b)] = residual.get((a, b), 0) + c
    flow = 0
    while limit is None or flow < limit:
        parent = [-1] * n_nodes
        parent[s] = s
        queue = deque([s])
        while queue and parent[t] < 0:
            a = queue.popleft()
            for b in adj[a]:
                if parent[b] < 0 and residual[(a, b)] > 0:
                    parent[b] = a
                    queue.append(b)
        if parent[t] < 0:
            break
        push = None
        b = t
        while b != s:
            a = parent[b]
            r = residual[(a, b)]
            push = r if push is None else min(push, r)
            b = a
        b = t
        while b != s:
            a = parent[b]
            residual[(a, b)] -= push
            residual[(b, a)] += push
            b = a
        flow += push
    return flow


def local_vertex_connectivity(g: Digraph, s: int, t: int) -> int:
    """Maximum number of internally disjoint s->t paths; ``(s, t)`` must not be an arc."""
    # vertex x splits into 2x (in) and 2x+1 (out) joined by a unit arc
    big = g.n
    cap = {}
    for x in range(g.n):
        if x not in (s, t):
            cap[(2 * x, 2 * x + 1)] = 1
    for u, v in g.arcs:
        cap[(2 * u + 1, 2 * v)] = big
    return max_flow(2 * g.n, cap, 2 * s + 1, 2 * t)


def local_arc_connectivity(g: Digraph, s: int, t: int, limit: int | None = None) -> int:
    cap = {(u, v): 1 for u, v in g.arcs}
    return max_flow(g.n, cap, s, t, limit)


def _require_sc(g: Digraph):
    if not is_strongly_connected(g):
        raise NotStronglyConnected("connectivity is defined for strongly connected digraphs")


def vertex_connectivity(g: Digraph) -> VertexConnectivity:
    _require_sc(g)
    if g.is_complete:
        return VertexConnectivity(g.n - 1, True)
    best = g.n - 2
    for s in range(g.n):
        for t in range(g.n):
            if s != t and not g.has_arc(s, t):
                best = min(best, local_vertex_connectivity(g, s, t))
                if best == 1:
                    return VertexConnectivity(1, False)
    return VertexConnectivity(best, False)


def arc_connectivity(g: Digraph) -> int:
    """Min over v != 0 of the 0->v and v->0 unit max-flows."""
    _require_sc(g)
    if g.n == 1:
        return 0
    best = min(min(g.out_degree(v), g.in_degree(v)) for v in range(g.n))
    for v in range(1, g.n):
        best = min(best, local_arc_connectivity(g, 0, v, best))
        best = min(best, local_arc_connectivity(g, v, 0, best))
    return best
