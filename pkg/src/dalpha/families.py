"""Named digraph families and closed-form spectral radii.

Vertex layout of ``K(n, k, m)``: ``[0, k)`` is the hub clique S,
``[k, k+m)`` the source clique (every arc from it into the sink clique is
present, none back), ``[k+m, n)`` the sink clique.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import combinations
from typing import Sequence

from .digraph import Digraph, build_digraph
from .errors import InvalidParams, NegativeRadicand
from .spectrum import check_alpha


def complete_digraph(n: int) -> Digraph:
    if n < 1:
        raise InvalidParams(f"complete digraph needs n >= 1, got {n}")
    return build_digraph(n, [(u, v) for u in range(n) for v in range(n) if u != v])


def directed_cycle(n: int) -> Digraph:
    if n < 2:
        raise InvalidParams(f"directed cycle needs n >= 2, got {n}")
    return build_digraph(n, [(i, (i + 1) % n) for i in range(n)])


def transitive_tournament(n: int) -> Digraph:
    if n < 1:
        raise InvalidParams(f"transitive tournament needs n >= 1, got {n}")
    return build_digraph(n, combinations(range(n), 2))


def t_partition_digraph(sizes: Sequence[int]) -> Digraph:
    """Transitive tournaments on consecutive label blocks, every cross pair a digon."""
    sizes = [int(s) for s in sizes]
    if len(sizes) < 2:
        raise InvalidParams(f"need at least 2 classes, got {len(sizes)}")
    if any(s < 1 for s in sizes):
        raise InvalidParams(f"class sizes must be >= 1, got {sizes}")
    n = sum(sizes)
    block = []
    for i, s in enumerate(sizes):
        block += [i] * s
    arcs = [(u, v) for u in range(n) for v in range(n)
            if u != v and (block[u] != block[v] or u < v)]
    return build_digraph(n, arcs)


def balanced_sizes(n: int, k: int) -> list[int]:
    q, r = divmod(n, k)
    return [q + 1] * r + [q] * (k - r)


def t_star(n: int, k: int) -> Digraph:
    if not 2 <= k <= n:
        raise InvalidParams(f"t_star needs 2 <= k <= n, got n={n}, k={k}")
    return t_partition_digraph(balanced_sizes(n, k))


def _check_nkm(n: int, k: int, m: int):
    if not 1 <= k <= n - 2:
        raise InvalidParams(f"need 1 <= k <= n-2, got n={n}, k={k}")
    if not 1 <= m <= n - k - 1:
        raise InvalidParams(f"need 1 <= m <= n-k-1 = {n - k - 1}, got m={m}")


def k_n_k_m(n: int, k: int, m: int) -> Digraph:
    _check_nkm(n, k, m)
    hub = range(k)
    src = range(k, k + m)
    sink = range(k + m, n)
    arcs = []
    for part in (list(hub) + list(src), list(hub) + list(sink)):
        arcs += [(u, v) for u in part for v in part if u != v]
    arcs += [(u, v) for u in src for v in sink]
    return build_digraph(n, arcs)


def mu_closed_form(n: int, k: int, m: int, alpha: float) -> float:
    """Spectral radius of ``D_alpha(K(n, k, m))`` as the larger root of its 2x2 quotient."""
    _check_nkm(n, k, m)
    a = check_alpha(alpha)
    rad = ((1 - a) ** 2 * n * n + (2 * a * a - 6 * a + 4) * m * n
           + (a * a + 4 * a - 4) * m * m - 4 * (1 - a) * k * m)
    if rad < 0:
        raise NegativeRadicand(f"radicand {rad} < 0 at n={n}, k={k}, m={m}, alpha={a}")
    return (a * m + a * n + n - 2 + math.sqrt(rad)) / 2


def second_min_closed_form(n: int, alpha: float) -> float:
    """Spectral radius of ``K_n`` minus one arc, the runner-up over all SC digraphs."""
    if n < 3:
        raise InvalidParams(f"need n >= 3, got {n}")
    a = check_alpha(alpha)
    rad = (1 - a) ** 2 * n * n - 2 * a * (1 - a) * n + a * a - 4 * a + 4
    return (n + a * n + a - 2 + math.sqrt(rad)) / 2


def alpha_zero_connectivity_min(n: int, k: int) -> float:
    """Common value of ``K(n,k,1)`` and ``K(n,k,n-k-1)`` at alpha = 0."""
    return (n - 2 + math.sqrt(n * n + 4 * n - 4 * k - 4)) / 2


@dataclass(frozen=True)
class FamilySpec:
    kind: str
    params: tuple[int, ...]

    KINDS = ("complete", "cycle", "transitive_tournament", "t_partition", "t_star", "k_n_k_m")

    def build(self) -> Digraph:
        p = self.params
        try:
            if self.kind == "complete":
                return complete_digraph(*p)
            if self.kind == "cycle":
                return directed_cycle(*p)
            if self.kind == "transitive_tournament":
                return transitive_tournament(*p)
            if self.kind == "t_partition":
                return t_partition_digraph(p)
            if self.kind == "t_star":
                return t_star(*p)
            if self.kind == "k_n_k_m":
                return k_n_k_m(*p)
        except TypeError as exc:
            raise InvalidParams(f"{self.kind}: wrong number of parameters {p}") from exc
        raise InvalidParams(f"unknown family {self.kind!r}")
