"""Generalized distance matrix ``D_alpha(G)`` and its Perron root.

``D_alpha(G) = alpha * Diag(Tr) + (1 - alpha) * D(G)`` for ``0 <= alpha < 1``.
For a strongly connected digraph this matrix is nonnegative and
irreducible, so its spectral radius is a simple eigenvalue with a positive
eigenvector. Shifted power iteration finds it without a general eigensolver.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .digraph import DistanceData, Digraph, distance_data
from .errors import ConvergenceFailure, InvalidAlpha

TOL = 1e-12
MAX_ITER = 10**6
SHIFT = 1.0
TIE_TOL = 1e-8

# 0.5 and 0.8 are hit exactly by i/10
DEFAULT_ALPHA_GRID = tuple(i / 10 for i in range(10))


def check_alpha(alpha: float) -> float:
    alpha = float(alpha)
    if not 0.0 <= alpha < 1.0:
        raise InvalidAlpha(f"alpha must lie in [0, 1), got {alpha}")
    return alpha


@dataclass(frozen=True, eq=False)
class DAlphaMatrix:
    alpha: float
    entries: np.ndarray


@dataclass(frozen=True)
class SpectralResult:
    radius: float
    perron_vector: tuple[float, ...]
    iterations: int
    residual: float
    alpha: float | None = None

    def as_dict(self) -> dict:
        return {
            "radius": self.radius,
            "perron_vector": list(self.perron_vector),
            "iterations": self.iterations,
            "residual": self.residual,
            "alpha": self.alpha,
        }


@dataclass(frozen=True)
class BoundsReport:
    alpha: float
    lower_rowsum: float
    upper_rowsum: float
    trmax_bound: float
    t_values: tuple[float, ...]
    is_distance_regular: bool
    tr_min: int
    tr_max: int

    def as_dict(self) -> dict:
        return {
            "lower_rowsum": self.lower_rowsum,
            "upper_rowsum": self.upper_rowsum,
            "trmax_bound": self.trmax_bound,
            "distance_regular": self.is_distance_regular,
        }


def dalpha_matrix(dd: DistanceData, alpha: float) -> DAlphaMatrix:
    alpha = check_alpha(alpha)
    m = (1.0 - alpha) * dd.dist.astype(float)
    np.fill_diagonal(m, alpha * dd.transmissions.astype(float))
    m.setflags(write=False)
    return DAlphaMatrix(alpha, m)


def perron(m: DAlphaMatrix | np.ndarray, tol: float = TOL, max_iter: int = MAX_ITER,
           shift: float = SHIFT) -> SpectralResult:
    """Perron root and unit Perron vector of a nonnegative irreducible matrix.

    Iterates on ``M + shift*I`` (primitive even when ``M`` is periodic, e.g.
    ``D_0`` of the digon) from the normalised all-ones vector, stopping once
    ``||Mx - mu x||_inf <= tol * mu``.
    """
    alpha = m.alpha if isinstance(m, DAlphaMatrix) else None
    a = np.asarray(m.entries if isinstance(m, DAlphaMatrix) else m, dtype=float)
    n = a.shape[0]
    x = np.full(n, 1.0 / np.sqrt(n))
    for it in range(max_iter + 1):
        ax = a @ x
        mu = float(x @ ax)
        res = float(np.max(np.abs(ax - mu * x)))
        if res <= tol * abs(mu) or res == 0.0:
            return SpectralResult(mu, tuple(float(v) for v in x), it, res, alpha)
        y = ax + shift * x
        x = y / np.linalg.norm(y)
    raise ConvergenceFailure(
        f"power iteration did not reach relative residual {tol} in {max_iter} steps "
        f"(last residual {res:.3e})")


def perron_batch(stack: np.ndarray, tol: float = TOL, max_iter: int = MAX_ITER,
                 shift: float = SHIFT) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Vectorised :func:`perron` over a ``(B, n, n)`` stack of same-size matrices.

    Returns ``(radii, vectors, iterations, residuals)``. Converged rows are
    frozen while the rest keep iterating.
    """
    a = np.asarray(stack, dtype=float)
    b, n, _ = a.shape
    x = np.full((b, n), 1.0 / np.sqrt(n))
    radii = np.zeros(b)
    resid = np.zeros(b)
    iters = np.zeros(b, dtype=np.int64)
    active = np.arange(b)
    xa = x
    for it in range(max_iter + 1):
        aa = a[active]
        ax = np.einsum("bij,bj->bi", aa, xa)
        mu = np.einsum("bi,bi->b", xa, ax)
        res = np.max(np.abs(ax - mu[:, None] * xa), axis=1)
        done = (res <= tol * np.abs(mu)) | (res == 0.0)
        if done.any():
            idx = active[done]
            radii[idx] = mu[done]
            resid[idx] = res[done]
            iters[idx] = it
            x[idx] = xa[done]
            keep = ~done
            active, xa, ax = active[keep], xa[keep], ax[keep]
            if active.size == 0:
                return radii, x, iters, resid
        y = ax + shift * xa
        xa = y / np.linalg.norm(y, axis=1, keepdims=True)
    raise ConvergenceFailure(f"{active.size} of {b} matrices did not converge in {max_iter} steps")


def dalpha_stack(dists: np.ndarray, alpha: float) -> np.ndarray:
    """``D_alpha`` for a ``(B, n, n)`` stack of distance matrices."""
    alpha = check_alpha(alpha)
    d = np.asarray(dists, dtype=float)
    m = (1.0 - alpha) * d
    tr = d.sum(axis=2)
    idx = np.arange(d.shape[1])
    m[:, idx, idx] = alpha * tr
    return m


def mu_alpha(g: Digraph, alpha: float, **solver) -> SpectralResult:
    alpha = check_alpha(alpha)
    return perron(dalpha_matrix(distance_data(g), alpha), **solver)


def is_distance_regular(dd: DistanceData) -> bool:
    return dd.tr_min == dd.tr_max


def t_values(dd: DistanceData) -> np.ndarray:
    """``T_i = sum_t d_it * D_t``, computed exactly in integers."""
    return dd.dist @ dd.transmissions


def bounds_from_distance(dd: DistanceData, alpha: float) -> BoundsReport:
    alpha = check_alpha(alpha)
    tv = t_values(dd)
    tr = dd.transmissions.astype(float)
    vals = alpha * tr + (1.0 - alpha) * tv / tr
    return BoundsReport(
        alpha=alpha,
        lower_rowsum=float(vals.min()),
        upper_rowsum=float(vals.max()),
        trmax_bound=alpha * dd.tr_max,
        t_values=tuple(float(t) for t in tv),
        is_distance_regular=is_distance_regular(dd),
        tr_min=dd.tr_min,
        tr_max=dd.tr_max,
    )


def row_sum_bounds(g: Digraph, alpha: float) -> BoundsReport:
    """Row-sum bounds of ``Diag(Tr)^-1 D_alpha Diag(Tr)`` and the ``alpha*Tr_max`` floor."""
    return bounds_from_distance(distance_data(g), alpha)
