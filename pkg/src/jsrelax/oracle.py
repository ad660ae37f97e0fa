"""Brute-force product enumeration for cross-checking the relaxation bracket.

For depth n the r^n ordered products give a lower bound (largest spectral
radius, to the power 1/n) and an upper bound (largest induced matrix norm,
to the power 1/n) on the joint spectral radius.  The trace-based estimate
converges to the same limit but at finite depth is neither a lower nor an
upper bound, so it is reported as a diagnostic only.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass

import numpy as np

from .matrices import MatrixSet, UnsupportedDimensionError
from .norms import AngularNorm, _eval_xy, _grid, euclidean

__all__ = [
    "DEFAULT_PRODUCT_CAP",
    "EnumerationBudgetError",
    "ProductBounds",
    "product_bounds",
    "trace_estimate",
]

DEFAULT_PRODUCT_CAP = 1 << 20

_CHUNK = 256  # products per evaluation chunk; bounds peak memory


class EnumerationBudgetError(ValueError):
    """Enumeration refused because r^depth exceeds the product cap."""

    def __init__(self, count: int, depth: int, required: int, cap: int):
        super().__init__(
            f"enumerating depth {depth} over {count} matrices needs {required} products, "
            f"above the cap of {cap}; rerun with cap >= {required}"
        )
        self.depth = depth
        self.required = required
        self.cap = cap


@dataclass(frozen=True)
class ProductBounds:
    """Bracket of the joint spectral radius from exhaustive depth-n products."""

    depth: int
    lower: float
    upper: float
    norm_used: str


def _worker_count(workers: int | None) -> int:
    """Resolve the worker cap; JSR_RELAX_THREADS=0 or unset means automatic."""
    if workers is None:
        raw = os.environ.get("JSR_RELAX_THREADS", "0")
        try:
            workers = int(raw)
        except ValueError:
            raise ValueError(f"JSR_RELAX_THREADS must be an integer, got {raw!r}") from None
    if workers < 0:
        raise ValueError(f"worker count must be >= 0, got {workers}")
    if workers == 0:
        return min(8, os.cpu_count() or 1)
    return workers


def _products(s: MatrixSet, depth: int, cap: int) -> np.ndarray:
    """All r^depth ordered products as one (r^depth, m, m) array."""
    if depth < 1:
        raise ValueError(f"depth must be >= 1, got {depth}")
    required = s.count ** depth
    if required > cap:
        raise EnumerationBudgetError(s.count, depth, required, cap)
    mats = np.stack(s.arrays())
    prods = mats.copy()
    m = s.dim
    for _ in range(depth - 1):
        # prepend each family member: new chains are A_i times the old chains
        prods = np.einsum("aij,kjl->akil", mats, prods).reshape(-1, m, m)
    return prods


def _spectral_radii(prods: np.ndarray) -> np.ndarray:
    """Closed-form 2x2 spectral radii for a batch of matrices."""
    tr = prods[:, 0, 0] + prods[:, 1, 1]
    det = prods[:, 0, 0] * prods[:, 1, 1] - prods[:, 0, 1] * prods[:, 1, 0]
    disc = tr * tr - 4.0 * det
    real = 0.5 * (np.abs(tr) + np.sqrt(np.maximum(disc, 0.0)))
    complex_pair = np.sqrt(np.maximum(det, 0.0))
    return np.where(disc >= 0.0, real, complex_pair)


def _chunk_operator_max(values: np.ndarray, prods: np.ndarray, ux, uy, h) -> float:
    """Largest induced norm in the chunk: max over products and grid directions."""
    y0 = prods[:, 0, 0, None] * ux + prods[:, 0, 1, None] * uy
    y1 = prods[:, 1, 0, None] * ux + prods[:, 1, 1, None] * uy
    return float((_eval_xy(values, y0, y1) / h).max())


def product_bounds(
    s: MatrixSet,
    depth: int,
    nm: AngularNorm | None = None,
    cap: int = DEFAULT_PRODUCT_CAP,
    workers: int | None = None,
) -> ProductBounds:
    """Exhaustive depth-n bracket of the joint spectral radius.

    lower = (max spectral radius over products)^(1/n);
    upper = (max induced norm over products)^(1/n), the norm taken over grid
    directions of the given profile (Euclidean by default, which the constant
    profile represents exactly).
    """
    if s.dim != 2:
        raise UnsupportedDimensionError(f"product_bounds supports dim 2 only, got {s.dim}")
    if nm is None:
        nm = euclidean(3000)
    prods = _products(s, depth, cap)
    lower = float(_spectral_radii(prods).max()) ** (1.0 / depth)

    g = _grid(nm.node_count)
    half = nm.node_count // 2
    ux, uy = g.ux[half:], g.uy[half:]
    h = nm.values[half:]
    chunks = [prods[i:i + _CHUNK] for i in range(0, len(prods), _CHUNK)]
    n_workers = _worker_count(workers)
    if n_workers > 1 and len(chunks) > 1:
        with ThreadPoolExecutor(max_workers=n_workers) as pool:
            worst = max(pool.map(
                lambda c: _chunk_operator_max(nm.values, c, ux, uy, h), chunks
            ))
    else:
        worst = max(_chunk_operator_max(nm.values, c, ux, uy, h) for c in chunks)
    upper = worst ** (1.0 / depth)
    return ProductBounds(depth, lower, upper, f"angular-profile[{nm.node_count} nodes]")


def trace_estimate(s: MatrixSet, depth: int, cap: int = DEFAULT_PRODUCT_CAP) -> float:
    """max over depth-n products of |tr|^(1/n); diagnostic, not a bound."""
    prods = _products(s, depth, cap)
    traces = np.abs(np.trace(prods, axis1=1, axis2=2))
    return float(traces.max()) ** (1.0 / depth)
