"""Planar norms stored as piecewise-linear radial profiles on an angular grid.

A norm on the plane is determined by its restriction h(phi) = |(cos phi,
sin phi)| to the unit circle.  Profiles are sampled at the uniform nodes
phi_j = -pi + 2*pi*j/N, interpolated linearly in angle between nodes, and
kept centrally symmetric (h_j = h_{j+N/2}, bit-exact) because a norm
satisfies |-x| = |x|.

All heavy evaluation goes through elementwise array arithmetic rather than
BLAS so that batched node sweeps and single-vector calls agree bitwise;
several exactness guarantees (normalization at a grid-aligned reference
vector, scaling equivariance) rely on this.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache
from typing import NamedTuple

import numpy as np

from .matrices import MatrixSet, UnsupportedDimensionError

__all__ = [
    "AngularNorm",
    "euclidean",
    "evaluate",
    "max_image",
    "combine_linear",
    "combine_max",
    "normalize",
    "eccentricity",
]

TWO_PI = 2.0 * math.pi
MIN_NODES = 8

# Interpolation positions within this many node units of a node collapse onto
# it, so evaluation along a grid direction returns the stored value exactly.
# Well above the float error of the position computation (~2e-12 for N=3000)
# and far below anything that affects the stated tolerances.
_NODE_SNAP = 1e-11


class _Grid(NamedTuple):
    angles: np.ndarray  # node angles, ascending from -pi
    ux: np.ndarray      # unit vector x components, antipodal halves negate exactly
    uy: np.ndarray


@lru_cache(maxsize=16)
def _grid(n: int) -> _Grid:
    """Node angles and unit vectors for an N-node grid.

    The upper half (phi in [0, pi)) is computed directly with the cardinal
    directions pinned to exact (1,0) / (0,1); the lower half is its exact
    negation.  This makes antipodal symmetry and evaluation at the default
    reference vector e = (1,0) bit-exact.
    """
    half = n // 2
    step = TWO_PI / n
    angles = -math.pi + step * np.arange(n)
    upper = angles[half:]
    ux_up = np.cos(upper)
    uy_up = np.sin(upper)
    ux_up[0] = 1.0
    uy_up[0] = 0.0
    if n % 4 == 0:
        ux_up[n // 4] = 0.0
        uy_up[n // 4] = 1.0
    ux = np.concatenate([-ux_up, ux_up])
    uy = np.concatenate([-uy_up, uy_up])
    for arr in (angles, ux, uy):
        arr.flags.writeable = False
    return _Grid(angles, ux, uy)


@dataclass(frozen=True, eq=False)
class AngularNorm:
    """Radial profile h_j = |(cos phi_j, sin phi_j)| on the uniform grid.

    Construction validates positivity, finiteness and the node-count parity,
    and pins central symmetry by averaging antipodal nodes (an exact no-op
    when the input is already symmetric).
    """

    values: np.ndarray

    def __post_init__(self):
        vals = np.array(self.values, dtype=float)
        if vals.ndim != 1:
            raise ValueError(f"profile must be one-dimensional, got shape {vals.shape}")
        n = vals.size
        if n < MIN_NODES or n % 2 != 0:
            raise ValueError(f"node count must be even and >= {MIN_NODES}, got {n}")
        if not np.all(np.isfinite(vals)):
            raise ValueError("profile values must be finite")
        half = n // 2
        folded = 0.5 * (vals[:half] + vals[half:])
        if not np.all(folded > 0.0):
            raise ValueError("profile values must be positive")
        vals = np.concatenate([folded, folded])
        vals.flags.writeable = False
        object.__setattr__(self, "values", vals)

    @property
    def node_count(self) -> int:
        return self.values.size

    def node_angles(self) -> np.ndarray:
        """Grid angles phi_j, ascending from -pi (read-only)."""
        return _grid(self.node_count).angles


def euclidean(n: int) -> AngularNorm:
    """Constant profile h = 1: the Euclidean norm, exactly, at any grid size."""
    return AngularNorm(np.ones(int(n)))


def _interp(values: np.ndarray, t) -> np.ndarray:
    """Piecewise-linear, periodic interpolation of the profile at node positions t."""
    j = np.floor(t)
    f = t - j
    hi = f >= 1.0 - _NODE_SNAP
    j = np.where(hi, j + 1.0, j)
    f = np.where(hi | (f <= _NODE_SNAP), 0.0, f)
    idx = j.astype(np.int64) % values.size
    return (1.0 - f) * values[idx] + f * values[(idx + 1) % values.size]


def _eval_xy(values: np.ndarray, x0, x1) -> np.ndarray:
    """Profile norm of the vectors (x0, x1); arrays of any common shape."""
    t = (np.arctan2(x1, x0) + math.pi) * (values.size / TWO_PI)
    return np.hypot(x0, x1) * _interp(values, t)


def _image_max_xy(values: np.ndarray, mats, x0, x1) -> np.ndarray:
    """max over the family of the profile norm of A (x0, x1)."""
    best = None
    for a in mats:
        v = _eval_xy(values, a[0, 0] * x0 + a[0, 1] * x1, a[1, 0] * x0 + a[1, 1] * x1)
        best = v if best is None else np.maximum(best, v)
    return best


def _node_image_max(nm: AngularNorm, s: MatrixSet) -> np.ndarray:
    """Image maxima at the upper-half node directions (phi in [0, pi))."""
    _require_planar(s)
    g = _grid(nm.node_count)
    half = nm.node_count // 2
    return _image_max_xy(nm.values, s.arrays(), g.ux[half:], g.uy[half:])


def _require_planar(s: MatrixSet) -> None:
    if s.dim != 2:
        raise UnsupportedDimensionError(f"angular norms are planar; matrix dim is {s.dim}")


def _checked_vector(x) -> tuple[float, float]:
    x0, x1 = float(x[0]), float(x[1])
    if not (math.isfinite(x0) and math.isfinite(x1)):
        raise ValueError("vector entries must be finite")
    return x0, x1


def evaluate(nm: AngularNorm, x) -> float:
    """Norm of the planar vector x (0 at the origin)."""
    x0, x1 = _checked_vector(x)
    if x0 == 0.0 and x1 == 0.0:
        return 0.0
    return float(_eval_xy(nm.values, np.array([x0]), np.array([x1]))[0])


def max_image(nm: AngularNorm, s: MatrixSet, x) -> float:
    """Largest norm among the images A x over the family."""
    _require_planar(s)
    x0, x1 = _checked_vector(x)
    out = _image_max_xy(nm.values, s.arrays(), np.array([x0]), np.array([x1]))
    return float(out[0])


def _rebuild(half_values: np.ndarray) -> AngularNorm:
    # the symmetric profile is its upper half repeated
    return AngularNorm(np.concatenate([half_values, half_values]))


def combine_linear(nm: AngularNorm, s: MatrixSet, lam: float, gamma: float) -> AngularNorm:
    """Blend the profile with its scaled image profile.

    The new node values are lam * h_j + (1 - lam) * max_i |A_i u_j| / gamma.
    Requires lam strictly inside (0, 1) and gamma > 0.
    """
    _require_planar(s)
    lam = float(lam)
    gamma = float(gamma)
    if not 0.0 < lam < 1.0:
        raise ValueError(f"lambda must lie strictly inside (0, 1), got {lam}")
    if not gamma > 0.0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    m = _node_image_max(nm, s)
    upper = nm.values[nm.node_count // 2:]
    return _rebuild(lam * upper + (1.0 - lam) * (m / gamma))


def combine_max(nm: AngularNorm, s: MatrixSet, gamma: float) -> AngularNorm:
    """Pointwise maximum of the profile and its scaled image profile."""
    _require_planar(s)
    gamma = float(gamma)
    if not gamma > 0.0:
        raise ValueError(f"gamma must be positive, got {gamma}")
    m = _node_image_max(nm, s)
    upper = nm.values[nm.node_count // 2:]
    return _rebuild(np.maximum(upper, m / gamma))


def normalize(nm: AngularNorm, e) -> AngularNorm:
    """Rescale so the reference vector e has norm 1."""
    e0, e1 = _checked_vector(e)
    if e0 == 0.0 and e1 == 0.0:
        raise ValueError("reference vector must be nonzero")
    return AngularNorm(nm.values / evaluate(nm, (e0, e1)))


def eccentricity(n1: AngularNorm, n2: AngularNorm) -> float:
    """Spread of the node-value ratio h1/h2: max ratio over min ratio (>= 1)."""
    if n1.node_count != n2.node_count:
        raise ValueError(
            f"node counts differ: {n1.node_count} vs {n2.node_count}"
        )
    ratio = n1.values / n2.values
    return float(ratio.max() / ratio.min())
