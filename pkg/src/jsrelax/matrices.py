"""Real 2x2 matrix values, spectral radius, and the common-invariant-line test."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

__all__ = [
    "Matrix",
    "MatrixSet",
    "UnsupportedDimensionError",
    "spectral_radius",
    "apply",
    "is_irreducible",
]

# Two directions count as the same line when they differ by less than this angle.
ANGLE_TOL = 1e-10


class UnsupportedDimensionError(ValueError):
    """Raised when an operation only implemented for 2x2 matrices gets another size."""


@dataclass(frozen=True, eq=False)
class Matrix:
    """Immutable real square matrix with finite entries (row-major)."""

    entries: np.ndarray

    def __post_init__(self):
        arr = np.array(self.entries, dtype=float)
        if arr.ndim != 2 or arr.shape[0] != arr.shape[1]:
            raise ValueError(f"matrix must be square, got shape {arr.shape}")
        if arr.shape[0] < 1:
            raise ValueError("matrix dimension must be at least 1")
        if not np.all(np.isfinite(arr)):
            raise ValueError("matrix entries must be finite")
        arr.flags.writeable = False
        object.__setattr__(self, "entries", arr)

    @property
    def dim(self) -> int:
        return self.entries.shape[0]


@dataclass(frozen=True, eq=False)
class MatrixSet:
    """Ordered family of matrices of one common dimension, not all zero."""

    matrices: tuple[Matrix, ...]

    def __post_init__(self):
        mats = tuple(m if isinstance(m, Matrix) else Matrix(m) for m in self.matrices)
        if not mats:
            raise ValueError("matrix set must contain at least one matrix")
        dim = mats[0].dim
        if any(m.dim != dim for m in mats):
            raise ValueError("all matrices in a set must share one dimension")
        if all(not m.entries.any() for m in mats):
            raise ValueError("matrix set must contain at least one nonzero matrix")
        object.__setattr__(self, "matrices", mats)

    @property
    def dim(self) -> int:
        return self.matrices[0].dim

    @property
    def count(self) -> int:
        return len(self.matrices)

    def arrays(self) -> list[np.ndarray]:
        """Entry arrays of the members, in order (read-only views)."""
        return [m.entries for m in self.matrices]

    def __iter__(self):
        return iter(self.matrices)

    def __len__(self) -> int:
        return len(self.matrices)


def spectral_radius(a: Matrix) -> float:
    """Largest eigenvalue magnitude of a 1x1 or 2x2 matrix.

    Uses the closed form from trace and determinant: for a real pair the
    extreme eigenvalue is (|tr| + sqrt(disc)) / 2, and for a complex pair
    |lambda|^2 equals the determinant.  Larger matrices are rejected.
    """
    if a.dim == 1:
        return abs(float(a.entries[0, 0]))
    if a.dim != 2:
        raise UnsupportedDimensionError(f"spectral_radius supports dim <= 2, got {a.dim}")
    e = a.entries
    tr = float(e[0, 0] + e[1, 1])
    det = float(e[0, 0] * e[1, 1] - e[0, 1] * e[1, 0])
    disc = tr * tr - 4.0 * det
    if disc >= 0.0:
        return 0.5 * (abs(tr) + math.sqrt(disc))
    # complex conjugate pair; det > 0 is forced by a negative discriminant
    return math.sqrt(det)


def apply(a: Matrix, x) -> np.ndarray:
    """Matrix-vector product y = A x."""
    vec = np.asarray(x, dtype=float)
    if vec.shape != (a.dim,):
        raise ValueError(f"vector shape {vec.shape} does not match matrix dim {a.dim}")
    return a.entries @ vec


def _eigendirections(e: np.ndarray) -> list[np.ndarray] | None:
    """Real eigendirections of a 2x2 matrix, as unit vectors.

    Returns None when every direction is invariant (scalar multiples of the
    identity, including the zero matrix) and an empty list when the
    eigenvalues form a complex pair.
    """
    scale = float(np.abs(e).max())
    if scale == 0.0:
        return None
    tr = float(e[0, 0] + e[1, 1])
    det = float(e[0, 0] * e[1, 1] - e[0, 1] * e[1, 0])
    disc = tr * tr - 4.0 * det
    if disc < 0.0:
        return []
    root = math.sqrt(disc)
    lams = [0.5 * (tr + root)]
    if root != 0.0:
        lams.append(0.5 * (tr - root))
    dirs: list[np.ndarray] = []
    for lam in lams:
        # null vectors of (A - lam I); the two candidates cover b = 0 / c = 0
        v1 = np.array([float(e[0, 1]), lam - float(e[0, 0])])
        v2 = np.array([lam - float(e[1, 1]), float(e[1, 0])])
        v = v1 if math.hypot(*v1) >= math.hypot(*v2) else v2
        norm = math.hypot(*v)
        if norm <= 1e-12 * max(scale, abs(lam)):
            # A - lam I vanishes: scalar multiple of the identity
            return None
        v = v / norm
        if not any(abs(v[0] * w[1] - v[1] * w[0]) <= ANGLE_TOL for w in dirs):
            dirs.append(v)
    return dirs


def _line_invariant(e: np.ndarray, v: np.ndarray) -> bool:
    """Whether the line spanned by unit vector v is mapped into itself by e."""
    w0 = float(e[0, 0]) * v[0] + float(e[0, 1]) * v[1]
    w1 = float(e[1, 0]) * v[0] + float(e[1, 1]) * v[1]
    wn = math.hypot(w0, w1)
    if wn == 0.0:
        return True
    return abs(v[0] * w1 - v[1] * w0) / wn <= ANGLE_TOL


def is_irreducible(s: MatrixSet) -> bool:
    """True iff the 2x2 family has no common invariant line.

    A common invariant line must be a real eigendirection of every member
    that is not a scalar multiple of the identity, so it suffices to take
    the (at most two) eigendirections of the first non-scalar member and
    test them against the whole family.  Exact for dimension 2.
    """
    if s.dim != 2:
        raise UnsupportedDimensionError(f"is_irreducible supports dim 2 only, got {s.dim}")
    candidates: list[np.ndarray] | None = None
    for m in s:
        dirs = _eigendirections(m.entries)
        if dirs is None:
            continue  # scalar member constrains nothing
        if not dirs:
            return True  # complex pair: no real line is invariant under m
        candidates = dirs
        break
    if candidates is None:
        # every member is scalar, so every line is invariant
        return False
    for v in candidates:
        if all(_line_invariant(m.entries, v) for m in s.matrices):
            return False
    return True
