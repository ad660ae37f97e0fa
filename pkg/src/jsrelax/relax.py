"""Relaxation iterations that bracket the joint spectral radius.

Two update rules drive a sequence of angular-profile norms toward an
extremal norm of the family:

  lr: the next profile is a convex combination of the current one and the
      image profile scaled by 1/gamma_n, with gamma_n the image norm of the
      reference vector e;
  mr: the next profile is the pointwise maximum of the current one and the
      image profile scaled by 1/gamma_n, renormalized at e, with gamma_n an
      average of the current bracket ends.

Every step yields certified bounds rho_minus <= rho <= rho_plus, so the
midpoint of the final bracket carries an a-posteriori error bound.
"""

from __future__ import annotations

import math
from collections.abc import Sequence
from dataclasses import dataclass

from .matrices import MatrixSet, UnsupportedDimensionError, is_irreducible
from .norms import (
    TWO_PI,
    AngularNorm,
    _node_image_max,
    _rebuild,
    combine_linear,
    combine_max,
    euclidean,
    evaluate,
    max_image,
    normalize,
)

__all__ = [
    "ALGORITHM_LR",
    "ALGORITHM_MR",
    "AVERAGING_KINDS",
    "STATUS_CONVERGED",
    "STATUS_MAX_ITERS",
    "STATUS_REJECTED",
    "RelaxConfig",
    "IterationRecord",
    "RelaxResult",
    "bounds",
    "gamma_lr",
    "gamma_mr",
    "lr_step",
    "mr_step",
    "run",
]

ALGORITHM_LR = "lr"
ALGORITHM_MR = "mr"
AVERAGING_KINDS = ("arithmetic", "geometric", "harmonic")

STATUS_CONVERGED = "converged"
STATUS_MAX_ITERS = "max_iters_reached"
STATUS_REJECTED = "not_irreducible_rejected"

# Every iterate must keep the reference vector at norm 1; the lr update
# preserves this identity by construction, so drift past this bound means an
# implementation bug and is raised rather than silently rescaled.
_NORMALIZATION_TOL = 1e-12


@dataclass(frozen=True)
class RelaxConfig:
    """All iteration parameters; validated on construction."""

    algorithm: str = ALGORITHM_LR
    lambda_lo: float = 0.05
    lambda_hi: float = 0.95
    lambda_schedule: float | Sequence[float] = 0.3
    averaging: str = "arithmetic"
    node_count: int = 3000
    e: tuple[float, float] = (1.0, 0.0)
    tol: float = 1e-3
    max_iters: int = 10_000
    initial_norm: AngularNorm | None = None
    unsafe_direct: bool = False

    def __post_init__(self):
        if self.algorithm not in (ALGORITHM_LR, ALGORITHM_MR):
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if not (0.0 < self.lambda_lo <= self.lambda_hi < 1.0):
            raise ValueError(
                f"need 0 < lambda_lo <= lambda_hi < 1, got [{self.lambda_lo}, {self.lambda_hi}]"
            )
        if self.unsafe_direct and self.algorithm != ALGORITHM_LR:
            raise ValueError("unsafe_direct applies to the lr algorithm only")
        if isinstance(self.lambda_schedule, (int, float)):
            sched: float | tuple[float, ...] = float(self.lambda_schedule)
            values = (sched,)
        else:
            sched = tuple(float(v) for v in self.lambda_schedule)
            if not sched:
                raise ValueError("lambda sequence must be nonempty")
            values = sched
        if not self.unsafe_direct:
            for v in values:
                if not (self.lambda_lo <= v <= self.lambda_hi):
                    raise ValueError(
                        f"lambda value {v} outside [{self.lambda_lo}, {self.lambda_hi}]"
                    )
        object.__setattr__(self, "lambda_schedule", sched)
        if self.averaging not in AVERAGING_KINDS:
            raise ValueError(f"unknown averaging {self.averaging!r}")
        n = int(self.node_count)
        if n < 8 or n % 2 != 0:
            raise ValueError(f"node count must be even and >= 8, got {n}")
        object.__setattr__(self, "node_count", n)
        e = (float(self.e[0]), float(self.e[1]))
        if not all(math.isfinite(c) for c in e):
            raise ValueError("e must be finite")
        if e == (0.0, 0.0):
            raise ValueError("e must be nonzero")
        t = (math.atan2(e[1], e[0]) + math.pi) * (n / TWO_PI)
        if abs(t - round(t)) > 1e-9:
            raise ValueError(f"e must point along a grid node direction, got {e}")
        object.__setattr__(self, "e", e)
        if not (math.isfinite(self.tol) and self.tol > 0.0):
            raise ValueError(f"tol must be positive, got {self.tol}")
        if self.max_iters < 1:
            raise ValueError(f"max_iters must be >= 1, got {self.max_iters}")
        if self.initial_norm is not None and self.initial_norm.node_count != n:
            raise ValueError(
                f"initial norm has {self.initial_norm.node_count} nodes, config wants {n}"
            )

    def lambda_at(self, n: int) -> float:
        """Relaxation weight for step n; a short sequence repeats its last value."""
        if self.unsafe_direct:
            return 0.0
        if isinstance(self.lambda_schedule, float):
            return self.lambda_schedule
        return self.lambda_schedule[min(n, len(self.lambda_schedule) - 1)]


@dataclass(frozen=True)
class IterationRecord:
    """One trace row: bracket ends and the scaling used at step n."""

    n: int
    rho_minus: float
    rho_plus: float
    gamma: float
    lam: float | None = None


@dataclass(frozen=True)
class RelaxResult:
    """Final bracket, midpoint estimate, converged norm, and the full trace."""

    rho_lo: float
    rho_hi: float
    rho_mid: float
    norm: AngularNorm
    trace: tuple[IterationRecord, ...]
    status: str
    config: RelaxConfig


def bounds(nm: AngularNorm, s: MatrixSet) -> tuple[float, float]:
    """Extremes over grid directions of max_i |A_i u| / |u| under the norm.

    By homogeneity the continuous extrema run over directions only; the grid
    samples them, so the returned pair is the grid-restricted bracket.
    """
    m = _node_image_max(nm, s)
    ratio = m / nm.values[nm.node_count // 2:]
    return float(ratio.min()), float(ratio.max())


def gamma_lr(nm: AngularNorm, s: MatrixSet, e) -> float:
    """Image norm of the reference vector; lies inside the bracket when |e| = 1."""
    e0, e1 = float(e[0]), float(e[1])
    if e0 == 0.0 and e1 == 0.0:
        raise ValueError("reference vector must be nonzero")
    return max_image(nm, s, (e0, e1))


def gamma_mr(rho_minus: float, rho_plus: float, kind: str = "arithmetic") -> float:
    """Average of the bracket ends: arithmetic, geometric, or harmonic.

    The result is clamped into [rho_minus, rho_plus] so the bracket inclusion
    holds exactly even when the last floating-point rounding would nudge it
    out by one ulp.
    """
    t, s = float(rho_minus), float(rho_plus)
    if not (0.0 < t <= s):
        raise ValueError(f"need 0 < rho_minus <= rho_plus, got ({t}, {s})")
    if kind == "arithmetic":
        g = 0.5 * (t + s)
    elif kind == "geometric":
        g = math.sqrt(t * s)
    elif kind == "harmonic":
        g = 2.0 * t * s / (t + s)
    else:
        raise ValueError(f"unknown averaging {kind!r}")
    return min(max(g, t), s)


def _require_normalized(nm: AngularNorm, e, where: str) -> None:
    v = evaluate(nm, e)
    if abs(v - 1.0) > _NORMALIZATION_TOL:
        raise RuntimeError(f"norm of reference vector drifted to {v!r} at {where}")


def lr_step(
    nm: AngularNorm, s: MatrixSet, cfg: RelaxConfig, n: int
) -> tuple[AngularNorm, IterationRecord]:
    """One linear-relaxation step; the iterate stays normalized at e by construction."""
    _require_normalized(nm, cfg.e, f"lr step {n} entry")
    lo, hi = bounds(nm, s)
    g = gamma_lr(nm, s, cfg.e)
    lam = cfg.lambda_at(n)
    if cfg.unsafe_direct:
        # degenerate lam = 0 variant: pure image profile, no convergence guarantee
        m = _node_image_max(nm, s)
        nxt = _rebuild(m / g)
    else:
        nxt = combine_linear(nm, s, lam, g)
    _require_normalized(nxt, cfg.e, f"lr step {n} exit")
    return nxt, IterationRecord(n, lo, hi, g, lam)


def mr_step(
    nm: AngularNorm, s: MatrixSet, cfg: RelaxConfig, n: int
) -> tuple[AngularNorm, IterationRecord]:
    """One max-relaxation step; renormalizes at e after the pointwise maximum."""
    _require_normalized(nm, cfg.e, f"mr step {n} entry")
    lo, hi = bounds(nm, s)
    g = gamma_mr(lo, hi, cfg.averaging)
    nxt = normalize(combine_max(nm, s, g), cfg.e)
    _require_normalized(nxt, cfg.e, f"mr step {n} exit")
    return nxt, IterationRecord(n, lo, hi, g, None)


def run(s: MatrixSet, cfg: RelaxConfig | None = None, *, force: bool = False) -> RelaxResult:
    """Iterate the configured scheme until the bracket half-width reaches tol.

    Reducible families are rejected with a distinct status unless force is
    set; forced runs keep valid brackets but may stall at the iteration cap
    (and can fail outright if every image of some direction vanishes).
    """
    if cfg is None:
        cfg = RelaxConfig()
    if s.dim != 2:
        raise UnsupportedDimensionError(f"run supports dim 2 only, got {s.dim}")
    init = cfg.initial_norm if cfg.initial_norm is not None else euclidean(cfg.node_count)
    nm = normalize(init, cfg.e)
    if not force and not is_irreducible(s):
        nan = float("nan")
        return RelaxResult(nan, nan, nan, nm, (), STATUS_REJECTED, cfg)
    step = lr_step if cfg.algorithm == ALGORITHM_LR else mr_step
    records: list[IterationRecord] = []
    status = STATUS_MAX_ITERS
    for n in range(cfg.max_iters):
        nm, rec = step(nm, s, cfg, n)
        records.append(rec)
        if 0.5 * (rec.rho_plus - rec.rho_minus) <= cfg.tol:
            status = STATUS_CONVERGED
            break
    last = records[-1]
    mid = 0.5 * (last.rho_minus + last.rho_plus)
    return RelaxResult(last.rho_minus, last.rho_plus, mid, nm, tuple(records), status, cfg)
