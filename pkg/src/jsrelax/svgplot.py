"""SVG rendering of norm unit spheres."""

from __future__ import annotations

import numpy as np

from .norms import AngularNorm, _grid

__all__ = ["unit_sphere_points", "render_unit_sphere"]


def unit_sphere_points(nm: AngularNorm) -> np.ndarray:
    """The N points u_j / h_j of the unit sphere {x : |x| = 1}, shape (N, 2).

    Antipodal points negate exactly (the grid halves negate exactly and the
    profile halves are bit-equal).
    """
    g = _grid(nm.node_count)
    r = 1.0 / nm.values
    return np.column_stack([g.ux * r, g.uy * r])


def render_unit_sphere(nm: AngularNorm, size_px: int = 512) -> str:
    """Closed polyline through the unit sphere, with the Euclidean unit circle
    as a guide, centered and scaled to fit with a 5% margin.  Deterministic."""
    size_px = int(size_px)
    if size_px < 64:
        raise ValueError(f"size must be at least 64 px, got {size_px}")
    pts = unit_sphere_points(nm)
    reach = max(1.0, float(np.hypot(pts[:, 0], pts[:, 1]).max()))
    center = 0.5 * size_px
    scale = (center - 0.05 * size_px) / reach

    def fmt(v: float) -> str:
        return format(v, ".6f")

    coords = [f"{fmt(center + scale * x)} {fmt(center - scale * y)}" for x, y in pts]
    path = "M " + coords[0] + " L " + " L ".join(coords[1:]) + " Z"
    stroke = max(1.0, size_px / 512.0)
    return (
        '<?xml version="1.0" encoding="UTF-8"?>\n'
        f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
        f'width="{size_px}" height="{size_px}" viewBox="0 0 {size_px} {size_px}">\n'
        f'<circle cx="{fmt(center)}" cy="{fmt(center)}" r="{fmt(scale)}" '
        f'fill="none" stroke="#999999" stroke-width="{fmt(stroke)}"/>\n'
        f'<path d="{path}" fill="none" stroke="#000000" stroke-width="{fmt(stroke)}"/>\n'
        "</svg>\n"
    )
