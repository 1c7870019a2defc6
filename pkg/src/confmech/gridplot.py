"""Reference/deformed grid pictures as standalone SVG files.

Purely cosmetic output: the geometry helpers (polyline generation and their
images under a map) carry the testable content, the SVG writer just draws
two panels side by side.  Grid lines are clipped to a disk region and
sampled with a fixed number of points per line so curved images stay smooth.
"""

from dataclasses import dataclass

import numpy as np

SAMPLES_PER_LINE = 42
STROKE_GRID = 0.49
STROKE_OUTLINE = 1.2


@dataclass(frozen=True)
class DiskRegion:
    center: tuple
    radius: float


def grid_polylines(region, spacing, samples_per_line=SAMPLES_PER_LINE):
    """Grid segments clipped to the disk plus its boundary circle.

    Returns a list of (k, 2) arrays.  Vertical and horizontal chords of the
    disk at multiples of `spacing`, each sampled with samples_per_line
    points, followed by the outline sampled twice as densely.
    """
    cx, cy = region.center
    r = region.radius
    lines = []
    k0 = int(np.ceil((cx - r) / spacing))
    k1 = int(np.floor((cx + r) / spacing))
    for k in range(k0, k1 + 1):
        x = k * spacing
        half = r * r - (x - cx) ** 2
        if half <= 0.0:
            continue
        half = np.sqrt(half)
        ys = np.linspace(cy - half, cy + half, samples_per_line)
        lines.append(np.column_stack([np.full_like(ys, x), ys]))
    k0 = int(np.ceil((cy - r) / spacing))
    k1 = int(np.floor((cy + r) / spacing))
    for k in range(k0, k1 + 1):
        y = k * spacing
        half = r * r - (y - cy) ** 2
        if half <= 0.0:
            continue
        half = np.sqrt(half)
        xs = np.linspace(cx - half, cx + half, samples_per_line)
        lines.append(np.column_stack([xs, np.full_like(xs, y)]))
    ang = np.linspace(0.0, 2.0 * np.pi, 2 * samples_per_line)
    lines.append(np.column_stack([cx + r * np.cos(ang), cy + r * np.sin(ang)]))
    return lines


def boundary_markers(region, count=8):
    """Marker points: `count` boundary points at equal angles plus the center."""
    cx, cy = region.center
    r = region.radius
    ang = np.arange(count) * (2.0 * np.pi / count)
    pts = np.column_stack([cx + r * np.cos(ang), cy + r * np.sin(ang)])
    return pts, np.array([cx, cy])


def deform_polylines(mapping, polylines):
    """Image of every polyline vertex under the map."""
    return [np.array([mapping.evaluate(p) for p in line]) for line in polylines]


def _bounds(point_groups, pad=0.05):
    allpts = np.vstack([np.vstack(g) for g in point_groups if g])
    lo = allpts.min(axis=0)
    hi = allpts.max(axis=0)
    span = np.maximum(hi - lo, 1e-9)
    return lo - pad * span, hi + pad * span


class _Panel:
    """Maps data coordinates into one SVG viewport (y axis flipped)."""

    def __init__(self, lo, hi, x0, width, height):
        self.lo = lo
        self.hi = hi
        scale = min(width / (hi[0] - lo[0]), height / (hi[1] - lo[1]))
        self.scale = scale
        self.x0 = x0 + 0.5 * (width - scale * (hi[0] - lo[0]))
        self.y0 = 0.5 * (height - scale * (hi[1] - lo[1]))
        self.height = height

    def to_svg(self, p):
        x = self.x0 + self.scale * (p[0] - self.lo[0])
        y = self.y0 + self.scale * (self.hi[1] - p[1])
        return x, y

    def polyline(self, pts, stroke, width):
        coords = " ".join("%.3f,%.3f" % self.to_svg(p) for p in pts)
        return '<polyline fill="none" stroke="%s" stroke-width="%.2f" points="%s"/>' % (
            stroke,
            width,
            coords,
        )

    def dot(self, p, fill, r=3.0):
        x, y = self.to_svg(p)
        return '<circle cx="%.3f" cy="%.3f" r="%.1f" fill="%s"/>' % (x, y, r, fill)


def render_grid_svg(
    mapping,
    region,
    out_path,
    spacing=0.0147,
    samples_per_line=SAMPLES_PER_LINE,
    panel=380.0,
    gap=40.0,
):
    """Write a two-panel SVG: the gridded region and its image under the map.

    Returns (reference_polylines, image_polylines) so callers can assert on
    the geometry without parsing the file.
    """
    ref = grid_polylines(region, spacing, samples_per_line)
    img = deform_polylines(mapping, ref)
    ref_marks, ref_center = boundary_markers(region)
    img_marks = np.array([mapping.evaluate(p) for p in ref_marks])
    img_center = mapping.evaluate(ref_center)

    lo_l, hi_l = _bounds([ref, [ref_marks]])
    lo_r, hi_r = _bounds([img, [img_marks]])
    width = 2 * panel + gap
    left = _Panel(lo_l, hi_l, 0.0, panel, panel)
    right = _Panel(lo_r, hi_r, panel + gap, panel, panel)

    parts = [
        '<svg xmlns="http://www.w3.org/2000/svg" width="%.0f" height="%.0f" '
        'viewBox="0 0 %.0f %.0f">' % (width, panel, width, panel)
    ]
    for pane, lines, marks, center in (
        (left, ref, ref_marks, ref_center),
        (right, img, img_marks, img_center),
    ):
        outline = lines[-1]
        for line in lines[:-1]:
            parts.append(pane.polyline(line, "#bbbbbb", STROKE_GRID))
        parts.append(pane.polyline(outline, "#000000", STROKE_OUTLINE))
        for p in marks:
            parts.append(pane.dot(p, "#d62728"))
        parts.append(pane.dot(center, "#1f77b4"))
    parts.append("</svg>")
    with open(out_path, "w") as fh:
        fh.write("\n".join(parts) + "\n")
    return ref, img
