"""Minimal standalone SVG rendering for the planar (n = 2) case.

Collects polygons, circles, points and polylines in world coordinates and
emits an SVG 1.1 document auto-fitted to the bounding box of everything
drawn, with a 5% margin.  The y axis is flipped so figures appear in the
usual mathematical orientation.
"""
from __future__ import annotations

import numpy as np


def _fmt(x: float) -> str:
    return f"{x:.6g}"


class SvgCanvas:
    def __init__(self, width: int = 720):
        self.width = width
        self._elements: list[str] = []
        self._points: list[np.ndarray] = []

    def _track(self, pts) -> None:
        self._points.append(np.atleast_2d(np.asarray(pts, dtype=float)))

    def polygon(self, vertices, stroke="black", fill="none", stroke_width=1.0, dash=None):
        v = np.asarray(vertices, dtype=float)
        self._track(v)
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in v)
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self._elements.append(
            f'<polygon points="{pts}" fill="{fill}" stroke="{stroke}"'
            f' stroke-width="{_fmt(stroke_width)}" vector-effect="non-scaling-stroke"{extra}/>'
        )

    def circle(self, center, radius, stroke="black", fill="none", stroke_width=1.0, dash=None):
        c = np.asarray(center, dtype=float)
        self._track(c + np.array([[radius, 0], [-radius, 0], [0, radius], [0, -radius]]))
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self._elements.append(
            f'<circle cx="{_fmt(c[0])}" cy="{_fmt(c[1])}" r="{_fmt(radius)}"'
            f' fill="{fill}" stroke="{stroke}"'
            f' stroke-width="{_fmt(stroke_width)}" vector-effect="non-scaling-stroke"{extra}/>'
        )

    def dot(self, center, color="black", size=1.0):
        c = np.asarray(center, dtype=float)
        self._track(c)
        # Radius is patched to a view-scaled value at render time.
        self._elements.append(
            f'<circle cx="{_fmt(c[0])}" cy="{_fmt(c[1])}" r="@DOT:{_fmt(size)}" '
            f'fill="{color}" stroke="none"/>'
        )

    def polyline(self, points, stroke="black", stroke_width=1.0, dash=None):
        v = np.asarray(points, dtype=float)
        self._track(v)
        pts = " ".join(f"{_fmt(x)},{_fmt(y)}" for x, y in v)
        extra = f' stroke-dasharray="{dash}"' if dash else ""
        self._elements.append(
            f'<polyline points="{pts}" fill="none" stroke="{stroke}"'
            f' stroke-width="{_fmt(stroke_width)}" vector-effect="non-scaling-stroke"{extra}/>'
        )

    def render(self) -> str:
        if not self._points:
            raise ValueError("nothing drawn")
        allpts = np.vstack(self._points)
        lo = allpts.min(axis=0)
        hi = allpts.max(axis=0)
        span = np.maximum(hi - lo, 1e-12)
        margin = 0.05 * span.max()
        lo -= margin
        hi += margin
        span = hi - lo
        height = self.width * span[1] / span[0]
        dot_radius = 0.006 * span.max()
        # Rescale dot radii to world units now that the view box is known.
        elements = []
        for el in self._elements:
            if "@DOT:" in el:
                pre, rest = el.split('r="@DOT:')
                size, post = rest.split('"', 1)
                el = f'{pre}r="{_fmt(float(size) * dot_radius)}"{post}'
            elements.append(el)
        body = "\n".join(elements)
        return (
            '<?xml version="1.0" encoding="UTF-8"?>\n'
            '<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
            f'width="{_fmt(self.width)}" height="{_fmt(height)}" '
            f'viewBox="{_fmt(lo[0])} {_fmt(-hi[1])} {_fmt(span[0])} {_fmt(span[1])}">\n'
            f'<g transform="scale(1,-1)">\n{body}\n</g>\n</svg>\n'
        )
