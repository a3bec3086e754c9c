"""Dense n-dimensional simplex primitives.

Everything here is plain binary64 numpy: volumes, facet hyperplanes,
insphere, circumsphere, contact points and barycentric coordinates for a
nondegenerate simplex with n+1 vertices in R^n.  All types are immutable
values and all operations are pure functions.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

#: Relative tolerance for geometric identity checks, scaled by the local
#: circumradius where a scale is needed.
REL_TOL = 1e-9

#: A simplex is degenerate when |signed volume| / (longest edge)^n falls
#: below this scale-free threshold.
DEGENERACY_THRESHOLD = 1e-12

#: Iteration aborts once a circumradius exceeds this value.
OVERFLOW_RADIUS = 1e150


class GeometryError(ValueError):
    """Base class for geometric failure modes."""


class DegenerateSimplexError(GeometryError):
    """Simplex is (numerically) flat and the requested quantity is undefined."""


class OverflowGuardError(GeometryError):
    """A circumradius exceeded the overflow guard."""


def _as_array(x, name: str) -> np.ndarray:
    a = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(a)):
        raise GeometryError(f"{name} must be finite")
    return a


@dataclass(frozen=True)
class Sphere:
    """A sphere given by center and (positive) radius."""

    center: np.ndarray
    radius: float

    def __post_init__(self):
        c = _as_array(self.center, "center")
        c.setflags(write=False)
        object.__setattr__(self, "center", c)
        object.__setattr__(self, "radius", float(self.radius))
        if not self.radius > 0:
            raise GeometryError(f"radius must be positive, got {self.radius}")


@dataclass(frozen=True)
class Hyperplane:
    """Oriented hyperplane ``{x : unit_normal . x = offset}``.

    ``signed_distance`` is positive on the side the normal points to; facet
    hyperplanes built by :func:`facet_hyperplane` point toward the opposite
    vertex, i.e. toward the simplex interior.
    """

    unit_normal: np.ndarray
    offset: float

    def __post_init__(self):
        u = _as_array(self.unit_normal, "unit_normal")
        norm = np.linalg.norm(u)
        if abs(norm - 1.0) > 1e-6:
            raise GeometryError(f"normal must be unit length, |n| = {norm}")
        u.setflags(write=False)
        object.__setattr__(self, "unit_normal", u)
        object.__setattr__(self, "offset", float(self.offset))

    def signed_distance(self, x) -> float:
        return float(self.unit_normal @ np.asarray(x, dtype=float) - self.offset)

    def project(self, x) -> np.ndarray:
        x = np.asarray(x, dtype=float)
        return x - self.signed_distance(x) * self.unit_normal


@dataclass(frozen=True)
class Simplex:
    """Ordered vertices of an n-simplex: an (n+1, n) array, n >= 2."""

    vertices: np.ndarray

    def __post_init__(self):
        v = _as_array(self.vertices, "vertices")
        if v.ndim != 2 or v.shape[0] != v.shape[1] + 1 or v.shape[1] < 2:
            raise GeometryError(
                f"expected (n+1, n) vertex array with n >= 2, got shape {v.shape}"
            )
        v.setflags(write=False)
        object.__setattr__(self, "vertices", v)

    @property
    def dimension(self) -> int:
        return self.vertices.shape[1]

    def centroid(self) -> np.ndarray:
        return self.vertices.mean(axis=0)

    def longest_edge(self) -> float:
        v = self.vertices
        diffs = v[:, None, :] - v[None, :, :]
        return float(np.sqrt((diffs**2).sum(-1)).max())

    def translated(self, shift) -> "Simplex":
        return Simplex(self.vertices + np.asarray(shift, dtype=float))


def signed_volume(s: Simplex) -> float:
    """Signed volume det(A_2-A_1, ..., A_{n+1}-A_1) / n!."""
    v = s.vertices
    n = s.dimension
    return float(np.linalg.det(v[1:] - v[0]) / math.factorial(n))


def is_degenerate(s: Simplex) -> bool:
    """Scale-free flatness test: |volume| / (longest edge)^n below threshold."""
    edge = s.longest_edge()
    if edge == 0.0:
        return True
    return abs(signed_volume(s)) / edge**s.dimension < DEGENERACY_THRESHOLD


def _require_nondegenerate(s: Simplex) -> None:
    if is_degenerate(s):
        raise DegenerateSimplexError("simplex is degenerate within threshold")


def facet_hyperplane(s: Simplex, i: int) -> Hyperplane:
    """Oriented affine hull of all vertices except vertex ``i`` (0-based).

    The normal points toward the omitted vertex, so the simplex interior is
    on the positive side.
    """
    _require_nondegenerate(s)
    v = s.vertices
    n = s.dimension
    if not 0 <= i <= n:
        raise GeometryError(f"facet index {i} out of range for dimension {n}")
    facet = np.delete(v, i, axis=0)
    span = facet[1:] - facet[0]
    # Unit normal = last right-singular vector of the facet span.
    _, _, vt = np.linalg.svd(span)
    normal = vt[-1]
    offset = float(normal @ facet[0])
    if normal @ v[i] - offset < 0:
        normal, offset = -normal, -offset
    return Hyperplane(normal, offset)


def facet_hyperplanes(s: Simplex) -> list[Hyperplane]:
    return [facet_hyperplane(s, i) for i in range(s.dimension + 1)]


def insphere(s: Simplex) -> Sphere:
    """Inscribed sphere via the equal-signed-distance linear system.

    Solves for (center, r) such that the signed distance from the center to
    every facet hyperplane equals r.
    """
    _require_nondegenerate(s)
    n = s.dimension
    planes = facet_hyperplanes(s)
    a = np.zeros((n + 1, n + 1))
    b = np.zeros(n + 1)
    for row, pl in enumerate(planes):
        a[row, :n] = pl.unit_normal
        a[row, n] = -1.0
        b[row] = pl.offset
    try:
        sol = np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise DegenerateSimplexError("insphere system is singular") from exc
    return Sphere(sol[:n], sol[n])


def circumsphere(s: Simplex) -> Sphere:
    """Circumscribed sphere via the linear system 2(A_j-A_1).O = |A_j|^2-|A_1|^2."""
    _require_nondegenerate(s)
    v = s.vertices
    a = 2.0 * (v[1:] - v[0])
    b = (v[1:] ** 2).sum(axis=1) - (v[0] ** 2).sum()
    try:
        center = np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise DegenerateSimplexError("circumsphere system is singular") from exc
    radius = float(np.linalg.norm(v - center, axis=1).mean())
    return Sphere(center, radius)


def contact_points(s: Simplex) -> np.ndarray:
    """Touch points of the inscribed sphere: row i is the orthogonal
    projection of the incenter onto the facet opposite vertex i."""
    _require_nondegenerate(s)
    inc = insphere(s)
    return np.array([pl.project(inc.center) for pl in facet_hyperplanes(s)])


def barycentric(s: Simplex, x) -> np.ndarray:
    """Affine weights of ``x`` w.r.t. the vertices; sums to 1, all positive
    iff ``x`` is interior."""
    _require_nondegenerate(s)
    n = s.dimension
    a = np.vstack([s.vertices.T, np.ones(n + 1)])
    b = np.append(np.asarray(x, dtype=float), 1.0)
    try:
        return np.linalg.solve(a, b)
    except np.linalg.LinAlgError as exc:
        raise DegenerateSimplexError("barycentric system is singular") from exc


def from_barycentric(s: Simplex, weights) -> np.ndarray:
    return np.asarray(weights, dtype=float) @ s.vertices


def regular_simplex(n: int) -> Simplex:
    """Regular n-simplex centered at the origin with circumradius 1."""
    if n < 2:
        raise GeometryError("dimension must be >= 2")
    # Vertices e_i of R^{n+1} centered, expressed in an orthonormal basis of
    # the hyperplane sum(x) = 0.
    centered = np.eye(n + 1) - np.full((n + 1, n + 1), 1.0 / (n + 1))
    _, _, vt = np.linalg.svd(centered)
    coords = centered @ vt[:n].T
    coords /= np.linalg.norm(coords, axis=1)[:, None]
    return Simplex(coords)
