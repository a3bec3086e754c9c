"""Extended-precision geometry kernels backing the iteration engine.

Iterating the root transformation grows the circumradius geometrically
while the circumcenters converge to points of ordinary size, so the
absolute position of step k's circumcenter is only determined to about
(machine epsilon) * R_k.  In binary64 that noise floor overtakes the true
|O_k - O_{k+2}| increments near step 25 and the Cauchy tails are lost.
These kernels mirror the geom layer's insphere/circumsphere/contact-point
solves over gmpy2 mpfr scalars (256-bit significand) so the iteration can
resolve those tails; everything user-facing remains binary64.

Simplices are represented as lists of coordinate lists of mpfr scalars.
Pivoting decisions and nullspace seeds come from a float64 shadow of the
input, which is safe because shapes stay well conditioned along the
iteration.
"""
from __future__ import annotations

import numpy as np

try:
    import gmpy2
    from gmpy2 import mpfr
except ImportError as exc:  # pragma: no cover - gmpy2 is a hard dependency
    raise ImportError("the iteration engine requires gmpy2") from exc

from .geometry import DegenerateSimplexError

# Sized so that (2^-precision) * R_k stays below 1e-13 even for the
# fastest-growing admissible trajectories (ratio floor 0.05 gives
# R_60 <= R_1 * 20^59 ~ 1e77).
PRECISION_BITS = 384


def setup():
    """Set the working precision on the current thread's gmpy2 context."""
    gmpy2.get_context().precision = PRECISION_BITS


def to_mp(vertices: np.ndarray) -> list[list[mpfr]]:
    return [[mpfr(x) for x in row] for row in np.asarray(vertices, dtype=float)]


def to_float(rows) -> np.ndarray:
    if rows and isinstance(rows[0], list):
        return np.array([[float(x) for x in row] for row in rows])
    return np.array([float(x) for x in rows])


def _dot(u, v):
    return sum(a * b for a, b in zip(u, v))


def _norm(u):
    return gmpy2.sqrt(_dot(u, u))


def _solve(a, b):
    """Gaussian elimination with partial pivoting over mpfr scalars."""
    n = len(a)
    m = [row[:] + [b[i]] for i, row in enumerate(a)]
    for col in range(n):
        piv = max(range(col, n), key=lambda r: abs(m[r][col]))
        if m[piv][col] == 0:
            raise DegenerateSimplexError("singular system in extended precision")
        m[col], m[piv] = m[piv], m[col]
        for r in range(col + 1, n):
            f = m[r][col] / m[col][col]
            if f:
                for j in range(col, n + 1):
                    m[r][j] -= f * m[col][j]
    x = [mpfr(0)] * n
    for r in range(n - 1, -1, -1):
        s = m[r][n]
        for j in range(r + 1, n):
            s -= m[r][j] * x[j]
        x[r] = s / m[r][r]
    return x


def _facet_normal_seeds(vertices) -> list[np.ndarray]:
    """Float64 facet normals, used to make the mpfr nullspace solves square."""
    v = to_float(vertices)
    n = v.shape[1]
    seeds = []
    for i in range(n + 1):
        facet = np.delete(v, i, axis=0)
        span = facet[1:] - facet[0]
        scale = np.abs(span).max()
        if scale > 0:
            span = span / scale
        _, _, vt = np.linalg.svd(span)
        seeds.append(vt[-1])
    return seeds


def facet_planes(vertices) -> list[tuple[list[mpfr], mpfr]]:
    """(unit normal, offset) per facet, normals oriented toward the
    opposite vertex."""
    n = len(vertices) - 1
    seeds = _facet_normal_seeds(vertices) if n > 2 else None
    planes = []
    for i in range(n + 1):
        facet = [vertices[j] for j in range(n + 1) if j != i]
        if n == 2:
            d0 = facet[1][0] - facet[0][0]
            d1 = facet[1][1] - facet[0][1]
            normal = [-d1, d0]
        else:
            rows = [
                [facet[k + 1][j] - facet[0][j] for j in range(n)]
                for k in range(n - 1)
            ]
            rows.append([mpfr(x) for x in seeds[i]])
            normal = _solve(rows, [mpfr(0)] * (n - 1) + [mpfr(1)])
        length = _norm(normal)
        normal = [c / length for c in normal]
        offset = _dot(normal, facet[0])
        if _dot(normal, vertices[i]) - offset < 0:
            normal = [-c for c in normal]
            offset = -offset
        planes.append((normal, offset))
    return planes


def insphere(vertices, planes=None):
    """(incenter, inradius) via the equal-signed-distance linear system."""
    n = len(vertices) - 1
    if planes is None:
        planes = facet_planes(vertices)
    a = [list(normal) + [mpfr(-1)] for normal, _ in planes]
    b = [offset for _, offset in planes]
    sol = _solve(a, b)
    return sol[:n], sol[n]


def circumsphere(vertices):
    """(circumcenter, circumradius) via the equal-distance linear system."""
    n = len(vertices) - 1
    a = [
        [2 * (vertices[j + 1][c] - vertices[0][c]) for c in range(n)]
        for j in range(n)
    ]
    b = [
        _dot(vertices[j + 1], vertices[j + 1]) - _dot(vertices[0], vertices[0])
        for j in range(n)
    ]
    center = _solve(a, b)
    diff = [vertices[0][c] - center[c] for c in range(n)]
    return center, _norm(diff)


def contact_points(vertices, incenter, planes):
    """Projections of the incenter onto each facet hyperplane."""
    n = len(incenter)
    points = []
    for normal, offset in planes:
        sd = _dot(normal, incenter) - offset
        points.append([incenter[c] - sd * normal[c] for c in range(n)])
    return points


def root_vertices(incenter, inradius, circumradius, contacts):
    """C_i = I - (R/r)^2 (B_i - I)."""
    coeff = (circumradius / inradius) ** 2
    n = len(incenter)
    return [
        [incenter[c] - coeff * (b[c] - incenter[c]) for c in range(n)]
        for b in contacts
    ]
