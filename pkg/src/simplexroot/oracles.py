"""Independent brute-force oracles and test-input generators.

These deliberately avoid the code paths they are used to check: sphere
containment is tested by Monte-Carlo sampling instead of half-space
margins, sphere fits by direct distance scans, and the mixed-product
identity by assembling the full Gram-style matrix.

Randomness contract: all sampling uses numpy's PCG64 generator seeded
explicitly, so identical seeds reproduce identical output bit-for-bit
across platforms.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import (
    REL_TOL,
    GeometryError,
    Simplex,
    Sphere,
    circumsphere,
    insphere,
    is_degenerate,
)


@dataclass(frozen=True)
class SampleConfig:
    sample_count: int = 100_000
    seed: int = 0

    def __post_init__(self):
        if self.sample_count < 1:
            raise GeometryError("sample_count must be >= 1")


def sample_ball(ball: Sphere, count: int, rng: np.random.Generator) -> np.ndarray:
    """Uniform samples in the closed ball: Gaussian direction, U^(1/n) radius."""
    n = ball.center.shape[0]
    directions = rng.standard_normal((count, n))
    directions /= np.linalg.norm(directions, axis=1, keepdims=True)
    radii = ball.radius * rng.random(count) ** (1.0 / n)
    return ball.center + directions * radii[:, None]


def mc_ball_in_simplex(ball: Sphere, s: Simplex, cfg: SampleConfig) -> float:
    """Fraction of uniform ball samples landing inside the simplex.

    A point counts as inside when all its barycentric coordinates are
    >= -REL_TOL.
    """
    rng = np.random.Generator(np.random.PCG64(cfg.seed))
    points = sample_ball(ball, cfg.sample_count, rng)
    n = s.dimension
    a = np.vstack([s.vertices.T, np.ones(n + 1)])
    rhs = np.hstack([points, np.ones((cfg.sample_count, 1))])
    weights = np.linalg.solve(a, rhs.T).T
    inside = np.all(weights >= -REL_TOL, axis=1)
    return float(inside.mean())


def sphere_fit_residual(points, sphere: Sphere) -> float:
    """Max over the points of ||p - center| - radius| / radius."""
    pts = np.asarray(points, dtype=float)
    if pts.size == 0:
        raise GeometryError("empty point set")
    dists = np.linalg.norm(pts - sphere.center, axis=1)
    return float(np.abs(dists - sphere.radius).max() / sphere.radius)


def random_simplex(
    n: int, seed: int, quality_floor: float = 0.05, max_tries: int = 100_000
) -> Simplex:
    """Deterministic random nondegenerate simplex with r/R >= quality_floor.

    Vertices are drawn i.i.d. uniform in [-1, 1]^n and the draw is rejected
    until the quality floor holds.  For any simplex r/R <= 1/(n-1), so
    floors at or beyond that bound are rejected outright.
    """
    if n < 2:
        raise GeometryError("dimension must be >= 2")
    if not 0 < quality_floor < 1.0 / (n - 1):
        raise GeometryError(
            f"quality_floor must lie in (0, 1/(n-1)) = (0, {1.0 / (n - 1)})"
        )
    rng = np.random.Generator(np.random.PCG64(seed))
    for _ in range(max_tries):
        s = Simplex(rng.uniform(-1.0, 1.0, (n + 1, n)))
        if is_degenerate(s):
            continue
        if insphere(s).radius / circumsphere(s).radius >= quality_floor:
            return s
    raise GeometryError(f"rejection budget exhausted after {max_tries} tries")


def gram_matrix(s: Simplex, t: Simplex, center) -> np.ndarray:
    """Matrix of mixed products: entry (i, j) = (t_i - center) . (s_j - center).

    With t = root(s) and center = incenter of s, every off-diagonal entry
    equals -R^2.
    """
    if s.dimension != t.dimension:
        raise GeometryError("dimension mismatch between simplices")
    c = np.asarray(center, dtype=float)
    return (t.vertices - c) @ (s.vertices - c).T
