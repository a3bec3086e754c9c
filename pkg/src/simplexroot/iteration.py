"""Iterated root transformation and its convergence diagnostics.

``iterate`` applies S_{k+1} = Root(S_k) starting from a nondegenerate
simplex and records, per 1-based step k, the simplex together with its
incenter, circumcenter and radii in absolute coordinates.  The
circumradius grows geometrically (R_{k+1} = R_k^2 / r_k) while the
circumcenter sequence splits into an even and an odd subsequence that each
converge; ``subsequence_limits`` measures those limits, their gap and the
decay of the |O_k O_{k+2}| increments.

Internally each step runs in extended precision (see ``extended``) and, by
default, in a recentered frame with the current incenter at the local
origin; the accumulated translation is kept alongside so absolute
positions are exactly recoverable.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import extended
from .geometry import (
    OVERFLOW_RADIUS,
    GeometryError,
    OverflowGuardError,
    Simplex,
    is_degenerate,
)


@dataclass(frozen=True)
class IterationConfig:
    max_steps: int = 60
    cauchy_tolerance: float = 1e-9  # absolute, in final-limit units
    recenter: bool = True
    overflow_radius: float = OVERFLOW_RADIUS

    def __post_init__(self):
        if self.max_steps < 2:
            raise GeometryError("max_steps must be >= 2")
        if not self.cauchy_tolerance > 0:
            raise GeometryError("cauchy_tolerance must be positive")


@dataclass(frozen=True)
class TrajectoryRecord:
    """One step of the iteration; centers and radii are absolute."""

    k: int  # 1-based step index
    simplex: Simplex  # recentered frame
    offset: np.ndarray  # absolute position = recentered position + offset
    incenter: np.ndarray
    circumcenter: np.ndarray
    inradius: float
    circumradius: float
    ratio: float  # inradius / circumradius

    def __post_init__(self):
        for name in ("offset", "incenter", "circumcenter"):
            a = np.asarray(getattr(self, name), dtype=float)
            a.setflags(write=False)
            object.__setattr__(self, name, a)


@dataclass(frozen=True)
class ConvergenceReport:
    even_limit: np.ndarray  # last of O_2, O_4, ...
    odd_limit: np.ndarray  # last of O_1, O_3, ...
    gap: float
    even_converged: bool
    odd_converged: bool
    steps_used: int
    decay_ratios: np.ndarray  # |O_{k+2} O_{k+4}| / |O_k O_{k+2}|, NaN where undefined
    rho_estimate: float


def iterate(s1: Simplex, cfg: IterationConfig) -> list[TrajectoryRecord]:
    """Trajectory of S_1, Root(S_1), Root^2(S_1), ...

    Stops at ``cfg.max_steps`` or, early, when the circumradius exceeds the
    overflow guard; raises if fewer than 2 steps complete.
    """
    if is_degenerate(s1):
        raise GeometryError("initial simplex is degenerate")
    extended.setup()
    n = s1.dimension
    vertices = extended.to_mp(s1.vertices)
    shift = [extended.mpfr(0)] * n
    records: list[TrajectoryRecord] = []
    for k in range(1, cfg.max_steps + 1):
        planes = extended.facet_planes(vertices)
        incenter, inradius = extended.insphere(vertices, planes)
        circumcenter, circumradius = extended.circumsphere(vertices)
        if float(circumradius) > cfg.overflow_radius:
            break
        records.append(
            TrajectoryRecord(
                k=k,
                simplex=Simplex(extended.to_float(vertices)),
                offset=extended.to_float(shift),
                incenter=extended.to_float(
                    [incenter[c] + shift[c] for c in range(n)]
                ),
                circumcenter=extended.to_float(
                    [circumcenter[c] + shift[c] for c in range(n)]
                ),
                inradius=float(inradius),
                circumradius=float(circumradius),
                ratio=float(inradius / circumradius),
            )
        )
        if k == cfg.max_steps:
            break
        contacts = extended.contact_points(vertices, incenter, planes)
        vertices = extended.root_vertices(incenter, inradius, circumradius, contacts)
        if cfg.recenter:
            next_incenter, _ = extended.insphere(vertices)
            vertices = [
                [v[c] - next_incenter[c] for c in range(n)] for v in vertices
            ]
            shift = [shift[c] + next_incenter[c] for c in range(n)]
    if len(records) < 2:
        raise OverflowGuardError("overflow guard triggered before 2 steps")
    return records


def circumcenter_increments(traj: list[TrajectoryRecord]) -> np.ndarray:
    """|O_k - O_{k+2}| for k = 1 .. K-2."""
    centers = np.array([rec.circumcenter for rec in traj])
    return np.linalg.norm(centers[2:] - centers[:-2], axis=1)


def subsequence_limits(
    traj: list[TrajectoryRecord], cfg: IterationConfig
) -> ConvergenceReport:
    """Even/odd circumcenter subsequence limits and Cauchy diagnostics.

    A parity subsequence counts as converged when its final same-parity
    step |O_k - O_{k+2}| is below ``cfg.cauchy_tolerance``.
    """
    if len(traj) < 4:
        raise GeometryError("trajectory too short: need at least 4 steps")
    odd = [rec for rec in traj if rec.k % 2 == 1]
    even = [rec for rec in traj if rec.k % 2 == 0]
    odd_step = float(np.linalg.norm(odd[-1].circumcenter - odd[-2].circumcenter))
    even_step = float(np.linalg.norm(even[-1].circumcenter - even[-2].circumcenter))
    increments = circumcenter_increments(traj)
    with np.errstate(divide="ignore", invalid="ignore"):
        ratios = np.where(
            increments[:-2] > 0, increments[2:] / increments[:-2], np.nan
        )
    even_limit = even[-1].circumcenter
    odd_limit = odd[-1].circumcenter
    return ConvergenceReport(
        even_limit=even_limit,
        odd_limit=odd_limit,
        gap=float(np.linalg.norm(even_limit - odd_limit)),
        even_converged=even_step < cfg.cauchy_tolerance,
        odd_converged=odd_step < cfg.cauchy_tolerance,
        steps_used=len(traj),
        decay_ratios=ratios,
        rho_estimate=traj[-1].ratio,
    )


def triangle_angles(s: Simplex) -> np.ndarray:
    """Interior angles of a triangle, in vertex order."""
    if s.dimension != 2:
        raise GeometryError("angles are defined for triangles only")
    v = s.vertices
    angles = []
    for i in range(3):
        a = v[(i + 1) % 3] - v[i]
        b = v[(i + 2) % 3] - v[i]
        cosang = (a @ b) / (np.linalg.norm(a) * np.linalg.norm(b))
        angles.append(math.acos(min(1.0, max(-1.0, cosang))))
    return np.array(angles)


def triangle_angle_deviations(traj: list[TrajectoryRecord]) -> np.ndarray:
    """Per step, (angles of S_k) - pi/3 in vertex order (n = 2 only).

    Each root vertex inherits the index of its contact point, and the
    contact triangle's angle there is pi/2 - (source angle at the same
    index)/2, so consecutive rows satisfy dev_{k+1} = -dev_k / 2.
    """
    if traj[0].simplex.dimension != 2:
        raise GeometryError("angle deviations require ambient dimension 2")
    return np.array(
        [triangle_angles(rec.simplex) - math.pi / 3 for rec in traj]
    )


def estimate_rho(traj: list[TrajectoryRecord]) -> float:
    """Final r_k/R_k: the best certified lower bound for the ratio limit."""
    if len(traj) < 2:
        raise GeometryError("trajectory too short: need at least 2 steps")
    return traj[-1].ratio
