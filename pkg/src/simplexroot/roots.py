"""The root transformation of a simplex and its numerical checkers.

The root of a nondegenerate simplex S is the image of its contact simplex
(touch points B_i of the inscribed sphere) under the inversion of radius R
about the incenter I composed with the point reflection through I.  Since
|I B_i| = r exactly, each root vertex has the closed form

    C_i = I - (R^2 / r^2) (B_i - I),

which is how it is computed here: one homothety, no division by a nearly
cancelling length.  The checkers quantify, per input, the identities the
construction is supposed to satisfy: the root's circumsphere is (I, R^2/r),
the mixed products (C_i - I).(A_j - I) all equal -R^2, the root contains
the circumscribed ball of S, and the inradius/circumradius ratio does not
decrease.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .geometry import (
    OVERFLOW_RADIUS,
    GeometryError,
    OverflowGuardError,
    Simplex,
    Sphere,
    barycentric,
    circumsphere,
    contact_points,
    facet_hyperplanes,
    insphere,
)


@dataclass(frozen=True)
class RootResult:
    """Root simplex together with the source data that produced it."""

    root: Simplex
    source_insphere: Sphere
    source_circumsphere: Sphere
    contact_simplex: np.ndarray  # (n+1, n); row i touches the facet opposite vertex i

    def __post_init__(self):
        b = np.asarray(self.contact_simplex, dtype=float)
        b.setflags(write=False)
        object.__setattr__(self, "contact_simplex", b)


def root(s: Simplex) -> RootResult:
    """Root of ``s``; vertex i of the result corresponds to contact point B_i."""
    inc = insphere(s)
    circ = circumsphere(s)
    r, big_r = inc.radius, circ.radius
    if big_r * big_r / r > OVERFLOW_RADIUS:
        raise OverflowGuardError("root circumradius exceeds the overflow guard")
    b = contact_points(s)
    coeff = (big_r / r) ** 2
    c = inc.center - coeff * (b - inc.center)
    return RootResult(
        root=Simplex(c),
        source_insphere=inc,
        source_circumsphere=circ,
        contact_simplex=b,
    )


def check_root_circumsphere(rr: RootResult) -> float:
    """Relative residual of "circumsphere of the root is (I, R^2/r)".

    Compares both the per-vertex distances and an independent circumsphere
    solve on the root against the predicted sphere; returns the worst
    relative discrepancy.
    """
    inc = rr.source_insphere
    expected = rr.source_circumsphere.radius ** 2 / inc.radius
    dists = np.linalg.norm(rr.root.vertices - inc.center, axis=1)
    res = np.abs(dists - expected).max()
    solved = circumsphere(rr.root)
    res = max(res, abs(solved.radius - expected))
    res = max(res, float(np.linalg.norm(solved.center - inc.center)))
    return res / expected


def check_gram_identity(rr: RootResult, s: Simplex) -> float:
    """Max over i != j of |(C_i - I).(A_j - I) + R^2| / R^2."""
    inc = rr.source_insphere.center
    r2 = rr.source_circumsphere.radius ** 2
    g = (rr.root.vertices - inc) @ (s.vertices - inc).T
    off = ~np.eye(g.shape[0], dtype=bool)
    return float(np.abs(g[off] + r2).max() / r2)


def check_containment(rr: RootResult, s: Simplex) -> np.ndarray:
    """Per-facet margins of "the root contains the circumscribed ball of S".

    For each facet hyperplane of the root (oriented toward the root
    interior) returns signed_distance(O) - R.  Every entry is >= 0 up to
    roundoff; the regular simplex attains equality.  Also insists that O is
    strictly interior to the root.
    """
    circ = rr.source_circumsphere
    margins = np.array(
        [pl.signed_distance(circ.center) - circ.radius for pl in facet_hyperplanes(rr.root)]
    )
    if not np.all(barycentric(rr.root, circ.center) > 0):
        raise GeometryError("circumcenter is not interior to the root")
    return margins


def check_incenter_interior(rr: RootResult) -> bool:
    """True iff the source incenter is strictly interior to the root."""
    return bool(np.all(barycentric(rr.root, rr.source_insphere.center) > 0))


def radius_chain(s: Simplex) -> tuple[float, float, float, float]:
    """(r1, R1, r2, R2): source and root insphere/circumsphere radii.

    Satisfies R2 = R1^2/r1, r2 >= R1 and r2/R2 >= r1/R1, all up to the
    relative tolerance.
    """
    rr = root(s)
    r1 = rr.source_insphere.radius
    big_r1 = rr.source_circumsphere.radius
    r2 = insphere(rr.root).radius
    big_r2 = circumsphere(rr.root).radius
    return r1, big_r1, r2, big_r2
