import math

import numpy as np
import pytest

from simplexroot import (
    GeometryError,
    IterationConfig,
    OverflowGuardError,
    Simplex,
    estimate_rho,
    iterate,
    regular_simplex,
    subsequence_limits,
    triangle_angle_deviations,
    triangle_angles,
)
from simplexroot.iteration import circumcenter_increments
from simplexroot.oracles import random_simplex

RIGHT_345 = Simplex([[0.0, 0.0], [4.0, 0.0], [0.0, 3.0]])
EQUILATERAL = Simplex(
    [[1.0, 0.0],
     [-0.5, math.sqrt(3.0) / 2.0],
     [-0.5, -math.sqrt(3.0) / 2.0]]
)


class TestIterate:
    def test_equilateral_fixed_point(self):
        records = iterate(EQUILATERAL, IterationConfig(max_steps=10))
        assert len(records) == 10
        for rec in records:
            assert rec.circumcenter == pytest.approx([0.0, 0.0], abs=1e-12)
            assert rec.incenter == pytest.approx([0.0, 0.0], abs=1e-12)
            assert rec.circumradius == pytest.approx(2.0 ** (rec.k - 1), rel=1e-12)
            assert rec.ratio == pytest.approx(0.5, rel=1e-12)

    def test_right_345_ratio_monotone_to_half(self):
        records = iterate(RIGHT_345, IterationConfig(max_steps=40))
        ratios = [rec.ratio for rec in records]
        assert ratios[0] == pytest.approx(0.4)
        assert all(b >= a - 1e-12 for a, b in zip(ratios, ratios[1:]))
        assert ratios[-1] == pytest.approx(0.5, abs=1e-9)
        assert records[1].circumradius == pytest.approx(6.25, rel=1e-12)

    def test_regular_tetrahedron_fixed_point(self):
        records = iterate(regular_simplex(3), IterationConfig(max_steps=10))
        for rec in records:
            assert rec.ratio == pytest.approx(1.0 / 3.0, rel=1e-12)
            assert rec.circumcenter == pytest.approx(np.zeros(3), abs=1e-12)

    def test_radius_recurrence(self):
        records = iterate(random_simplex(3, 42), IterationConfig(max_steps=15))
        for prev, cur in zip(records, records[1:]):
            assert cur.circumradius * prev.inradius == pytest.approx(
                prev.circumradius**2, rel=1e-9
            )

    def test_center_identity_incenter_becomes_next_circumcenter(self):
        records = iterate(random_simplex(2, 5), IterationConfig(max_steps=20))
        for prev, cur in zip(records, records[1:]):
            # I_k = O_{k+1}: the root's circumcenter is the source incenter.
            err = np.linalg.norm(prev.incenter - cur.circumcenter)
            assert err <= 1e-9 * prev.circumradius

    def test_offset_reconstruction(self):
        records = iterate(random_simplex(2, 6), IterationConfig(max_steps=12))
        # Absolute frame = recentered frame + offset: step k's simplex must
        # be the root of step k-1's simplex once both are in absolute frame.
        from simplexroot.roots import root

        for prev, cur in zip(records, records[1:]):
            prev_abs = Simplex(prev.simplex.vertices + prev.offset)
            expected = root(prev_abs).root.vertices
            got = cur.simplex.vertices + cur.offset
            assert np.abs(got - expected).max() <= 1e-9 * cur.circumradius

    def test_recenter_off_matches_absolute_positions(self):
        cfg_on = IterationConfig(max_steps=8, recenter=True)
        cfg_off = IterationConfig(max_steps=8, recenter=False)
        s = random_simplex(2, 7)
        on = iterate(s, cfg_on)
        off = iterate(s, cfg_off)
        for a, b in zip(on, off):
            assert np.all(b.offset == 0.0)
            assert a.circumcenter == pytest.approx(b.circumcenter, abs=1e-9)
            assert a.incenter == pytest.approx(b.incenter, abs=1e-9)
            assert a.circumradius == pytest.approx(b.circumradius, rel=1e-12)

    def test_growth_bound(self):
        records = iterate(random_simplex(3, 8), IterationConfig(max_steps=20))
        rho_hat = estimate_rho(records)
        r1 = records[0].circumradius
        for rec in records:
            assert rec.circumradius >= r1 * (1.0 / rho_hat) ** (rec.k - 1) * (1 - 1e-9)

    def test_degenerate_input_rejected(self):
        with pytest.raises(GeometryError):
            iterate(
                Simplex([[0.0, 0.0], [1.0, 0.0], [2.0, 1e-14]]),
                IterationConfig(max_steps=5),
            )

    def test_overflow_stops_early(self):
        cfg = IterationConfig(max_steps=40, overflow_radius=1e6)
        records = iterate(RIGHT_345, cfg)
        assert 2 <= len(records) < 40
        assert records[-1].circumradius <= 1e6

    def test_overflow_before_two_steps_raises(self):
        with pytest.raises(OverflowGuardError):
            iterate(RIGHT_345, IterationConfig(max_steps=10, overflow_radius=1.0))

    def test_config_validation(self):
        with pytest.raises(GeometryError):
            IterationConfig(max_steps=1)
        with pytest.raises(GeometryError):
            IterationConfig(cauchy_tolerance=0.0)


class TestSubsequenceLimits:
    def test_equilateral_stationary(self):
        cfg = IterationConfig(max_steps=10)
        report = subsequence_limits(iterate(EQUILATERAL, cfg), cfg)
        assert report.even_limit == pytest.approx([0.0, 0.0], abs=1e-12)
        assert report.odd_limit == pytest.approx([0.0, 0.0], abs=1e-12)
        assert report.gap == pytest.approx(0.0, abs=1e-12)
        assert report.even_converged and report.odd_converged

    def test_right_345_forty_steps(self):
        cfg = IterationConfig(max_steps=40)
        records = iterate(RIGHT_345, cfg)
        report = subsequence_limits(records, cfg)
        assert report.even_converged and report.odd_converged
        assert report.rho_estimate == pytest.approx(0.5, abs=1e-9)
        # Frozen from an extended-precision reference run: a genuinely
        # nonzero gap between the parity limits.
        assert report.gap == pytest.approx(1.6073335872718386, abs=1e-8)

    def test_too_short(self):
        cfg = IterationConfig(max_steps=3)
        records = iterate(EQUILATERAL, cfg)
        with pytest.raises(GeometryError):
            subsequence_limits(records, cfg)

    def test_decay_ratios_tail_below_point_six(self):
        cfg = IterationConfig(max_steps=35)
        records = iterate(random_simplex(2, 9), cfg)
        report = subsequence_limits(records, cfg)
        increments = circumcenter_increments(records)
        ratios = report.decay_ratios
        usable = [
            ratios[j]
            for j in range(len(ratios))
            if increments[j] > 1e-12 and np.isfinite(ratios[j])
        ]
        assert usable, "no usable decay ratios"
        tail = usable[len(usable) // 2 :]
        assert all(r <= 0.6 for r in tail)


class TestAngles:
    def test_triangle_angles_345(self):
        angles = triangle_angles(RIGHT_345)
        assert angles[0] == pytest.approx(math.pi / 2)
        assert angles[1] == pytest.approx(math.atan(3.0 / 4.0))
        assert angles[2] == pytest.approx(math.atan(4.0 / 3.0))

    def test_equilateral_zero_deviation(self):
        records = iterate(EQUILATERAL, IterationConfig(max_steps=6))
        devs = triangle_angle_deviations(records)
        assert devs == pytest.approx(np.zeros_like(devs), abs=1e-12)

    def test_halving_with_sign_flip(self):
        records = iterate(RIGHT_345, IterationConfig(max_steps=20))
        devs = triangle_angle_deviations(records)
        for k in range(len(devs) - 1):
            assert devs[k + 1] == pytest.approx(-devs[k] / 2.0, abs=1e-9)

    def test_isoceles_perturbation_map(self):
        eps = 0.05
        # Triangle with angles (pi/3 + eps, pi/3 + eps, pi/3 - 2 eps): base
        # angles at (0,0) and (1,0), apex at the ray intersection.
        base = math.pi / 3.0 + eps
        t = math.tan(base)
        s = Simplex([[0.0, 0.0], [1.0, 0.0], [0.5, 0.5 * t]])
        angles = triangle_angles(s)
        devs0 = np.sort(angles - math.pi / 3.0)
        assert devs0 == pytest.approx([-2.0 * eps, eps, eps], abs=1e-12)
        records = iterate(s, IterationConfig(max_steps=2))
        devs = triangle_angle_deviations(records)
        assert np.sort(devs[1]) == pytest.approx([-eps / 2.0, -eps / 2.0, eps], abs=1e-9)

    def test_dimension_guard(self):
        records = iterate(regular_simplex(3), IterationConfig(max_steps=4))
        with pytest.raises(GeometryError):
            triangle_angle_deviations(records)


class TestEstimateRho:
    def test_regular_simplex_exact(self):
        for n in (2, 3, 4):
            records = iterate(regular_simplex(n), IterationConfig(max_steps=6))
            assert estimate_rho(records) == pytest.approx(1.0 / n, rel=1e-12)
            ratios = [rec.ratio for rec in records]
            assert all(r <= estimate_rho(records) + 1e-12 for r in ratios)

    def test_triangle_limit_half(self):
        records = iterate(random_simplex(2, 11), IterationConfig(max_steps=40))
        assert estimate_rho(records) == pytest.approx(0.5, abs=1e-6)

    def test_bounded_by_dimension(self):
        for n, seed in ((3, 12), (4, 13)):
            records = iterate(random_simplex(n, seed), IterationConfig(max_steps=30))
            rho = estimate_rho(records)
            assert 0.0 < rho <= 1.0 / (n - 1) + 1e-9

    def test_too_short(self):
        records = iterate(EQUILATERAL, IterationConfig(max_steps=2))
        with pytest.raises(GeometryError):
            estimate_rho(records[:1])
