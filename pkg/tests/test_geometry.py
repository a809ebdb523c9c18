import math
from random import Random

import pytest

from labelflight.geometry import (
    BehindView,
    DegenerateVector,
    GazeTrace,
    TAU,
    ViewState,
    angular_distance,
    clamp_to_screen_edge,
    fit_gaze_direction,
    mul3,
    project_to_plane,
    radian_of,
    unproject,
    world_to_screen,
    wrap_radian,
)

HALF_ANGLE = math.radians(15.0)

VIEW = ViewState(
    viewpoint=(0.0, 0.0, 0.0),
    view_dir=(0.0, 0.0, -1.0),
    up=(0.0, 1.0, 0.0),
    gaze=(0.0, 0.0),
)


class TestProjectToPlane:
    def test_parallel_to_normal(self):
        assert project_to_plane((0, 0, 5), (0, 0, 0), (0, 0, 1)) == (0.0, 0.0, 0.0)

    def test_already_in_plane(self):
        assert project_to_plane((3, 4, 0), (0, 0, 0), (0, 0, 1)) == (3.0, 4.0, 0.0)

    def test_drops_normal_component(self):
        assert project_to_plane((1, 2, 3), (0, 0, 0), (0, 0, 1)) == (1.0, 2.0, 0.0)

    def test_result_orthogonal_to_normal_and_idempotent(self):
        rng = Random(7)
        for _ in range(200):
            v = (rng.uniform(-5, 5), rng.uniform(-5, 5), rng.uniform(-5, 5))
            raw = (rng.uniform(-1, 1), rng.uniform(-1, 1), rng.uniform(-1, 1))
            length = math.sqrt(sum(c * c for c in raw))
            if length < 1e-6:
                continue
            n = tuple(c / length for c in raw)
            once = project_to_plane(v, (0, 0, 0), n)
            assert abs(sum(a * b for a, b in zip(once, n))) < 1e-9
            twice = project_to_plane(once, (0, 0, 0), n)
            assert all(abs(a - b) < 1e-9 for a, b in zip(once, twice))


class TestWorldToScreen:
    def test_axial_point_maps_to_center(self):
        assert world_to_screen((0, 0, -4), VIEW, HALF_ANGLE) == pytest.approx((0.0, 0.0))

    def test_half_fov_ray_maps_to_unit(self):
        direction = (math.sin(HALF_ANGLE), 0.0, -math.cos(HALF_ANGLE))
        p = mul3(direction, 3.0)
        x, y = world_to_screen(p, VIEW, HALF_ANGLE)
        assert x == pytest.approx(1.0, abs=1e-12)
        assert y == pytest.approx(0.0, abs=1e-12)

    def test_half_of_half_angle_up(self):
        # Perspective is nonlinear: half the angle is not half the offset.
        theta = HALF_ANGLE / 2.0
        direction = (0.0, math.sin(theta), -math.cos(theta))
        p = mul3(direction, 2.0)
        x, y = world_to_screen(p, VIEW, HALF_ANGLE)
        assert x == pytest.approx(0.0, abs=1e-12)
        assert y == pytest.approx(math.tan(theta) / math.tan(HALF_ANGLE), abs=1e-12)

    def test_behind_view_raises(self):
        with pytest.raises(BehindView):
            world_to_screen((0, 0, 2), VIEW, HALF_ANGLE)
        with pytest.raises(BehindView):
            world_to_screen((1, 0, 0), VIEW, HALF_ANGLE)  # on the view plane

    def test_unproject_round_trip(self):
        rng = Random(3)
        for _ in range(100):
            s = (rng.uniform(-2, 2), rng.uniform(-1, 1))
            depth = rng.uniform(0.5, 6.0)
            p = unproject(s, VIEW, depth, HALF_ANGLE)
            assert world_to_screen(p, VIEW, HALF_ANGLE) == pytest.approx(s, abs=1e-9)


class TestClampToScreenEdge:
    def test_behind_point_lands_on_rect_boundary(self):
        aspect = 16.0 / 9.0
        p = (2.0, 0.5, 3.0)  # behind the viewer
        x, y = clamp_to_screen_edge(p, VIEW, aspect)
        assert abs(x) <= aspect + 1e-9 and abs(y) <= 1.0 + 1e-9
        assert math.isclose(max(abs(x) / aspect, abs(y)), 1.0, abs_tol=1e-9)

    def test_directly_behind_maps_right_edge(self):
        aspect = 16.0 / 9.0
        assert clamp_to_screen_edge((0, 0, 5), VIEW, aspect) == (aspect, 0.0)


class TestRadianOf:
    def test_plus_x(self):
        assert radian_of((1.0, 0.0)) == 0.0

    def test_plus_y(self):
        assert radian_of((0.0, 1.0)) == pytest.approx(math.pi / 2)

    def test_magnitude_invariant(self):
        assert radian_of((-2.0, 0.0)) == pytest.approx(math.pi)

    def test_degenerate_raises(self):
        with pytest.raises(DegenerateVector):
            radian_of((0.0, 0.0))
        with pytest.raises(DegenerateVector):
            radian_of((1e-13, 0.0))

    def test_scale_invariance(self):
        rng = Random(11)
        for _ in range(200):
            v = (rng.uniform(-3, 3), rng.uniform(-3, 3))
            if math.hypot(*v) < 1e-6:
                continue
            s = rng.uniform(0.01, 50.0)
            assert radian_of((v[0] * s, v[1] * s)) == pytest.approx(radian_of(v), abs=1e-12)


class TestAngularDistance:
    def test_quarter_turn(self):
        assert angular_distance(0.0, math.pi / 2) == pytest.approx(math.pi / 2)

    def test_wraparound(self):
        assert angular_distance(0.1, TAU - 0.1) == pytest.approx(0.2)

    def test_identity(self):
        assert angular_distance(1.234, 1.234) == 0.0

    def test_symmetry_and_triangle_inequality(self):
        rng = Random(5)
        for _ in range(500):
            a, b, c = (rng.uniform(0, TAU) for _ in range(3))
            assert angular_distance(a, b) == pytest.approx(angular_distance(b, a), abs=1e-12)
            assert angular_distance(a, c) <= angular_distance(a, b) + angular_distance(b, c) + 1e-12

    def test_range(self):
        rng = Random(6)
        for _ in range(200):
            d = angular_distance(rng.uniform(-10, 10), rng.uniform(-10, 10))
            assert 0.0 <= d <= math.pi + 1e-12


def _brute_force_direction(points):
    """Minimize summed squared orthogonal residuals over sampled angles."""
    cx = sum(p[0] for p in points) / len(points)
    cy = sum(p[1] for p in points) / len(points)

    def residual(theta):
        nx, ny = -math.sin(theta), math.cos(theta)  # normal of the candidate line
        return sum(((p[0] - cx) * nx + (p[1] - cy) * ny) ** 2 for p in points)

    thetas = [i * math.pi / 3600 for i in range(3600)]
    best = min(thetas, key=residual)
    return (math.cos(best), math.sin(best))


class TestFitGazeDirection:
    def test_exact_horizontal_line(self):
        trace = GazeTrace(window=1.0)
        for i in range(10):
            trace.add(i * 0.01, (i * 0.02, 0.0))
        assert fit_gaze_direction(trace) == pytest.approx((1.0, 0.0), abs=1e-9)

    def test_stationary_gaze_is_none(self):
        trace = GazeTrace(window=1.0)
        for i in range(10):
            trace.add(i * 0.01, (0.25, -0.125))
        assert fit_gaze_direction(trace) is None

    def test_noisy_samples_match_brute_force(self):
        rng = Random(42)
        true_dir = (0.6, 0.8)
        trace = GazeTrace(window=1.0)
        points = []
        for i in range(20):
            d = i * 0.01
            p = (true_dir[0] * d + rng.gauss(0, 0.004), true_dir[1] * d + rng.gauss(0, 0.004))
            trace.add(i * 0.01, p)
            points.append(p)
        fitted = fit_gaze_direction(trace)
        assert fitted is not None
        brute = _brute_force_direction(points)
        for reference in (brute, true_dir):
            cos_angle = fitted[0] * reference[0] + fitted[1] * reference[1]
            assert math.degrees(math.acos(max(-1.0, min(1.0, abs(cos_angle))))) < 5.0
        # Sign agrees with travel direction.
        assert fitted[0] * true_dir[0] + fitted[1] * true_dir[1] > 0.0

    def test_translation_invariance(self):
        rng = Random(9)
        base = GazeTrace(window=1.0)
        moved = GazeTrace(window=1.0)
        shift = (3.7, -1.9)
        for i in range(15):
            p = (rng.uniform(0, 0.1) + i * 0.01, rng.uniform(0, 0.05))
            base.add(i * 0.01, p)
            moved.add(i * 0.01, (p[0] + shift[0], p[1] + shift[1]))
        a = fit_gaze_direction(base)
        b = fit_gaze_direction(moved)
        assert a is not None and b is not None
        assert a == pytest.approx(b, abs=1e-9)

    def test_window_eviction(self):
        trace = GazeTrace(window=0.3)
        for i in range(100):
            trace.add(i * 0.01, (i * 0.01, 0.0))
        assert trace.samples[0][0] >= 0.99 - 0.3 - 1e-9

    def test_below_motion_threshold_is_none(self):
        trace = GazeTrace(window=1.0)
        for i in range(10):
            trace.add(i * 0.01, (i * 0.004, 0.0))  # total path 0.036 < 0.05
        assert fit_gaze_direction(trace, motion_threshold=0.05) is None


class TestViewState:
    def test_rejects_non_unit_dir(self):
        with pytest.raises(ValueError):
            ViewState((0, 0, 0), (0, 0, -2.0), (0, 1, 0))

    def test_rejects_non_orthogonal(self):
        with pytest.raises(ValueError):
            ViewState((0, 0, 0), (0, 0, -1.0), (0.0, math.sqrt(0.5), -math.sqrt(0.5)))

    def test_right_hand_basis(self):
        assert VIEW.right == pytest.approx((1.0, 0.0, 0.0))


def test_wrap_radian_range():
    rng = Random(2)
    for _ in range(300):
        r = wrap_radian(rng.uniform(-50, 50))
        assert 0.0 <= r < TAU
