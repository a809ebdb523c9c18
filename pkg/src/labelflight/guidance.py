"""Flying-label guidance: trajectories, adaptive speed, and pruning.

A candidate label flies from its layout slot back to its anchor object along
a cubic Bezier curve bowed away from the viewer, so the label keeps a
comfortable distance during the whole flight.  Flight speed rises when the
gaze moves with the label and falls when the label drifts far from the gaze.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

from .config import DEFAULT_CONFIG, EngineConfig
from .geometry import (
    GazeTrace,
    DegenerateVector,
    ScreenVec,
    Vec3,
    ViewState,
    add3,
    angular_position,
    dot2,
    fit_gaze_direction,
    lerp3,
    mul3,
    norm2,
    norm3,
    screen_position,
    sub2,
    sub3,
    unit2,
    unit3,
)
from .layout import Label, MultiCircleLayout


class GuidanceError(ValueError):
    """Base class for guidance failures."""


class DegenerateFlight(GuidanceError):
    """Start and end of a flight coincide."""


class ParameterOutOfRange(GuidanceError):
    """Curve parameter outside [0, 1]."""


@dataclass(frozen=True)
class Trajectory:
    """Cubic Bezier control polygon ``(p_s, c1, c2, p_e)`` in world space."""

    control: tuple[Vec3, Vec3, Vec3, Vec3]

    @property
    def start(self) -> Vec3:
        return self.control[0]

    @property
    def end(self) -> Vec3:
        return self.control[3]


def _point_segment_distance(p: Vec3, a: Vec3, b: Vec3) -> float:
    ab = sub3(b, a)
    denom = ab[0] ** 2 + ab[1] ** 2 + ab[2] ** 2
    if denom <= 0.0:
        return norm3(sub3(p, a))
    t = max(0.0, min(1.0, (sub3(p, a)[0] * ab[0] + sub3(p, a)[1] * ab[1] + sub3(p, a)[2] * ab[2]) / denom))
    return norm3(sub3(p, lerp3(a, b, t)))


def make_trajectory(p_s: Vec3, p_e: Vec3, p_v: Vec3) -> Trajectory:
    """Build the flight curve from ``p_s`` to ``p_e`` around viewpoint ``p_v``.

    Two waypoints at one third and two thirds of the straight segment are
    pushed outward from the viewpoint: the first control point sits along
    the viewpoint-to-first-waypoint ray at the segment's length, the second
    along the second-waypoint ray at the viewpoint-to-end distance.  If the
    viewpoint lies on the segment itself the curve falls back to the
    straight segment.

    Raises:
        DegenerateFlight: when start and end coincide.
    """
    chord = sub3(p_e, p_s)
    length = norm3(chord)
    if length <= 1e-12:
        raise DegenerateFlight("flight start and end coincide")
    if _point_segment_distance(p_v, p_s, p_e) <= 1e-9:
        return Trajectory((p_s, lerp3(p_s, p_e, 1.0 / 3.0), lerp3(p_s, p_e, 2.0 / 3.0), p_e))
    mid1 = lerp3(p_s, p_e, 1.0 / 3.0)
    mid2 = lerp3(p_s, p_e, 2.0 / 3.0)
    c1 = add3(p_v, mul3(unit3(sub3(mid1, p_v)), length))
    c2 = add3(p_v, mul3(unit3(sub3(mid2, p_v)), norm3(sub3(p_v, p_e))))
    return Trajectory((p_s, c1, c2, p_e))


def eval_trajectory(traj: Trajectory, t: float) -> Vec3:
    """De Casteljau evaluation of the curve at parameter ``t`` in [0, 1].

    Exact at the endpoints: repeated interpolation would round the last bit.
    """
    if not (0.0 <= t <= 1.0):
        raise ParameterOutOfRange(f"curve parameter {t} outside [0, 1]")
    if t == 0.0:
        return traj.control[0]
    if t == 1.0:
        return traj.control[3]
    a, b, c, d = traj.control
    ab = lerp3(a, b, t)
    bc = lerp3(b, c, t)
    cd = lerp3(c, d, t)
    abc = lerp3(ab, bc, t)
    bcd = lerp3(bc, cd, t)
    return lerp3(abc, bcd, t)


def trajectory_tangent(traj: Trajectory, t: float) -> Vec3:
    """Derivative of the curve with respect to ``t``."""
    if not (0.0 <= t <= 1.0):
        raise ParameterOutOfRange(f"curve parameter {t} outside [0, 1]")
    a, b, c, d = traj.control
    u = 1.0 - t
    return (
        3 * u * u * (b[0] - a[0]) + 6 * u * t * (c[0] - b[0]) + 3 * t * t * (d[0] - c[0]),
        3 * u * u * (b[1] - a[1]) + 6 * u * t * (c[1] - b[1]) + 3 * t * t * (d[1] - c[1]),
        3 * u * u * (b[2] - a[2]) + 6 * u * t * (c[2] - b[2]) + 3 * t * t * (d[2] - c[2]),
    )


def sample_polyline(traj: Trajectory, count: int = 64) -> list[Vec3]:
    """Evenly spaced curve samples, endpoints included."""
    if count < 2:
        raise ValueError("need at least two samples")
    return [eval_trajectory(traj, i / (count - 1)) for i in range(count)]


def normalized_alignment(vec_l: ScreenVec, vec_g: ScreenVec) -> float:
    """Cosine of the angle between two screen vectors mapped into [0, 1].

    1 means parallel, 0.5 orthogonal, 0 antiparallel.

    Raises:
        DegenerateVector: when either vector is near zero.
    """
    a = unit2(vec_l)
    b = unit2(vec_g)
    return min(1.0, max(0.0, (dot2(a, b) + 1.0) / 2.0))


def update_speed(s: float, alpha: float, dis_lg: float) -> float:
    """One speed update step; never decreases and saturates at 1."""
    return s + (1.0 - s) * alpha * (1.0 - dis_lg)


@dataclass
class FlightState:
    """A candidate label in motion."""

    label_id: str
    anchor_id: str
    text: str
    trajectory: Trajectory
    t: float = 0.0
    s: float = 0.3
    valid: bool = True
    age: float = 0.0
    completed_at: float | None = None
    screen_dir: ScreenVec | None = None
    last_screen_pos: ScreenVec | None = None


@dataclass
class GuidanceState:
    """All in-flight candidates plus bookkeeping for pruning."""

    flights: list[FlightState] = field(default_factory=list)
    target_reached: str | None = None
    pruned_ids: list[str] = field(default_factory=list)
    last_gaze_dir: ScreenVec | None = None
    elapsed: float = 0.0

    def find(self, label_id: str) -> FlightState | None:
        for flight in self.flights:
            if flight.label_id == label_id:
                return flight
        return None


def select_candidates(layout: MultiCircleLayout, gaze_dir: ScreenVec) -> list[Label]:
    """Labels whose orientation from the layout center is strictly within
    90 degrees of the gaze movement direction."""
    out: list[Label] = []
    for circle in layout.circles:
        for label in circle.entries:
            orientation = (math.cos(label.rad), math.sin(label.rad))
            if dot2(orientation, gaze_dir) > 0.0:
                out.append(label)
    return out


def prune_invalid(state: GuidanceState, gaze_dir: ScreenVec | None, min_age: float = 0.0) -> GuidanceState:
    """Drop flights whose screen motion opposes the gaze direction.

    A flight is invalid once its flying direction deviates from the gaze
    movement direction by more than 90 degrees; invalidity is permanent.
    With no gaze direction available nothing is pruned this tick.  Completed
    flights (label already at its anchor) are exempt, as are flights younger
    than ``min_age`` (the direction fit needs a window of samples gathered
    while the flight was actually moving).
    """
    if gaze_dir is None:
        return state
    kept: list[FlightState] = []
    for flight in state.flights:
        if (
            flight.completed_at is None
            and flight.age >= min_age
            and flight.screen_dir is not None
            and dot2(flight.screen_dir, gaze_dir) < 0.0
        ):
            flight.valid = False
            state.pruned_ids.append(flight.label_id)
        else:
            kept.append(flight)
    state.flights = kept
    return state


def flight_screen_pos(flight: FlightState, view: ViewState, cfg: EngineConfig = DEFAULT_CONFIG) -> ScreenVec:
    """Current screen position of the flying label (edge-clamped if behind)."""
    pos, _ = screen_position(eval_trajectory(flight.trajectory, flight.t), view, cfg.half_angle, cfg.aspect)
    return pos


def _chord_direction(flight: FlightState, view: ViewState, cfg: EngineConfig) -> ScreenVec | None:
    a = angular_position(flight.trajectory.start, view, cfg.half_angle)
    b = angular_position(flight.trajectory.end, view, cfg.half_angle)
    chord = sub2(b, a)
    if norm2(chord) <= 1e-12:
        return None
    return unit2(chord)


def _flight_direction(flight: FlightState, view: ViewState, cfg: EngineConfig) -> ScreenVec | None:
    """Flying direction used for pruning, in the guidance frame.

    ``delta`` (default) is the label's displacement since the last tick:
    the motion the user actually perceives.  ``chord`` is the whole
    start-to-end direction, ``tangent`` the local curve direction.
    """
    if cfg.prune_direction == "delta":
        if flight.last_screen_pos is None:
            return _chord_direction(flight, view, cfg)
        pos = angular_position(eval_trajectory(flight.trajectory, flight.t), view, cfg.half_angle)
        delta = sub2(pos, flight.last_screen_pos)
        if norm2(delta) <= 1e-9:
            return None
        return unit2(delta)
    if cfg.prune_direction == "tangent":
        h = 1e-4
        t0 = flight.t
        t1 = min(1.0, t0 + h)
        if t1 <= t0:
            t0 = max(0.0, t1 - h)
        a = angular_position(eval_trajectory(flight.trajectory, t0), view, cfg.half_angle)
        b = angular_position(eval_trajectory(flight.trajectory, t1), view, cfg.half_angle)
        tangent = sub2(b, a)
        if norm2(tangent) <= 1e-12:
            return None
        return unit2(tangent)
    return _chord_direction(flight, view, cfg)


def step_guidance(
    state: GuidanceState,
    view: ViewState,
    trace: GazeTrace,
    dt: float,
    cfg: EngineConfig = DEFAULT_CONFIG,
) -> GuidanceState:
    """Advance all flights by ``dt`` seconds.

    Per flight: refresh the screen-space flying direction, fold the gaze
    alignment and the label-to-gaze screen distance into the speed, then
    advance the curve parameter.  Pruning runs only when a fresh gaze
    direction is available; a stationary gaze reuses the last direction for
    the speed update but never prunes.  Completed flights linger until
    ``cfg.completed_linger`` seconds pass, then quietly expire.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    state.elapsed += dt
    gaze = trace.latest or (0.0, 0.0)
    fitted = fit_gaze_direction(trace, cfg.motion_threshold)
    if fitted is not None:
        state.last_gaze_dir = fitted
    direction = state.last_gaze_dir

    for flight in state.flights:
        if flight.completed_at is not None:
            continue
        flight.age += dt
        chord = _chord_direction(flight, view, cfg)
        if direction is not None and chord is not None:
            pos = angular_position(eval_trajectory(flight.trajectory, flight.t), view, cfg.half_angle)
            dis_lg = min(1.0, norm2(sub2(pos, gaze)) / cfg.half_diagonal)
            alpha = normalized_alignment(chord, direction)
            flight.s = update_speed(flight.s, alpha, dis_lg)
        flight.t = min(1.0, flight.t + flight.s * dt / cfg.flight_duration)
        new_dir = _flight_direction(flight, view, cfg)
        if new_dir is not None:
            flight.screen_dir = new_dir
        flight.last_screen_pos = angular_position(
            eval_trajectory(flight.trajectory, flight.t), view, cfg.half_angle
        )
        if flight.t >= 1.0:
            flight.completed_at = state.elapsed

    prune_invalid(state, fitted, cfg.prune_grace)
    state.flights = [
        f
        for f in state.flights
        if f.completed_at is None or state.elapsed - f.completed_at <= cfg.completed_linger
    ]
    return state
