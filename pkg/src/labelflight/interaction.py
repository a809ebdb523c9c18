"""The locating pipeline as an explicit state machine.

One session walks a user (or a scripted agent) through: button press, the
letter ring, 400 ms dwell selection, the second-level circle layout,
gaze-direction candidate selection, flying-label guidance, and finally a
confirm on the located anchor.  Every run of the machine over the same event
sequence produces the same phases and the same emitted events.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum
from typing import Callable, Iterable, Sequence

from .config import DEFAULT_CONFIG, EngineConfig
from .geometry import (
    GazeTrace,
    ScreenVec,
    Vec3,
    ViewState,
    add3,
    angular_position,
    cross3,
    dot3,
    fit_gaze_direction,
    mul3,
    norm2,
    norm3,
    screen_position,
    sub2,
    sub3,
    unit3,
    unproject,
    world_to_screen,
    BehindView,
)
from .guidance import (
    FlightState,
    GuidanceState,
    eval_trajectory,
    flight_screen_pos,
    make_trajectory,
    select_candidates,
    step_guidance,
    DegenerateFlight,
)
from .layout import (
    FirstLevelLayout,
    Label,
    MultiCircleLayout,
    build_first_level,
    build_second_level,
)
from .scenes import Scene, labels_for


class Phase(str, Enum):
    IDLE = "idle"
    FIRST_LEVEL = "first_level"
    SECOND_LEVEL = "second_level"
    GUIDING = "guiding"
    LOCATED = "located"


# --------------------------------------------------------------------------
# input events


@dataclass(frozen=True)
class ButtonPress:
    kind: str = "start"


@dataclass(frozen=True)
class GazeSample:
    t: float
    point: ScreenVec


@dataclass(frozen=True)
class Confirm:
    object_id: str


@dataclass(frozen=True)
class Cancel:
    pass


InputEvent = ButtonPress | GazeSample | Confirm | Cancel


@dataclass(frozen=True)
class EmittedEvent:
    t: float
    session: str
    kind: str
    payload: dict

    def to_record(self) -> dict:
        return {"t": self.t, "session": self.session, "event": self.kind, "payload": self.payload}


# --------------------------------------------------------------------------
# dwell selection


@dataclass
class DwellState:
    """Accumulates in-region gaze time; fires once per visit at threshold."""

    threshold: float = 0.4
    target: str | None = None
    accumulated: float = 0.0
    fired: bool = False


_DWELL_EPS = 1e-9


def dwell_update(
    dwell: DwellState,
    gaze: ScreenVec,
    first_level: FirstLevelLayout,
    dt: float,
) -> str | None:
    """Advance the dwell clock by one tick of ``dt`` seconds.

    Time accumulates only while the gaze stays in the region it was in on
    the previous tick; entering a different region (or leaving all regions)
    restarts accumulation.  Returns the selected letter exactly once, on the
    tick where the accumulated time reaches the threshold.
    """
    if dt <= 0.0:
        raise ValueError("dt must be positive")
    region = first_level.hit(gaze)
    if region is None:
        dwell.target = None
        dwell.accumulated = 0.0
        dwell.fired = False
        return None
    if region != dwell.target:
        dwell.target = region
        dwell.accumulated = 0.0
        dwell.fired = False
        return None
    dwell.accumulated += dt
    if not dwell.fired and dwell.accumulated >= dwell.threshold - _DWELL_EPS:
        dwell.fired = True
        return region
    return None


# --------------------------------------------------------------------------
# session

SecondLevelBuilder = Callable[[str | None, "PipelineSession"], MultiCircleLayout]


def default_second_level_builder(letter: str | None, session: "PipelineSession") -> MultiCircleLayout:
    """Full second-level layout over the labels with the selected initial."""
    labels = session.labels_with_initial(letter)
    return build_second_level(
        labels,
        session.scene.object_map(),
        session.view,
        center=session.layout_center_for(letter),
        cfg=session.cfg,
    )


class PipelineSession:
    """One interactive locating session over a fixed scene.

    The session is advanced by :meth:`step`: apply a batch of input events,
    then move the simulation clock forward one tick.  All state transitions
    are deterministic functions of the event sequence, so replaying a log
    reproduces phases, emitted events, and metrics bit for bit.
    """

    def __init__(
        self,
        scene: Scene,
        cfg: EngineConfig = DEFAULT_CONFIG,
        *,
        target_id: str | None = None,
        session_id: str = "s1",
        first_level_enabled: bool = True,
        second_level_builder: SecondLevelBuilder | None = None,
        auto_turn: bool | None = None,
    ) -> None:
        if target_id is not None:
            scene.get(target_id)  # raises KeyError for unknown targets
        self.scene = scene
        self.cfg = cfg
        self.target_id = target_id
        self.session_id = session_id
        self.first_level_enabled = first_level_enabled
        self.second_level_builder = second_level_builder or default_second_level_builder
        self.auto_turn = cfg.auto_turn if auto_turn is None else auto_turn

        self.view: ViewState = scene.spawn
        self.labels: list[Label] = labels_for(scene)
        self.phase: Phase = Phase.IDLE
        self.gaze: ScreenVec = scene.spawn.gaze
        self.trace = GazeTrace(window=cfg.gaze_window)
        self.dwell = DwellState(threshold=cfg.dwell_seconds)
        self.first_level: FirstLevelLayout | None = None
        self.second_level: MultiCircleLayout | None = None
        self.selected_letter: str | None = None
        self.slot_world: dict[str, Vec3] = {}
        self.panel_view: ViewState | None = None
        self.guidance: GuidanceState | None = None
        self.located_label_id: str | None = None
        self.located_object_id: str | None = None

        self.t = 0.0
        self.events: list[EmittedEvent] = []
        self.diagnostics: list[str] = []

        self.trial_started = False
        self.ticks = 0
        self.rotation_deg = 0.0
        self.pruned_count = 0
        self.dropped_count = 0
        self.fov_ticks = 0
        self.success = False

    # -- helpers -----------------------------------------------------------

    def labels_with_initial(self, letter: str | None) -> list[Label]:
        if letter is None:
            return list(self.labels)
        return [l for l in self.labels if l.text and l.text[0].lower() == letter.lower()]

    def layout_center_for(self, letter: str | None) -> ScreenVec:
        if letter is not None and self.first_level is not None:
            return self.first_level.position(letter)
        return (0.0, 0.0)

    def clamp_gaze(self, point: ScreenVec) -> ScreenVec:
        a = self.cfg.aspect
        return (min(a, max(-a, point[0])), min(1.0, max(-1.0, point[1])))

    def emit(self, kind: str, payload: dict) -> None:
        self.events.append(EmittedEvent(self.t, self.session_id, kind, payload))

    def diagnostic(self, message: str) -> None:
        self.diagnostics.append(f"t={self.t:.4f} {message}")

    @property
    def time_s(self) -> float:
        return self.ticks * self.cfg.tick_dt

    @property
    def fov_time_s(self) -> float:
        return self.fov_ticks * self.cfg.tick_dt

    def metrics(self) -> dict:
        return {
            "ticks": self.ticks,
            "time_s": self.time_s,
            "rotation_deg": self.rotation_deg,
            "success": self.success,
            "pruned_count": self.pruned_count,
            "dropped_count": self.dropped_count,
            "fov_time_s": self.fov_time_s,
        }

    # -- view control ------------------------------------------------------

    def rotate_toward(self, world_point: Vec3, max_deg: float) -> float:
        """Rotate the view direction toward a world point, rate-limited.

        Stands in for head motion; the applied angle accumulates into the
        session's rotation metric.  Returns the degrees actually turned.
        """
        if max_deg <= 0.0:
            return 0.0
        desired = sub3(world_point, self.view.viewpoint)
        if norm3(desired) <= 1e-12:
            return 0.0
        desired = unit3(desired)
        cos_angle = max(-1.0, min(1.0, dot3(self.view.view_dir, desired)))
        angle = math.acos(cos_angle)
        if angle < 1e-9:
            return 0.0
        axis = cross3(self.view.view_dir, desired)
        if norm3(axis) <= 1e-12:
            axis = self.view.up  # directly behind: yaw about up
        else:
            axis = unit3(axis)
        step = min(angle, math.radians(max_deg))
        new_dir = _rotate_about(self.view.view_dir, axis, step)
        new_up = _rotate_about(self.view.up, axis, step)
        new_dir = unit3(new_dir)
        new_up = unit3(sub3(new_up, mul3(new_dir, dot3(new_up, new_dir))))
        self.view = ViewState(self.view.viewpoint, new_dir, new_up, self.view.gaze)
        self.rotation_deg += math.degrees(step)
        return math.degrees(step)

    # -- event application -------------------------------------------------

    def apply_events(self, events: Iterable[InputEvent]) -> None:
        for event in events:
            self._apply(event)

    def _apply(self, event: InputEvent) -> None:
        if isinstance(event, GazeSample):
            self.gaze = self.clamp_gaze(event.point)
            self.view = self.view.with_gaze(self.gaze)
            try:
                self.trace.add(event.t, self.panel_gaze())
            except ValueError:
                self.diagnostic(f"gaze sample at t={event.t} not after previous sample; ignored")
            return
        if isinstance(event, Cancel) or (isinstance(event, ButtonPress) and event.kind == "cancel"):
            self._reset_to_idle()
            return
        if isinstance(event, ButtonPress):
            if self.phase is Phase.IDLE:
                self._begin_trial()
            else:
                self.diagnostic(f"button press ignored in phase {self.phase.value}")
            return
        if isinstance(event, Confirm):
            if self.phase is Phase.GUIDING:
                self._confirm(event.object_id)
            else:
                self.diagnostic(f"confirm ignored in phase {self.phase.value}")
            return
        self.diagnostic(f"unknown event {event!r} ignored")

    def _reset_to_idle(self) -> None:
        self.phase = Phase.IDLE
        self.first_level = None
        self.second_level = None
        self.selected_letter = None
        self.slot_world = {}
        self.panel_view = None
        self.guidance = None
        self.dwell = DwellState(threshold=self.cfg.dwell_seconds)
        self.trace.clear()

    def _begin_trial(self) -> None:
        self.trial_started = True
        if self.first_level_enabled:
            self.first_level = build_first_level(self.labels, band=self.cfg.letter_band)
            self.phase = Phase.FIRST_LEVEL
        else:
            self._enter_second_level(None)

    def _enter_second_level(self, letter: str | None) -> None:
        self.selected_letter = letter
        self.second_level = self.second_level_builder(letter, self)
        self.dropped_count += len(self.second_level.dropped)
        for note in self.second_level.diagnostics:
            self.diagnostic(note)
        # Once unfolded, the layout panel is anchored in the world: label
        # slots keep the world positions they were displayed at, and the
        # panel frame (this view) is where gaze motion and flying directions
        # are measured from now on.  Head rotation moves the gaze ray across
        # the panel, which is exactly the motion the direction fit wants.
        self.panel_view = self.view
        self.slot_world = {}
        for circle in self.second_level.circles:
            for label in circle.entries:
                screen = self.second_level.label_position(label, circle)
                self.slot_world[label.id] = unproject(screen, self.view, self.cfg.plane_depth, self.cfg.half_angle)
        self.phase = Phase.SECOND_LEVEL

    def label_slot_screen(self, label_id: str) -> ScreenVec | None:
        """Current on-screen position of a laid-out label's slot."""
        world = self.slot_world.get(label_id)
        if world is None:
            return None
        pos, _ = screen_position(world, self.view, self.cfg.half_angle, self.cfg.aspect)
        return pos

    def panel_gaze(self) -> ScreenVec:
        """Gaze ray expressed in the guidance frame.

        Before the second level unfolds this is just the screen gaze;
        afterwards it is the gaze ray's angular position around the frozen
        panel axis, so head rotation reads as gaze motion.
        """
        if self.panel_view is None:
            return self.gaze
        ray_point = unproject(self.gaze, self.view, self.cfg.plane_depth, self.cfg.half_angle)
        return angular_position(ray_point, self.panel_view, self.cfg.half_angle)

    def _confirm(self, object_id: str) -> None:
        assert self.guidance is not None
        flight = next((f for f in self.guidance.flights if f.anchor_id == object_id), None)
        if flight is None:
            self.diagnostic(f"confirm on {object_id} matches no active flight; ignored")
            return
        self.phase = Phase.LOCATED
        self.located_label_id = flight.label_id
        self.located_object_id = object_id
        self.guidance.target_reached = flight.label_id
        self.success = self.target_id is None or object_id == self.target_id
        self.emit("TargetLocated", {"label_id": flight.label_id, "object_id": object_id})

    # -- ticking -----------------------------------------------------------

    def step(self, events: Sequence[InputEvent], dt: float) -> tuple[Phase, list[EmittedEvent]]:
        """Apply ``events`` then advance one tick of ``dt`` seconds."""
        before = len(self.events)
        self.apply_events(events)
        self.tick(dt)
        return self.phase, self.events[before:]

    def tick(self, dt: float) -> None:
        if dt <= 0.0:
            raise ValueError("dt must be positive")
        self.t += dt
        if self.trial_started and self.phase is not Phase.LOCATED:
            self.ticks += 1
            self._account_fov()

        if self.phase is Phase.FIRST_LEVEL:
            assert self.first_level is not None
            letter = dwell_update(self.dwell, self.gaze, self.first_level, dt)
            if letter is not None:
                self.emit("LetterSelected", {"letter": letter})
                self._enter_second_level(letter)
        elif self.phase is Phase.SECOND_LEVEL:
            self._try_launch()
        elif self.phase is Phase.GUIDING:
            self._tick_guiding(dt)

    def _account_fov(self) -> None:
        if self.target_id is None:
            return
        try:
            pos = world_to_screen(self.scene.get(self.target_id).position, self.view, self.cfg.half_angle)
        except BehindView:
            return
        if norm2(pos) < 1.0:
            self.fov_ticks += 1

    def _try_launch(self) -> None:
        assert self.second_level is not None
        center = self.second_level.center
        if norm2(sub2(self.panel_gaze(), center)) < self.cfg.candidate_gaze_dist:
            return
        direction = fit_gaze_direction(self.trace, self.cfg.motion_threshold)
        if direction is None:
            return
        candidates = select_candidates(self.second_level, direction)
        if not candidates:
            return
        flights = []
        for label in candidates:
            flight = self._make_flight(label)
            if flight is not None:
                flights.append(flight)
        if not flights:
            return
        if self.guidance is None:
            self.guidance = GuidanceState(flights=flights, last_gaze_dir=direction)
        else:
            # Re-selection after every flight was pruned or expired.
            self.guidance.flights = flights
            self.guidance.last_gaze_dir = direction
        self.phase = Phase.GUIDING
        self.emit("CandidatesChosen", {"count": len(flights)})

    def _make_flight(self, label: Label) -> FlightState | None:
        start = self.slot_world.get(label.id)
        if start is None:
            return None
        anchor = self.scene.get(label.anchor_id).position
        try:
            trajectory = make_trajectory(start, anchor, self.view.viewpoint)
        except DegenerateFlight:
            self.diagnostic(f"label {label.id} already at its anchor; flight skipped")
            return None
        return FlightState(
            label_id=label.id,
            anchor_id=label.anchor_id,
            text=label.text,
            trajectory=trajectory,
            s=self.cfg.initial_speed,
        )

    def _tick_guiding(self, dt: float) -> None:
        assert self.guidance is not None
        assert self.panel_view is not None
        pruned_before = len(self.guidance.pruned_ids)
        step_guidance(self.guidance, self.panel_view, self.trace, dt, self.cfg)
        for label_id in self.guidance.pruned_ids[pruned_before:]:
            self.pruned_count += 1
            self.emit("LabelPruned", {"label_id": label_id})
        if self.auto_turn and norm2(self.gaze) > self.cfg.turn_threshold:
            ray_point = unproject(self.gaze, self.view, self.cfg.plane_depth, self.cfg.half_angle)
            self.rotate_toward(ray_point, self.cfg.head_speed_deg * dt)
        if not self.guidance.flights:
            # Every candidate was pruned or expired: re-run selection from
            # the current gaze motion without leaving the guiding phase.
            self.diagnostic("all flights gone; re-selecting candidates")
            self._relaunch_from_gaze()

    def _relaunch_from_gaze(self) -> None:
        assert self.second_level is not None
        direction = fit_gaze_direction(self.trace, self.cfg.motion_threshold)
        if direction is None:
            return
        candidates = select_candidates(self.second_level, direction)
        flights = []
        for label in candidates:
            flight = self._make_flight(label)
            if flight is not None:
                flights.append(flight)
        if flights:
            assert self.guidance is not None
            self.guidance.flights = flights
            self.guidance.last_gaze_dir = direction
            self.emit("CandidatesChosen", {"count": len(flights)})

    # -- snapshot support ----------------------------------------------------

    def flight_positions(self) -> list[dict]:
        if self.guidance is None:
            return []
        out = []
        for flight in self.guidance.flights:
            world = eval_trajectory(flight.trajectory, flight.t)
            out.append(
                {
                    "id": flight.label_id,
                    "text": flight.text,
                    "anchor_id": flight.anchor_id,
                    "pos2d": list(flight_screen_pos(flight, self.view, self.cfg)),
                    "pos3d": list(world),
                    "t": flight.t,
                    "s": flight.s,
                }
            )
        return out


def _rotate_about(v: Vec3, axis: Vec3, angle: float) -> Vec3:
    # Rodrigues rotation of v about a unit axis.
    c = math.cos(angle)
    s = math.sin(angle)
    term1 = mul3(v, c)
    term2 = mul3(cross3(axis, v), s)
    term3 = mul3(axis, dot3(axis, v) * (1.0 - c))
    return add3(add3(term1, term2), term3)


def step_pipeline(
    session: PipelineSession, event: InputEvent | None, dt: float
) -> tuple[Phase, list[EmittedEvent]]:
    """Single-event convenience wrapper around :meth:`PipelineSession.step`."""
    return session.step([event] if event is not None else [], dt)
