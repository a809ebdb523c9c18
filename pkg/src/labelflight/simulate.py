"""Scripted follower agent, closed-loop trials, and method comparisons.

The agent stands in for a study participant: it presses the start button,
dwells on the target's initial letter, steers its gaze toward the target
label, follows the flying label (turning its head once the label leaves the
central field of view), and confirms at the anchor.  Trials are fully
deterministic given the scene seed and the agent seed.
"""

from __future__ import annotations

import statistics
from dataclasses import dataclass, field, replace
from random import Random

from .conditions import MethodCondition, condition_builder
from .config import DEFAULT_CONFIG, EngineConfig
from .geometry import ScreenVec, norm2, screen_position, sub2
from .guidance import eval_trajectory
from .interaction import ButtonPress, Confirm, GazeSample, InputEvent, Phase, PipelineSession
from .scenes import Scene, SceneObject, generate_scene


class UnknownTarget(KeyError):
    """Trial target id not present in the scene."""


@dataclass(frozen=True)
class AgentConfig:
    reaction_latency: float = 0.2
    max_gaze_speed: float = 3.0
    max_head_speed: float = 120.0
    noise_sigma: float = 0.01
    seed: int = 0

    def __post_init__(self) -> None:
        for name in ("reaction_latency", "max_gaze_speed", "max_head_speed", "noise_sigma"):
            if getattr(self, name) < 0:
                raise ValueError(f"{name} must be non-negative")


@dataclass(frozen=True)
class TrialLimits:
    max_seconds: float = 60.0


@dataclass(frozen=True)
class TrialMetrics:
    condition: str
    target_id: str
    ticks: int
    time_s: float
    rotation_deg: float
    success: bool
    pruned_count: int
    dropped_count: int
    fov_time_s: float
    circles: int

    def to_record(self) -> dict:
        return {
            "condition": self.condition,
            "target_id": self.target_id,
            "ticks": self.ticks,
            "time_s": self.time_s,
            "rotation_deg": self.rotation_deg,
            "success": self.success,
            "pruned_count": self.pruned_count,
            "dropped_count": self.dropped_count,
            "fov_time_s": self.fov_time_s,
            "circles": self.circles,
        }


class FollowerAgent:
    """Deterministic gaze-and-head controller chasing one target object."""

    SACCADE_DIST = 0.35

    def __init__(self, cfg: AgentConfig, target: SceneObject) -> None:
        self.cfg = cfg
        self.target = target
        self.rng = Random(cfg.seed)
        self.gaze: ScreenVec = (0.0, 0.0)
        self.pressed = False
        self.tracking = False
        self.retreating = False
        self._last_confirm = -1.0
        self._last_phase: Phase | None = None
        self._phase_entered = 0.0

    def _steer(self, goal: ScreenVec, dt: float, session: PipelineSession) -> ScreenVec:
        delta = sub2(goal, self.gaze)
        dist = norm2(delta)
        if self.cfg.max_gaze_speed <= 0.0:
            delta = (0.0, 0.0)
        elif dist > self.SACCADE_DIST:
            pass  # saccade: eyes jump to far targets within a tick
        else:
            reach = self.cfg.max_gaze_speed * dt
            if dist > reach:
                delta = (delta[0] * reach / dist, delta[1] * reach / dist)
        point = (self.gaze[0] + delta[0], self.gaze[1] + delta[1])
        if self.cfg.noise_sigma > 0.0:
            point = (
                point[0] + self.rng.gauss(0.0, self.cfg.noise_sigma),
                point[1] + self.rng.gauss(0.0, self.cfg.noise_sigma),
            )
        return session.clamp_gaze(point)

    def step(self, session: PipelineSession, dt: float) -> list[InputEvent]:
        """Produce this tick's input events; may also turn the session view."""
        now = session.t + dt
        if session.phase is not self._last_phase:
            self._last_phase = session.phase
            self._phase_entered = session.t
        settled = session.t - self._phase_entered >= self.cfg.reaction_latency

        events: list[InputEvent] = []
        goal = self.gaze

        if session.phase is Phase.IDLE:
            goal = (0.0, 0.0)
            if not self.pressed and now >= self.cfg.reaction_latency:
                events.append(ButtonPress("start"))
                self.pressed = True
        elif session.phase is Phase.FIRST_LEVEL:
            assert session.first_level is not None
            letter = self.target.name[0].lower()
            pos = session.first_level.position(letter)
            goal = (pos[0] * 0.92, pos[1] * 0.92)
        elif session.phase is Phase.SECOND_LEVEL:
            if settled:
                goal = self._label_goal(session) or self.gaze
        elif session.phase is Phase.GUIDING:
            goal = self._follow_flight(session, dt, now, events)
        # LOCATED: nothing left to do.

        self.gaze = self._steer(goal, dt, session)
        events.append(GazeSample(now, self.gaze))
        return events

    def _label_goal(self, session: PipelineSession) -> ScreenVec | None:
        # None when the target label was dropped; nothing sensible to chase.
        return session.label_slot_screen(f"lab_{self.target.id}")

    def _reacquire_goal(self, session: PipelineSession) -> ScreenVec:
        # The followed flight was pruned or expired.  A gaze parked on the
        # slot produces no fitted direction, so back off toward the screen
        # center first and sweep out to the slot again.
        slot = self._label_goal(session)
        if slot is None:
            return self.gaze
        if self.retreating:
            if norm2(self.gaze) < 0.1:
                self.retreating = False
            else:
                return (0.0, 0.0)
        elif norm2(sub2(self.gaze, slot)) < 0.1:
            self.retreating = True
            return (0.0, 0.0)
        return slot

    def _follow_flight(
        self, session: PipelineSession, dt: float, now: float, events: list[InputEvent]
    ) -> ScreenVec:
        assert session.guidance is not None
        flight = session.guidance.find(f"lab_{self.target.id}")
        if flight is None:
            return self._reacquire_goal(session)
        self.retreating = False
        world = eval_trajectory(flight.trajectory, flight.t)
        pos, in_front = screen_position(world, session.view, session.cfg.half_angle, session.cfg.aspect)
        if not in_front or norm2(pos) > 1.0:
            self.tracking = True
        # The head turns freely while the label is outside the reachable
        # screen rectangle; once it is on screen the head follows only while
        # the eyes are locked on the label, so the label is never dragged
        # away from a gaze still approaching it.
        cfg = session.cfg
        offscreen = not in_front or abs(pos[0]) > cfg.aspect or abs(pos[1]) > 1.0
        if self.tracking and (offscreen or norm2(sub2(self.gaze, pos)) < 0.3):
            session.rotate_toward(world, self.cfg.max_head_speed * dt)
            pos, _ = screen_position(world, session.view, cfg.half_angle, cfg.aspect)
        if (
            flight.completed_at is not None
            and norm2(sub2(self.gaze, pos)) < 0.12
            and session.guidance.elapsed - flight.completed_at >= self.cfg.reaction_latency
            and now - self._last_confirm >= 1.0
        ):
            events.append(Confirm(self.target.id))
            self._last_confirm = now
        return pos


def agent_step(agent: FollowerAgent, session: PipelineSession, dt: float) -> list[InputEvent]:
    """Advance the scripted agent by one tick."""
    return agent.step(session, dt)


def run_trial(
    scene: Scene,
    target_id: str,
    condition: MethodCondition,
    agent: AgentConfig = AgentConfig(),
    limits: TrialLimits = TrialLimits(),
    cfg: EngineConfig = DEFAULT_CONFIG,
) -> TrialMetrics:
    """Closed-loop run of one locating trial; times out at the limit."""
    try:
        target = scene.get(target_id)
    except KeyError:
        raise UnknownTarget(target_id) from None
    session = PipelineSession(
        scene,
        cfg,
        target_id=target_id,
        first_level_enabled=condition is not MethodCondition.CC2,
        second_level_builder=condition_builder(condition, cfg),
        auto_turn=False,
    )
    follower = FollowerAgent(agent, target)
    dt = cfg.tick_dt
    max_ticks = int(round(limits.max_seconds * cfg.tick_hz))
    for _ in range(max_ticks):
        events = follower.step(session, dt)
        session.step(events, dt)
        if session.phase is Phase.LOCATED:
            break
    m = session.metrics()
    return TrialMetrics(
        condition=condition.value,
        target_id=target_id,
        ticks=m["ticks"],
        time_s=m["time_s"],
        rotation_deg=m["rotation_deg"],
        success=m["success"] and session.phase is Phase.LOCATED,
        pruned_count=m["pruned_count"],
        dropped_count=m["dropped_count"],
        fov_time_s=m["fov_time_s"],
        circles=len(session.second_level.circles) if session.second_level else 0,
    )


def run_null_trial(limits: TrialLimits = TrialLimits(), cfg: EngineConfig = DEFAULT_CONFIG) -> dict:
    """Free-visual-search stand-in: no guidance, always times out."""
    ticks = int(round(limits.max_seconds * cfg.tick_hz))
    return {
        "condition": "cc1",
        "target_id": "",
        "ticks": ticks,
        "time_s": ticks * cfg.tick_dt,
        "rotation_deg": 0.0,
        "success": False,
        "pruned_count": 0,
        "dropped_count": 0,
        "fov_time_s": 0.0,
        "circles": 0,
    }


# --------------------------------------------------------------------------
# aggregation


@dataclass(frozen=True)
class CompareConfig:
    conditions: tuple[MethodCondition, ...] = (MethodCondition.EC1, MethodCondition.EC2, MethodCondition.EC3)
    trials: int = 100
    n_objects: int = 60
    preset: str = "scatter"
    letters: str | None = None
    scene_seed_base: int = 0
    agent: AgentConfig = AgentConfig()
    limits: TrialLimits = TrialLimits()
    engine: EngineConfig = DEFAULT_CONFIG


@dataclass(frozen=True)
class ConditionStats:
    condition: str
    trials: int
    mean_time_s: float
    std_time_s: float
    mean_rotation_deg: float
    std_rotation_deg: float
    success_rate: float
    mean_circles: float
    mean_pruned: float
    mean_dropped: float

    def to_record(self) -> dict:
        return {
            "condition": self.condition,
            "trials": self.trials,
            "mean_time_s": self.mean_time_s,
            "std_time_s": self.std_time_s,
            "mean_rotation_deg": self.mean_rotation_deg,
            "std_rotation_deg": self.std_rotation_deg,
            "success_rate": self.success_rate,
            "mean_circles": self.mean_circles,
            "mean_pruned": self.mean_pruned,
            "mean_dropped": self.mean_dropped,
        }


@dataclass
class Report:
    rows: list[ConditionStats]
    checks: dict[str, bool]
    records: list[dict] = field(default_factory=list)

    CSV_COLUMNS = (
        "condition",
        "trials",
        "mean_time_s",
        "std_time_s",
        "mean_rotation_deg",
        "std_rotation_deg",
        "success_rate",
        "mean_circles",
        "mean_pruned",
        "mean_dropped",
    )

    def to_csv(self) -> str:
        lines = [",".join(self.CSV_COLUMNS)]
        for row in self.rows:
            record = row.to_record()
            lines.append(",".join(repr(record[c]) if isinstance(record[c], float) else str(record[c]) for c in self.CSV_COLUMNS))
        return "\n".join(lines) + "\n"

    def to_dict(self) -> dict:
        return {
            "v": 1,
            "rows": [row.to_record() for row in self.rows],
            "checks": self.checks,
        }

    def to_text(self) -> str:
        header = f"{'condition':<10} {'time_s':>12} {'rotation_deg':>18} {'success':>8} {'circles':>8} {'pruned':>7} {'dropped':>8}"
        lines = [header, "-" * len(header)]
        for row in self.rows:
            lines.append(
                f"{row.condition:<10} {row.mean_time_s:>6.2f}±{row.std_time_s:<5.2f}"
                f" {row.mean_rotation_deg:>9.1f}±{row.std_rotation_deg:<7.1f}"
                f" {row.success_rate:>8.2f} {row.mean_circles:>8.2f} {row.mean_pruned:>7.2f} {row.mean_dropped:>8.2f}"
            )
        if self.checks:
            lines.append("")
            for name, ok in sorted(self.checks.items()):
                lines.append(f"check {'pass' if ok else 'FAIL'}: {name}")
        return "\n".join(lines) + "\n"


def _stats_for(condition: MethodCondition, metrics: list[TrialMetrics]) -> ConditionStats:
    times = [m.time_s for m in metrics]
    rotations = [m.rotation_deg for m in metrics]
    return ConditionStats(
        condition=condition.value,
        trials=len(metrics),
        mean_time_s=statistics.fmean(times),
        std_time_s=statistics.pstdev(times) if len(times) > 1 else 0.0,
        mean_rotation_deg=statistics.fmean(rotations),
        std_rotation_deg=statistics.pstdev(rotations) if len(rotations) > 1 else 0.0,
        success_rate=sum(1 for m in metrics if m.success) / len(metrics),
        mean_circles=statistics.fmean(m.circles for m in metrics),
        mean_pruned=statistics.fmean(m.pruned_count for m in metrics),
        mean_dropped=statistics.fmean(m.dropped_count for m in metrics),
    )


def compare_methods(config: CompareConfig) -> Report:
    """Run seeded trials for every condition and aggregate the outcomes.

    The same scene and target pair is reused across conditions for each
    seed, so rows are directly comparable.
    """
    if len(config.conditions) < 2:
        raise ValueError("need at least two conditions to compare")
    if config.trials < 1:
        raise ValueError("need at least one trial")

    by_condition: dict[MethodCondition, list[TrialMetrics]] = {c: [] for c in config.conditions}
    records: list[dict] = []
    for i in range(config.trials):
        scene_seed = config.scene_seed_base + i
        scene = generate_scene(scene_seed, config.n_objects, config.preset, config.letters)
        target = scene.objects[Random(scene_seed ^ 0x5EED).randrange(len(scene.objects))]
        for condition in config.conditions:
            metrics = run_trial(
                scene,
                target.id,
                condition,
                agent=replace(config.agent, seed=config.agent.seed + i),
                limits=config.limits,
                cfg=config.engine,
            )
            by_condition[condition].append(metrics)
            record = metrics.to_record()
            record["scene_seed"] = scene_seed
            records.append(record)

    rows = [_stats_for(c, by_condition[c]) for c in config.conditions]
    stats = {row.condition: row for row in rows}
    checks: dict[str, bool] = {}
    if "ec1" in stats and "ec3" in stats:
        checks["rotation_ec3_below_ec1"] = stats["ec3"].mean_rotation_deg < stats["ec1"].mean_rotation_deg
    if "ec2" in stats and "ec3" in stats:
        ec2 = stats["ec2"].mean_rotation_deg
        ec3 = stats["ec3"].mean_rotation_deg
        checks["rotation_ec3_within_10pct_ec2"] = abs(ec3 - ec2) <= 0.10 * ec2 if ec2 > 0 else ec3 == 0
        checks["circles_ec3_not_above_ec2"] = stats["ec3"].mean_circles <= stats["ec2"].mean_circles
    return Report(rows=rows, checks=checks, records=records)
