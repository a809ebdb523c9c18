"""Line-delimited session protocol between the engine and thin clients.

Every record is one JSON object per line.  The client drives the clock: the
timestamps on its gaze records advance the simulation in whole ticks, which
makes any recorded message log exactly replayable.  Every applied client
record is acknowledged by a snapshot (or an error record), and while the
session is guiding each elapsed tick emits its own snapshot.
"""

from __future__ import annotations

import json

from .conditions import MethodCondition, condition_builder
from .config import DEFAULT_CONFIG, EngineConfig
from .export import first_level_to_dict, layout_to_dict
from .geometry import screen_position
from .interaction import ButtonPress, Cancel, Confirm, GazeSample, Phase, PipelineSession
from .scenes import Scene, scene_from_dict, scene_to_dict

PROTOCOL_VERSION = 1


def encode_record(record: dict) -> str:
    return json.dumps(record, sort_keys=True, separators=(",", ":"))


class SessionEndpoint:
    """One protocol session; transport-agnostic (text lines in, lines out)."""

    def __init__(
        self,
        session_id: str = "s1",
        cfg: EngineConfig = DEFAULT_CONFIG,
        scene: Scene | None = None,
    ) -> None:
        self.session_id = session_id
        self.cfg = cfg
        self.scene = scene
        self.session: PipelineSession | None = None
        self._base_t: float | None = None
        self._last_t: float | None = None
        self._pending = 0.0
        self._event_cursor = 0
        if scene is not None:
            self._new_session()

    # -- plumbing ------------------------------------------------------------

    def _new_session(self, target_id: str | None = None, condition: MethodCondition = MethodCondition.EC3) -> None:
        assert self.scene is not None
        self.session = PipelineSession(
            self.scene,
            self.cfg,
            target_id=target_id,
            session_id=self.session_id,
            first_level_enabled=condition is not MethodCondition.CC2,
            second_level_builder=condition_builder(condition, self.cfg),
            auto_turn=True,
        )
        self._base_t = None
        self._last_t = None
        self._pending = 0.0
        self._event_cursor = 0

    def _error(self, code: str, msg: str) -> dict:
        return {"type": "error", "v": PROTOCOL_VERSION, "code": code, "msg": msg}

    def _drain_events(self) -> list[dict]:
        assert self.session is not None
        out = []
        while self._event_cursor < len(self.session.events):
            out.append({"type": "event", "v": PROTOCOL_VERSION, **self.session.events[self._event_cursor].to_record()})
            self._event_cursor += 1
        return out

    def snapshot(self) -> dict:
        assert self.session is not None
        s = self.session
        doc: dict = {
            "type": "snapshot",
            "v": PROTOCOL_VERSION,
            "t": s.t,
            "phase": s.phase.value,
            "gaze": list(s.gaze),
            "metrics": s.metrics(),
            "located": s.located_label_id,
            "target": None,
            "first_level": None,
            "second_level": None,
            "flights": s.flight_positions(),
            "markers": [],
        }
        if s.target_id is not None:
            target = s.scene.get(s.target_id)
            doc["target"] = {"id": target.id, "name": target.name}
        if s.first_level is not None and s.phase is Phase.FIRST_LEVEL:
            fl = first_level_to_dict(s.first_level)
            fl["dwell"] = {
                "letter": s.dwell.target,
                "progress": min(1.0, s.dwell.accumulated / s.dwell.threshold) if s.dwell.target else 0.0,
            }
            doc["first_level"] = fl
        if s.second_level is not None and s.phase in (Phase.SECOND_LEVEL, Phase.GUIDING):
            doc["second_level"] = layout_to_dict(s.second_level, letter=s.selected_letter)
        for obj in s.scene.objects:
            pos, in_front = screen_position(obj.position, s.view, s.cfg.half_angle, s.cfg.aspect)
            doc["markers"].append({"id": obj.id, "name": obj.name, "pos2d": list(pos), "front": in_front})
        return doc

    # -- record handling -------------------------------------------------------

    def handle_line(self, line: str) -> list[str]:
        """Process one client line; never raises."""
        line = line.strip()
        if not line:
            return []
        try:
            record = json.loads(line)
            if not isinstance(record, dict):
                raise ValueError("record must be an object")
        except ValueError as exc:
            return [encode_record(self._error("parse", str(exc)))]
        try:
            responses = self._dispatch(record)
        except Exception as exc:  # robustness: a bad record never kills the session
            responses = [self._error("internal", f"{type(exc).__name__}: {exc}")]
        return [encode_record(r) for r in responses]

    def _dispatch(self, record: dict) -> list[dict]:
        kind = record.get("type")
        if kind == "hello":
            return [{"type": "hello", "v": PROTOCOL_VERSION}]
        if kind == "load_scene":
            try:
                self.scene = scene_from_dict(record.get("scene") or {})
            except ValueError as exc:
                return [self._error("scene", str(exc))]
            self._new_session()
            return self._drain_events() + [self.snapshot()]
        if self.session is None:
            return [self._error("no_scene", "load_scene must come first")]
        if kind == "start_trial":
            condition_name = str(record.get("condition", "ec3")).lower()
            try:
                condition = MethodCondition(condition_name)
            except ValueError:
                return [self._error("condition", f"unknown condition {condition_name!r}")]
            target_id = record.get("target_id")
            try:
                self._new_session(target_id=target_id, condition=condition)
            except KeyError:
                return [self._error("unknown_target", f"no object {target_id!r} in scene")]
            return self._drain_events() + [self.snapshot()]
        if kind == "gaze":
            return self._handle_gaze(record)
        if kind == "button":
            button_kind = str(record.get("kind", "start"))
            event = Cancel() if button_kind == "cancel" else ButtonPress(button_kind)
            self.session.apply_events([event])
            return self._drain_events() + [self.snapshot()]
        if kind == "confirm":
            self.session.apply_events([Confirm(str(record.get("object_id", "")))])
            return self._drain_events() + [self.snapshot()]
        return [self._error("unsupported", f"unknown record type {kind!r}")]

    def _handle_gaze(self, record: dict) -> list[dict]:
        assert self.session is not None
        try:
            t = float(record["t"])
            point = (float(record["x"]), float(record["y"]))
        except (KeyError, TypeError, ValueError):
            return [self._error("parse", "gaze record needs numeric t, x, y")]
        if self._base_t is None:
            self._base_t = t
            self._last_t = t
        if t < self._last_t:
            return [self._error("non_monotonic", "gaze timestamps must not decrease")]
        self._pending += t - self._last_t
        self._last_t = t

        responses: list[dict] = []
        session_t = t - self._base_t
        self.session.apply_events([GazeSample(session_t, point)])
        tick = self.cfg.tick_dt
        # Cap the burst so a huge client gap cannot stall the server.
        steps = min(int(self._pending / tick + 1e-9), int(2.0 * self.cfg.tick_hz))
        self._pending -= steps * tick
        if self._pending < 0.0:
            self._pending = 0.0
        for i in range(steps):
            self.session.tick(tick)
            responses.extend(self._drain_events())
            if self.session.phase is Phase.GUIDING and i < steps - 1:
                responses.append(self.snapshot())
        responses.append(self.snapshot())
        return responses


def replay_log(lines: list[str], cfg: EngineConfig = DEFAULT_CONFIG, scene: Scene | None = None) -> list[str]:
    """Feed a recorded client log into a fresh endpoint; returns responses."""
    endpoint = SessionEndpoint(cfg=cfg, scene=scene)
    out: list[str] = []
    for line in lines:
        out.extend(endpoint.handle_line(line))
    return out


def scene_record(scene: Scene) -> dict:
    return {"type": "load_scene", "v": PROTOCOL_VERSION, "scene": scene_to_dict(scene)}
