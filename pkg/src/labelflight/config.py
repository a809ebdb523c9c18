"""Engine-wide tunables shared by layout, guidance, and the session loop."""

from __future__ import annotations

import math
from dataclasses import dataclass


@dataclass(frozen=True)
class EngineConfig:
    """Knobs for the whole engine.

    Screen lengths are dimensionless: 1.0 equals the on-screen radius of the
    central field of view, so the innermost layout circle has radius 1.0 by
    construction.  Angles in public fields are degrees; helpers convert.
    """

    central_fov_deg: float = 30.0
    aspect: float = 16.0 / 9.0
    tick_hz: float = 60.0
    dwell_seconds: float = 0.4
    max_circles: int = 6
    relax_iters: int = 60
    label_width: float = 0.12
    base_radius: float = 1.0
    circle_gap: float = 0.22
    plane_depth: float = 2.0
    gaze_window: float = 0.3
    motion_threshold: float = 0.05
    candidate_gaze_dist: float = 0.15
    flight_duration: float = 2.5
    initial_speed: float = 0.3
    completed_linger: float = 10.0
    prune_direction: str = "delta"
    prune_grace: float = 0.3
    letter_band: tuple[float, float] = (0.85, 1.15)
    auto_turn: bool = False
    turn_threshold: float = 0.75
    head_speed_deg: float = 120.0

    @property
    def half_angle(self) -> float:
        """Half-angle of the central FOV cone, in radians."""
        return math.radians(self.central_fov_deg / 2.0)

    @property
    def tick_dt(self) -> float:
        return 1.0 / self.tick_hz

    @property
    def half_diagonal(self) -> float:
        """Half-diagonal of the screen rectangle, used to normalize distances."""
        return math.hypot(self.aspect, 1.0)

    def circle_radius(self, k: int) -> float:
        return self.base_radius + self.circle_gap * k

    def label_extent(self, k: int) -> float:
        """Angular footprint of one label on circle ``k``."""
        return self.label_width / self.circle_radius(k)

    def min_separation(self, k: int) -> float:
        """Minimum extra clearance between neighbors on circle ``k`` (one
        label footprint plus a 10% margin)."""
        return 1.1 * self.label_extent(k)

    def required_gap(self, k: int) -> float:
        """Center-to-center angle below which two neighbors overlap."""
        return self.label_extent(k) + self.min_separation(k)


DEFAULT_CONFIG = EngineConfig()
