"""Shared oracles and invariant checkers used across the test suite.

Everything here is deliberately independent of the implementation paths it
checks: brute force, dense sampling, and exhaustive search only.
"""

from __future__ import annotations

import math

from labelflight.config import EngineConfig
from labelflight.geometry import TAU, wrap_radian
from labelflight.layout import CircleLayout, Label, MultiCircleLayout, range_width


def exhaustive_max_sorted(rads_alphabetical: list[float]) -> int:
    """Largest subset of the (alphabetically ordered) radian sequence that
    some cut can unwrap into a non-decreasing run.

    Depth-first enumeration over subsets; a subset of a valid sequence is
    valid, so branches die as soon as the partial chain stops being valid.
    """
    rads = [wrap_radian(r) for r in rads_alphabetical]
    n = len(rads)
    best = 0

    def cuts(seq: list[float]) -> list[float]:
        values = sorted(set(seq))
        mids = [
            wrap_radian((values[i] + values[(i + 1) % len(values)]) / 2.0 + (0.0 if i + 1 < len(values) else math.pi))
            for i in range(len(values))
        ]
        return values + mids

    def valid(seq: list[float]) -> bool:
        for c in cuts(seq):
            unwrapped = [(v - c) % TAU for v in seq]
            if all(a <= b + 1e-12 for a, b in zip(unwrapped, unwrapped[1:])):
                return True
        return False

    def dfs(i: int, chosen: list[float]) -> None:
        nonlocal best
        if len(chosen) + (n - i) <= best:
            return
        if i == n:
            best = max(best, len(chosen))
            return
        chosen.append(rads[i])
        if valid(chosen):
            dfs(i + 1, chosen)
        chosen.pop()
        dfs(i + 1, chosen)

    dfs(0, [])
    return best


def cyclically_sorted(circle: CircleLayout) -> bool:
    """Entries alphabetical in list order and counterclockwise under some cut."""
    keys = [label.sort_key for label in circle.entries]
    if keys != sorted(keys):
        return False
    rads = [wrap_radian(label.rad) for label in circle.entries]
    m = len(rads)
    if m <= 2:
        return True
    descents = sum(1 for i in range(m) if rads[(i + 1) % m] < rads[i])
    return descents <= 1


def circle_gaps_ccw(circle: CircleLayout) -> list[float]:
    rads = [wrap_radian(label.rad) for label in circle.entries]
    m = len(rads)
    return [(rads[(i + 1) % m] - rads[i]) % TAU for i in range(m)]


def check_layout_invariants(mcl: MultiCircleLayout, inputs: list[Label], cfg: EngineConfig) -> list[str]:
    """Return a list of violation descriptions (empty = all invariants hold)."""
    problems: list[str] = []

    placed = mcl.placed()
    placed_ids = [l.id for l in placed]
    dropped_ids = [l.id for l in mcl.dropped]
    input_ids = sorted(l.id for l in inputs)
    if sorted(placed_ids + dropped_ids) != input_ids:
        problems.append("partition: placed + dropped != inputs")
    if set(placed_ids) & set(dropped_ids):
        problems.append("partition: placed and dropped overlap")

    for label in placed:
        expected = range_width(label.dis)
        if abs(label.ran.width - expected) > 1e-9:
            problems.append(f"range width law violated for {label.id}")
        if not label.ran.contains(label.rad, tol=1e-9):
            problems.append(f"range containment violated for {label.id}")

    radii = [c.radius for c in mcl.circles]
    if any(b <= a for a, b in zip(radii, radii[1:])):
        problems.append("circle radii not strictly increasing")

    for circle in mcl.circles:
        if not cyclically_sorted(circle):
            problems.append(f"circle {circle.index} not sorted")
        if len(circle.entries) >= 2:
            need = cfg.required_gap(circle.index)
            for i, gap in enumerate(circle_gaps_ccw(circle)):
                if gap < need - 1e-9:
                    problems.append(f"overlap on circle {circle.index} at entry {i}: gap {gap:.5f} < {need:.5f}")
    return problems


def brute_force_candidates(layout: MultiCircleLayout, gaze_dir: tuple[float, float]) -> set[str]:
    """Angle-threshold filter done the slow way: explicit acos per label."""
    chosen = set()
    for circle in layout.circles:
        for label in circle.entries:
            pos = layout.label_position(label, circle)
            vec = (pos[0] - layout.center[0], pos[1] - layout.center[1])
            nv = math.hypot(*vec)
            ng = math.hypot(*gaze_dir)
            if nv <= 0.0 or ng <= 0.0:
                continue
            cos_angle = (vec[0] * gaze_dir[0] + vec[1] * gaze_dir[1]) / (nv * ng)
            angle = math.acos(max(-1.0, min(1.0, cos_angle)))
            if angle < math.pi / 2.0:
                chosen.add(label.id)
    return chosen
