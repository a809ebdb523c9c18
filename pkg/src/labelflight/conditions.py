"""Baseline layout conditions used for method comparisons.

* ``ec3`` is the full second-level layout (sorted circles with sliding
  orientation ranges).
* ``ec2`` pins every label exactly at its orientation radian and stacks
  conflicting labels onto farther circles.
* ``ec1`` puts everything on one circle, evenly spaced in alphabetical
  order, rotated as a whole to sit as close to the orientation radians as
  possible.
* ``cc2`` skips the letter filter entirely: all scene labels, alphabetical,
  evenly spaced over as many circles as needed.
"""

from __future__ import annotations

import math
from enum import Enum
from typing import Mapping

from .config import DEFAULT_CONFIG, EngineConfig
from .geometry import TAU, ScreenVec, Vec3, ViewState, angular_distance, wrap_radian
from .layout import (
    CircleLayout,
    Label,
    MultiCircleLayout,
    build_second_level,
    init_label_attrs,
)

_EC2_MAX_CIRCLES = 64


class MethodCondition(str, Enum):
    CC2 = "cc2"
    EC1 = "ec1"
    EC2 = "ec2"
    EC3 = "ec3"


def layout_for(
    condition: MethodCondition,
    labels: list[Label],
    objects: Mapping[str, Vec3],
    view: ViewState,
    center: ScreenVec | None = None,
    cfg: EngineConfig = DEFAULT_CONFIG,
) -> MultiCircleLayout:
    """Build the second-level layout for one experimental condition."""
    if condition is MethodCondition.EC3:
        return build_second_level(labels, objects, view, center=center, cfg=cfg)
    if condition is MethodCondition.EC2:
        return _strict_orientation_layout(labels, objects, view, center, cfg)
    if condition is MethodCondition.EC1:
        return _single_sorted_circle(labels, objects, view, center, cfg)
    if condition is MethodCondition.CC2:
        return _full_alphabetical_layout(labels, objects, view, center, cfg)
    raise ValueError(f"unknown condition {condition!r}")


def _strict_orientation_layout(labels, objects, view, center, cfg) -> MultiCircleLayout:
    # Every label keeps rad == rad_p; a label goes to the innermost circle
    # where it clears all previously placed labels.
    scl = init_label_attrs(labels, objects, view, center=center, cfg=cfg)
    origin = center if center is not None else view.gaze
    mcl = MultiCircleLayout(center=origin)
    circles: list[CircleLayout] = []
    for label in scl:
        label.rad = wrap_radian(label.rad_p)
        placed = False
        for k in range(_EC2_MAX_CIRCLES):
            if k == len(circles):
                circles.append(CircleLayout(index=k, radius=cfg.circle_radius(k)))
            circle = circles[k]
            need = cfg.required_gap(k)
            if all(angular_distance(label.rad, other.rad) >= need for other in circle.entries):
                label.circle_index = k
                circle.entries.append(label)
                placed = True
                break
        if not placed:
            label.circle_index = None
            mcl.dropped.append(label)
            mcl.diagnostics.append(f"label {label.id} dropped: no pinned slot within {_EC2_MAX_CIRCLES} circles")
    for circle in circles:
        circle.entries.sort(key=lambda l: (l.rad, l.sort_key))
    mcl.circles = [c for c in circles if c.entries]
    for k, circle in enumerate(mcl.circles):
        # Compact indices in case an intermediate circle ended up empty.
        circle.index = k
        circle.radius = cfg.circle_radius(k)
        for label in circle.entries:
            label.circle_index = k
    return mcl


def _single_sorted_circle(labels, objects, view, center, cfg) -> MultiCircleLayout:
    # One circle, even spacing, alphabetical; the whole ring is rotated to
    # minimize the mean angular error to the orientation radians.
    scl = init_label_attrs(labels, objects, view, center=center, cfg=cfg)
    origin = center if center is not None else view.gaze
    mcl = MultiCircleLayout(center=origin)
    n = len(scl)
    if n == 0:
        return mcl
    spacing = TAU / n
    slots = [i * spacing for i in range(n)]

    def mean_error(phi: float) -> float:
        return sum(angular_distance(phi + slots[i], scl[i].rad_p) for i in range(n)) / n

    candidates = set()
    for i in range(n):
        candidates.add(wrap_radian(scl[i].rad_p - slots[i]))
        candidates.add(wrap_radian(scl[i].rad_p - slots[i] + math.pi))
    best_phi = min(sorted(candidates), key=lambda phi: (mean_error(phi), phi))

    circle = CircleLayout(index=0, radius=cfg.circle_radius(0))
    for i, label in enumerate(scl):
        label.rad = wrap_radian(best_phi + slots[i])
        label.circle_index = 0
        circle.entries.append(label)
    mcl.circles = [circle]
    return mcl


def _full_alphabetical_layout(labels, objects, view, center, cfg) -> MultiCircleLayout:
    # Alphabetical order filled circle by circle, each circle evenly spaced
    # and holding at most as many labels as fit without overlap.
    scl = init_label_attrs(labels, objects, view, center=center, cfg=cfg)
    origin = center if center is not None else (0.0, 0.0)
    mcl = MultiCircleLayout(center=origin)
    remaining = list(scl)
    k = 0
    while remaining:
        capacity = max(1, int(TAU / cfg.required_gap(k)))
        batch, remaining = remaining[:capacity], remaining[capacity:]
        spacing = TAU / len(batch)
        circle = CircleLayout(index=k, radius=cfg.circle_radius(k))
        for i, label in enumerate(batch):
            label.rad = wrap_radian(i * spacing)
            label.circle_index = k
            circle.entries.append(label)
        mcl.circles.append(circle)
        k += 1
    return mcl


def condition_builder(condition: MethodCondition, cfg: EngineConfig = DEFAULT_CONFIG):
    """Second-level builder for :class:`PipelineSession` under a condition."""

    def build(letter: str | None, session) -> MultiCircleLayout:
        labels = session.labels_with_initial(letter)
        return layout_for(
            condition,
            labels,
            session.scene.object_map(),
            session.view,
            center=session.layout_center_for(letter),
            cfg=cfg,
        )

    return build
