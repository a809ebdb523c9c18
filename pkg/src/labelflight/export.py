"""Serialization of layouts and trajectories: JSON documents and SVG."""

from __future__ import annotations

import json
import math

from .guidance import Trajectory, sample_polyline
from .layout import FirstLevelLayout, MultiCircleLayout

LAYOUT_FORMAT_VERSION = 1


def layout_to_dict(mcl: MultiCircleLayout, letter: str | None = None, condition: str | None = None) -> dict:
    doc: dict = {
        "v": LAYOUT_FORMAT_VERSION,
        "center": list(mcl.center),
        "circles": [
            {
                "index": circle.index,
                "radius": circle.radius,
                "labels": [
                    {
                        "id": label.id,
                        "text": label.text,
                        "anchor_id": label.anchor_id,
                        "radian": label.rad,
                        "range": [label.ran.min, label.ran.max],
                        "circle_index": label.circle_index,
                    }
                    for label in circle.entries
                ],
            }
            for circle in mcl.circles
        ],
        "dropped": [{"id": label.id, "text": label.text, "anchor_id": label.anchor_id} for label in mcl.dropped],
        "diagnostics": list(mcl.diagnostics),
    }
    if letter is not None:
        doc["letter"] = letter
    if condition is not None:
        doc["condition"] = condition
    return doc


def layout_to_json(mcl: MultiCircleLayout, letter: str | None = None, condition: str | None = None) -> str:
    return json.dumps(layout_to_dict(mcl, letter, condition), sort_keys=True, separators=(",", ":")) + "\n"


def first_level_to_dict(layout: FirstLevelLayout) -> dict:
    return {
        "v": LAYOUT_FORMAT_VERSION,
        "radius": layout.radius,
        "band": list(layout.band),
        "slot_half_width": layout.slot_half_width,
        "letters": [
            {
                "letter": slot.letter,
                "radian": slot.radian,
                "x": layout.radius * math.cos(slot.radian),
                "y": layout.radius * math.sin(slot.radian),
            }
            for slot in layout.letters
        ],
    }


def trajectory_to_dict(traj: Trajectory, samples: int = 64) -> dict:
    return {
        "v": LAYOUT_FORMAT_VERSION,
        "control": [list(p) for p in traj.control],
        "polyline": [list(p) for p in sample_polyline(traj, samples)],
    }


def layout_to_svg(mcl: MultiCircleLayout, size: int = 640) -> str:
    """Plain SVG in the unit-circle frame: one drawn circle per layout circle
    and one text element per label.  The y axis is flipped for SVG."""
    max_r = max((c.radius for c in mcl.circles), default=1.0) + 0.3
    cx, cy = mcl.center
    half = max_r + max(abs(cx), abs(cy))
    scale = size / (2.0 * half)

    def sx(x: float) -> float:
        return (x + half) * scale

    def sy(y: float) -> float:
        return (half - y) * scale

    parts = [
        f'<svg xmlns="http://www.w3.org/2000/svg" width="{size}" height="{size}" '
        f'viewBox="0 0 {size} {size}">',
        f'<rect width="{size}" height="{size}" fill="white"/>',
    ]
    for circle in mcl.circles:
        parts.append(
            f'<circle cx="{sx(cx):.2f}" cy="{sy(cy):.2f}" r="{circle.radius * scale:.2f}" '
            f'fill="none" stroke="#888" stroke-width="1"/>'
        )
        for label in circle.entries:
            x = cx + circle.radius * math.cos(label.rad)
            y = cy + circle.radius * math.sin(label.rad)
            parts.append(
                f'<text x="{sx(x):.2f}" y="{sy(y):.2f}" font-size="11" text-anchor="middle" '
                f'dominant-baseline="middle">{_escape(label.text)}</text>'
            )
    parts.append("</svg>")
    return "\n".join(parts) + "\n"


def _escape(text: str) -> str:
    return text.replace("&", "&amp;").replace("<", "&lt;").replace(">", "&gt;")
