"""Two-level circular label layout.

The first level is a ring of initial letters; the second level arranges the
labels sharing one initial on concentric circles so that going
counterclockwise around each circle reads in alphabetical order while every
label stays inside a sliding radian range derived from how far its anchor
object sits from the layout center.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .config import DEFAULT_CONFIG, EngineConfig
from .geometry import (
    TAU,
    ScreenVec,
    Vec3,
    ViewState,
    angular_distance,
    ccw_delta,
    dot3,
    radian_of,
    sub3,
    wrap_radian,
)


class LayoutError(ValueError):
    """Base class for layout failures."""


class EmptyLabelSet(LayoutError):
    """No labels were supplied where at least one is required."""


class UnresolvedAnchor(LayoutError):
    """A label references an object id that is not present in the scene."""


# --------------------------------------------------------------------------
# domain types


def range_width(dis: float) -> float:
    """Width of a label's sliding radian range for anchor distance ``dis``.

    Grows with distance and saturates at pi/4: a label far from the layout
    center may slide up and down the circle more than a nearby one.
    """
    return (1.0 - math.exp(-dis)) * math.pi / 4.0


@dataclass(frozen=True)
class RadianRange:
    """Closed interval of admissible radians, kept unwrapped (min <= max)."""

    min: float
    max: float

    @property
    def width(self) -> float:
        return self.max - self.min

    @property
    def center(self) -> float:
        return (self.min + self.max) / 2.0

    def representative(self, rad: float) -> float:
        """Shift ``rad`` by whole turns to the copy nearest the interval."""
        return rad + TAU * round((self.center - rad) / TAU)

    def contains(self, rad: float, tol: float = 1e-9) -> bool:
        r = self.representative(rad)
        return self.min - tol <= r <= self.max + tol


def centered_range(rad: float, dis: float) -> RadianRange:
    half = range_width(dis) / 2.0
    return RadianRange(rad - half, rad + half)


@dataclass
class Label:
    """A named marker tied to an anchor object.

    ``rad_p`` is the orientation-derived initial radian and never changes
    after initialization; ``rad`` is the current slot on the circle.
    """

    id: str
    text: str
    anchor_id: str
    dis: float = 0.0
    rad: float = 0.0
    rad_p: float = 0.0
    ran: RadianRange = RadianRange(0.0, 0.0)
    circle_index: int | None = None

    @property
    def sort_key(self) -> tuple[str, str]:
        return collation_key(self.text, self.id)


def collation_key(text: str, label_id: str = "") -> tuple[str, str]:
    """Case-insensitive code-point order, ties broken by label id."""
    return (text.lower(), label_id)


@dataclass
class CircleLayout:
    """One circle of the second level; entries stay in alphabetical order."""

    index: int
    radius: float
    entries: list[Label] = field(default_factory=list)

    def gaps(self) -> list[float]:
        """Counterclockwise arcs between consecutive entries (cyclic).

        ``gaps()[i]`` is the arc from ``entries[i]`` to ``entries[i+1]``;
        the last element closes the circle.  An exact radian tie counts as a
        zero gap rather than a full turn.
        """
        m = len(self.entries)
        if m < 2:
            return [TAU] * m
        out: list[float] = []
        span = 0.0
        for i in range(m - 1):
            d = ccw_delta(self.entries[i].rad, self.entries[i + 1].rad)
            if d > TAU - 1e-9:
                d = 0.0
            out.append(d)
            span += d
        out.append(max(0.0, TAU - span))
        return out


@dataclass
class MultiCircleLayout:
    """Second-level result: concentric circles plus the labels given up on."""

    center: ScreenVec
    circles: list[CircleLayout] = field(default_factory=list)
    dropped: list[Label] = field(default_factory=list)
    diagnostics: list[str] = field(default_factory=list)

    def placed(self) -> list[Label]:
        return [label for circle in self.circles for label in circle.entries]

    def label_position(self, label: Label, circle: CircleLayout) -> ScreenVec:
        return (
            self.center[0] + circle.radius * math.cos(label.rad),
            self.center[1] + circle.radius * math.sin(label.rad),
        )

    def find(self, label_id: str) -> tuple[Label, CircleLayout] | None:
        for circle in self.circles:
            for label in circle.entries:
                if label.id == label_id:
                    return label, circle
        return None


@dataclass(frozen=True)
class LetterSlot:
    letter: str
    radian: float


@dataclass
class FirstLevelLayout:
    """Ring of distinct initial letters, alphabetical and evenly spaced."""

    letters: list[LetterSlot]
    radius: float = 1.0
    band: tuple[float, float] = (0.85, 1.15)

    @property
    def slot_half_width(self) -> float:
        return math.pi / max(len(self.letters), 8)

    def position(self, letter: str) -> ScreenVec:
        for slot in self.letters:
            if slot.letter == letter:
                return (self.radius * math.cos(slot.radian), self.radius * math.sin(slot.radian))
        raise KeyError(letter)

    def hit(self, point: ScreenVec) -> str | None:
        """Letter whose wedge-shaped region contains ``point``, if any."""
        r = math.hypot(point[0], point[1])
        if not (self.band[0] <= r <= self.band[1]):
            return None
        angle = math.atan2(point[1], point[0])
        for slot in self.letters:
            if angular_distance(angle, slot.radian) <= self.slot_half_width:
                return slot.letter
        return None


# --------------------------------------------------------------------------
# operations


def build_first_level(labels: Iterable[Label], band: tuple[float, float] = (0.85, 1.15)) -> FirstLevelLayout:
    """Ring of the distinct initial letters present among ``labels``.

    Letters are placed counterclockwise in alphabetical order starting at
    the three-o'clock position, spaced ``2*pi / count`` apart.
    """
    initials = sorted({label.text[0].lower() for label in labels if label.text})
    if not initials:
        raise EmptyLabelSet("no labels to build a letter ring from")
    spacing = TAU / len(initials)
    slots = [LetterSlot(letter, wrap_radian(i * spacing)) for i, letter in enumerate(initials)]
    return FirstLevelLayout(letters=slots, band=band)


def init_label_attrs(
    labels: Iterable[Label],
    objects: Mapping[str, Vec3],
    view: ViewState,
    center: ScreenVec | None = None,
    cfg: EngineConfig = DEFAULT_CONFIG,
) -> list[Label]:
    """Initialize each label's distance, radians, and sliding range.

    The anchor offset is taken in the layout plane (the plane through the
    view axis at ``cfg.plane_depth``, normal to the view direction), so every
    anchor position gets a well-defined direction even when it is behind the
    viewer.  Offsets are measured from ``center`` (defaults to the gaze
    point) and expressed in screen units.

    Returns the labels sorted by collation order.
    """
    origin = center if center is not None else view.gaze
    scale = cfg.plane_depth * math.tan(cfg.half_angle)
    right = view.right
    for label in labels:
        try:
            anchor = objects[label.anchor_id]
        except KeyError:
            raise UnresolvedAnchor(f"label {label.id!r} references unknown object {label.anchor_id!r}") from None
        q = sub3(anchor, view.viewpoint)
        offset = (dot3(q, right) / scale - origin[0], dot3(q, view.up) / scale - origin[1])
        label.dis = math.hypot(offset[0], offset[1])
        label.rad = radian_of(offset) if label.dis > 1e-12 else 0.0
        label.rad_p = label.rad
        label.ran = centered_range(label.rad, label.dis)
        label.circle_index = None
    return sorted(labels, key=lambda l: l.sort_key)


def _nondecreasing_subseq_length(values: list[float]) -> int:
    # Patience-style O(n log n): tails[k] = smallest possible last value of a
    # non-decreasing subsequence of length k+1.
    from bisect import bisect_right

    tails: list[float] = []
    for v in values:
        i = bisect_right(tails, v)
        if i == len(tails):
            tails.append(v)
        else:
            tails[i] = v
    return len(tails)


def _nondecreasing_subseq_indices(values: list[float]) -> list[int]:
    # O(n^2) reconstruction, used once at the chosen cut.
    n = len(values)
    best = [1] * n
    prev = [-1] * n
    for i in range(n):
        for j in range(i):
            if values[j] <= values[i] and best[j] + 1 > best[i]:
                best[i] = best[j] + 1
                prev[i] = j
    length = max(best, default=0)
    end = next(i for i in range(n) if best[i] == length)
    chain: list[int] = []
    while end != -1:
        chain.append(end)
        end = prev[end]
    chain.reverse()
    return chain


def max_sorted_subseq(scl: list[Label]) -> tuple[list[Label], list[Label]]:
    """Largest subsequence that reads alphabetically while its initial
    radians run counterclockwise around the circle.

    ``scl`` must already be in collation order.  Because radians live on a
    circle, the non-decreasing test depends on where the circle is cut; every
    distinct initial radian is tried as a cut and the one yielding the
    longest subsequence wins (ties go to the smallest cut radian).

    Returns ``(selected, remaining)``, both in collation order.
    """
    if not scl:
        return [], []
    rads = [wrap_radian(label.rad_p) for label in scl]
    best_len = -1
    best_cut = 0.0
    for cut in sorted(set(rads)):
        unwrapped = [wrap_radian(r - cut) for r in rads]
        length = _nondecreasing_subseq_length(unwrapped)
        if length > best_len:
            best_len = length
            best_cut = cut
    unwrapped = [wrap_radian(r - best_cut) for r in rads]
    chosen = set(_nondecreasing_subseq_indices(unwrapped))
    selected = [label for i, label in enumerate(scl) if i in chosen]
    remaining = [label for i, label in enumerate(scl) if i not in chosen]
    return selected, remaining


def insert_label(circle: CircleLayout, label: Label, cfg: EngineConfig = DEFAULT_CONFIG) -> bool:
    """Try to slot ``label`` into ``circle`` between its alphabetical
    neighbors without breaking the counterclockwise order.

    The attempt is refused (returning False, with both arguments untouched)
    unless both neighbors' current radians fall inside the label's sliding
    range.  On success the label lands at the midpoint between the nearer
    neighbor's radian and the range endpoint closest to it, nudged into the
    open arc between the neighbors if that midpoint would fall outside.
    """
    entries = circle.entries
    m = len(entries)
    if m == 0:
        label.rad = wrap_radian(label.rad_p)
        label.circle_index = circle.index
        entries.append(label)
        return True

    keys = [entry.sort_key for entry in entries]
    pos = bisect_left(keys, label.sort_key)
    left = entries[(pos - 1) % m]
    right = entries[pos % m]

    if not (label.ran.contains(left.rad) and label.ran.contains(right.rad)):
        return False

    nearer = left if angular_distance(left.rad, label.rad_p) <= angular_distance(right.rad, label.rad_p) else right
    lo_end = wrap_radian(label.ran.min)
    hi_end = wrap_radian(label.ran.max)
    endpoint = lo_end if angular_distance(lo_end, nearer.rad) <= angular_distance(hi_end, nearer.rad) else hi_end
    near_rep = label.ran.representative(nearer.rad)
    end_rep = label.ran.representative(endpoint)
    candidate = wrap_radian((near_rep + end_rep) / 2.0)

    arc_start = left.rad
    arc = TAU if m == 1 else ccw_delta(left.rad, right.rad)
    if m > 1 and arc < 1e-12:
        return False

    offset = ccw_delta(arc_start, candidate)
    if not (0.0 < offset < arc):
        eps = min(1e-6, arc / 4.0)
        if eps <= 0.0:
            return False
        lo = wrap_radian(arc_start + eps)
        hi = wrap_radian(arc_start + arc - eps)
        ordered = sorted((lo, hi), key=lambda r: angular_distance(r, candidate))
        for clamped in ordered:
            if label.ran.contains(clamped):
                candidate = clamped
                break
        else:
            return False

    label.rad = candidate
    label.circle_index = circle.index
    entries.insert(pos, label)
    return True


def relax(circle: CircleLayout, k: int, n_it: int, cfg: EngineConfig = DEFAULT_CONFIG) -> list[Label]:
    """Spread overlapping neighbors apart along circle ``k``.

    Each pass walks the overlap array from both ends, nudging the members of
    an overlapping pair away from each other.  A nudge is capped by a
    per-circle step size, by the clearance to the next label on the far
    side, and by the label's own sliding range, so the alphabetical order is
    never broken.  Once ``n_it`` passes have run, the worst offender is
    removed after each further pass until nothing overlaps.

    Returns the removed labels.
    """
    need = cfg.required_gap(k)
    delta = cfg.min_separation(k)
    step_cap = math.pi / ((k + 1) * 72.0)
    entries = circle.entries
    dropped: list[Label] = []

    def slack_down(label: Label) -> float:
        return max(0.0, label.ran.representative(label.rad) - label.ran.min)

    def slack_up(label: Label) -> float:
        return max(0.0, label.ran.max - label.ran.representative(label.rad))

    def overlap_array() -> list[Label]:
        m = len(entries)
        if m < 2:
            return []
        gaps = circle.gaps()
        degree = [0.0] * m
        for i in range(m):
            if gaps[i] < need - 1e-12:
                amount = need - gaps[i]
                degree[i] += amount
                degree[(i + 1) % m] += amount
        order = sorted(
            (i for i in range(m) if degree[i] > 0.0),
            key=lambda i: (-degree[i], entries[i].sort_key),
        )
        return [entries[i] for i in order]

    def separate(i: int) -> None:
        # Overlapping pair is (entries[i], entries[i+1]); move the first one
        # clockwise and the second counterclockwise within their limits.
        m = len(entries)
        gaps = circle.gaps()
        lead = entries[i]
        trail = entries[(i + 1) % m]
        step_lead = max(0.0, min(step_cap, gaps[(i - 1) % m] - delta, slack_down(lead)))
        step_trail = max(0.0, min(step_cap, gaps[(i + 1) % m] - delta, slack_up(trail)))
        lead.rad = wrap_radian(lead.rad - step_lead)
        trail.rad = wrap_radian(trail.rad + step_trail)

    iteration = 0
    oa = overlap_array()
    while oa:
        for i in range(len(oa)):
            head = oa[i]
            if head in entries:
                idx = entries.index(head)
                if circle.gaps()[idx] < need - 1e-12:
                    separate(idx)
            tail = oa[len(oa) - 1 - i]
            if tail in entries:
                idx = entries.index(tail)
                if circle.gaps()[(idx - 1) % len(entries)] < need - 1e-12:
                    separate((idx - 1) % len(entries))
        oa = overlap_array()
        if oa and iteration > n_it:
            worst = oa[0]
            entries.remove(worst)
            worst.circle_index = None
            dropped.append(worst)
            oa = overlap_array()
        iteration += 1
    return dropped


def build_second_level(
    labels: Iterable[Label],
    objects: Mapping[str, Vec3],
    view: ViewState,
    center: ScreenVec | None = None,
    max_circles: int | None = None,
    relax_iters: int | None = None,
    cfg: EngineConfig = DEFAULT_CONFIG,
) -> MultiCircleLayout:
    """Arrange labels on up to ``max_circles`` concentric circles.

    Per circle: seed with the largest subsequence that is already sorted
    both ways, then sweep the remaining labels through insertion attempts,
    then relax overlaps apart.  Labels that cannot be placed after the last
    circle, or that relaxation had to remove, end up in ``dropped``.
    """
    n_circles = max_circles if max_circles is not None else cfg.max_circles
    n_it = relax_iters if relax_iters is not None else cfg.relax_iters
    scl = init_label_attrs(list(labels), objects, view, center=center, cfg=cfg)
    origin = center if center is not None else view.gaze
    mcl = MultiCircleLayout(center=origin)

    k = 0
    while scl and k < n_circles:
        circle = CircleLayout(index=k, radius=cfg.circle_radius(k))
        seed, scl = max_sorted_subseq(scl)
        for label in seed:
            label.rad = wrap_radian(label.rad_p)
            label.circle_index = k
        circle.entries = seed
        for label in list(scl):
            if insert_label(circle, label, cfg):
                scl.remove(label)
        for removed in relax(circle, k, n_it, cfg):
            mcl.dropped.append(removed)
            mcl.diagnostics.append(f"label {removed.id} dropped from circle {k}: unresolvable overlap")
        mcl.circles.append(circle)
        k += 1

    for label in scl:
        label.circle_index = None
        mcl.dropped.append(label)
        mcl.diagnostics.append(f"label {label.id} dropped: no slot within {n_circles} circles")
    return mcl
