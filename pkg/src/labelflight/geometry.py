"""Screen projection, plane projection, radian arithmetic, and gaze fitting.

Conventions used everywhere:

* world space is right-handed, vectors are plain ``(x, y, z)`` tuples;
* screen space is 2D with +x to the viewer's right and +y up, and 1.0 equals
  the on-screen radius of the central field of view;
* radians are measured counterclockwise from the three-o'clock direction and
  wrapped into ``[0, 2*pi)`` unless a function says otherwise.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

TAU = 2.0 * math.pi

Vec3 = tuple[float, float, float]
ScreenVec = tuple[float, float]


class GeometryError(ValueError):
    """Base class for geometric precondition failures."""


class BehindView(GeometryError):
    """Point lies on or behind the view plane; no forward projection exists."""


class DegenerateVector(GeometryError):
    """Vector is too short to carry a direction."""


# --------------------------------------------------------------------------
# small vector helpers


def add3(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] + b[0], a[1] + b[1], a[2] + b[2])


def sub3(a: Vec3, b: Vec3) -> Vec3:
    return (a[0] - b[0], a[1] - b[1], a[2] - b[2])


def mul3(a: Vec3, s: float) -> Vec3:
    return (a[0] * s, a[1] * s, a[2] * s)


def dot3(a: Vec3, b: Vec3) -> float:
    return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]


def cross3(a: Vec3, b: Vec3) -> Vec3:
    return (
        a[1] * b[2] - a[2] * b[1],
        a[2] * b[0] - a[0] * b[2],
        a[0] * b[1] - a[1] * b[0],
    )


def norm3(a: Vec3) -> float:
    return math.sqrt(dot3(a, a))


def unit3(a: Vec3) -> Vec3:
    n = norm3(a)
    if n <= 1e-12:
        raise DegenerateVector(f"cannot normalize near-zero vector {a!r}")
    return (a[0] / n, a[1] / n, a[2] / n)


def lerp3(a: Vec3, b: Vec3, t: float) -> Vec3:
    return (
        a[0] + (b[0] - a[0]) * t,
        a[1] + (b[1] - a[1]) * t,
        a[2] + (b[2] - a[2]) * t,
    )


def sub2(a: ScreenVec, b: ScreenVec) -> ScreenVec:
    return (a[0] - b[0], a[1] - b[1])


def norm2(a: ScreenVec) -> float:
    return math.hypot(a[0], a[1])


def unit2(a: ScreenVec) -> ScreenVec:
    n = norm2(a)
    if n <= 1e-12:
        raise DegenerateVector(f"cannot normalize near-zero vector {a!r}")
    return (a[0] / n, a[1] / n)


def dot2(a: ScreenVec, b: ScreenVec) -> float:
    return a[0] * b[0] + a[1] * b[1]


# --------------------------------------------------------------------------
# plane projection and view state


def project_to_plane(v: Vec3, plane_point: Vec3, normal: Vec3) -> Vec3:
    """Project vector ``v`` onto the plane with unit ``normal``.

    ``plane_point`` anchors the plane in space; a vector projection only
    needs the normal, so the point is accepted for interface symmetry.
    Total function: any input maps to ``v - (v . n) n``.
    """
    d = dot3(v, normal)
    return (v[0] - d * normal[0], v[1] - d * normal[1], v[2] - d * normal[2])


@dataclass(frozen=True)
class ViewState:
    """Viewpoint, orthonormal view basis, and the current gaze point.

    ``view_dir`` and ``up`` must be unit length and orthogonal (1e-9).  The
    gaze point lives in screen coordinates and is expected to stay inside the
    screen rectangle ``[-aspect, aspect] x [-1, 1]``; callers that accept raw
    input clamp before constructing.
    """

    viewpoint: Vec3
    view_dir: Vec3
    up: Vec3
    gaze: ScreenVec = (0.0, 0.0)

    def __post_init__(self) -> None:
        if abs(norm3(self.view_dir) - 1.0) > 1e-9:
            raise ValueError("view_dir must be unit length")
        if abs(norm3(self.up) - 1.0) > 1e-9:
            raise ValueError("up must be unit length")
        if abs(dot3(self.view_dir, self.up)) > 1e-9:
            raise ValueError("view_dir and up must be orthogonal")

    @property
    def right(self) -> Vec3:
        return cross3(self.view_dir, self.up)

    def with_gaze(self, gaze: ScreenVec) -> "ViewState":
        return ViewState(self.viewpoint, self.view_dir, self.up, gaze)


def world_to_screen(p: Vec3, view: ViewState, half_angle: float) -> ScreenVec:
    """Perspective-project world point ``p`` into screen units.

    The output is scaled so a ray deviating from the view direction by
    ``half_angle`` lands at distance 1.0 from the screen center.

    Raises:
        BehindView: when ``p`` is not strictly in front of the viewpoint.
    """
    q = sub3(p, view.viewpoint)
    depth = dot3(q, view.view_dir)
    if depth <= 0.0:
        raise BehindView(f"point {p!r} is behind the view plane")
    scale = depth * math.tan(half_angle)
    return (dot3(q, view.right) / scale, dot3(q, view.up) / scale)


def unproject(s: ScreenVec, view: ViewState, depth: float, half_angle: float) -> Vec3:
    """Inverse of :func:`world_to_screen` at a chosen forward ``depth``."""
    scale = depth * math.tan(half_angle)
    p = add3(view.viewpoint, mul3(view.view_dir, depth))
    p = add3(p, mul3(view.right, s[0] * scale))
    return add3(p, mul3(view.up, s[1] * scale))


def lateral_direction(p: Vec3, view: ViewState) -> ScreenVec | None:
    """Unit screen direction of ``p``'s offset from the view axis.

    Defined for any position, including points behind the viewer; returns
    None only when ``p`` sits on the view axis itself.
    """
    q = sub3(p, view.viewpoint)
    lat = (dot3(q, view.right), dot3(q, view.up))
    if norm2(lat) <= 1e-12:
        return None
    return unit2(lat)


def clamp_to_screen_edge(p: Vec3, view: ViewState, aspect: float) -> ScreenVec:
    """Screen-edge stand-in position for points that cannot be projected.

    Used by guidance when a flying label moves behind the viewer: the label
    is pinned to the screen-rectangle boundary along its lateral direction.
    A point exactly on the backward axis maps to the right edge.
    """
    d = lateral_direction(p, view)
    if d is None:
        d = (1.0, 0.0)
    sx = aspect / abs(d[0]) if abs(d[0]) > 1e-12 else math.inf
    sy = 1.0 / abs(d[1]) if abs(d[1]) > 1e-12 else math.inf
    s = min(sx, sy)
    return (d[0] * s, d[1] * s)


def screen_position(p: Vec3, view: ViewState, half_angle: float, aspect: float) -> tuple[ScreenVec, bool]:
    """Project ``p`` if it is in front, else clamp to the screen edge.

    Returns ``(position, in_front)``.
    """
    try:
        return world_to_screen(p, view, half_angle), True
    except BehindView:
        return clamp_to_screen_edge(p, view, aspect), False


def angular_position(p: Vec3, view: ViewState, half_angle: float) -> ScreenVec:
    """Equidistant angular mapping of ``p`` around the view axis.

    The radius is the angle between ``p``'s direction and the view axis in
    central-FOV units (1.0 on the FOV boundary, pi/half_angle directly
    behind), so the mapping is smooth over the whole sphere.  Guidance
    measures gaze and label motion in this frame: unlike a perspective
    projection it has no horizon to clamp at.
    """
    q = sub3(p, view.viewpoint)
    depth = dot3(q, view.view_dir)
    lat = (dot3(q, view.right), dot3(q, view.up))
    lat_norm = norm2(lat)
    angle = math.atan2(lat_norm, depth)
    if lat_norm <= 1e-12:
        return (angle / half_angle, 0.0)
    scale = angle / half_angle / lat_norm
    return (lat[0] * scale, lat[1] * scale)


# --------------------------------------------------------------------------
# radian arithmetic


def wrap_radian(a: float) -> float:
    """Wrap an angle into ``[0, 2*pi)``."""
    r = math.fmod(a, TAU)
    if r < 0.0:
        r += TAU
    return r if r < TAU else 0.0


def radian_of(v: ScreenVec) -> float:
    """Counterclockwise angle of ``v`` from the +x axis, in ``[0, 2*pi)``.

    Raises:
        DegenerateVector: when ``|v| <= 1e-12``.
    """
    if norm2(v) <= 1e-12:
        raise DegenerateVector(f"no radian for near-zero vector {v!r}")
    return wrap_radian(math.atan2(v[1], v[0]))


def ccw_delta(a: float, b: float) -> float:
    """Counterclockwise arc from angle ``a`` to angle ``b``, in ``[0, 2*pi)``."""
    return wrap_radian(b - a)


def angular_distance(a: float, b: float) -> float:
    """Shorter arc between two angles, in ``[0, pi]``."""
    d = wrap_radian(a - b)
    return min(d, TAU - d)


# --------------------------------------------------------------------------
# gaze traces


@dataclass
class GazeTrace:
    """Sliding window of timestamped gaze points.

    Samples older than ``window`` seconds before the latest one are evicted
    on insertion.  Timestamps must be strictly increasing.
    """

    window: float = 0.3
    samples: list[tuple[float, ScreenVec]] = field(default_factory=list)

    def add(self, t: float, point: ScreenVec) -> None:
        if self.samples and t <= self.samples[-1][0]:
            raise ValueError("gaze timestamps must be strictly increasing")
        self.samples.append((t, point))
        cutoff = t - self.window
        drop = 0
        while drop < len(self.samples) and self.samples[drop][0] < cutoff:
            drop += 1
        if drop:
            del self.samples[:drop]

    @property
    def latest(self) -> ScreenVec | None:
        return self.samples[-1][1] if self.samples else None

    def path_length(self) -> float:
        pts = [p for _, p in self.samples]
        return sum(norm2(sub2(b, a)) for a, b in zip(pts, pts[1:]))

    def clear(self) -> None:
        self.samples.clear()


def fit_gaze_direction(
    trace: GazeTrace,
    motion_threshold: float = 0.05,
    min_anisotropy: float = 8.0,
) -> ScreenVec | None:
    """Fit the gaze movement direction over the trace window.

    Total-least-squares line fit (principal axis of the sample scatter); the
    sign is chosen to agree with the first-to-last displacement.  Returns
    None when the windowed path is shorter than ``motion_threshold``, when
    the displacement is too small to orient the fit, or when the scatter is
    nearly isotropic (``min_anisotropy`` bounds the principal-to-minor
    eigenvalue ratio): tracker jitter random-walks enough path to pass a
    length test but has no direction worth reporting.
    """
    pts = [p for _, p in trace.samples]
    if len(pts) < 2:
        return None
    if trace.path_length() < motion_threshold:
        return None
    disp = sub2(pts[-1], pts[0])
    if norm2(disp) <= 1e-12:
        return None

    n = len(pts)
    cx = sum(p[0] for p in pts) / n
    cy = sum(p[1] for p in pts) / n
    sxx = sum((p[0] - cx) ** 2 for p in pts)
    syy = sum((p[1] - cy) ** 2 for p in pts)
    sxy = sum((p[0] - cx) * (p[1] - cy) for p in pts)
    # Eigenvalues of the 2x2 scatter matrix.
    mean = (sxx + syy) / 2.0
    half_gap = math.sqrt(((sxx - syy) / 2.0) ** 2 + sxy * sxy)
    lam_max = mean + half_gap
    lam_min = mean - half_gap
    if lam_max <= 0.0 or lam_max < min_anisotropy * max(lam_min, 1e-12):
        return None
    theta = 0.5 * math.atan2(2.0 * sxy, sxx - syy)
    direction = (math.cos(theta), math.sin(theta))
    if dot2(direction, disp) < 0.0:
        direction = (-direction[0], -direction[1])
    return direction
