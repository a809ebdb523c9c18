"""Scene generation and scene-file input/output.

Two deterministic presets stand in for desk-scale test environments: a
regular lattice in the front hemisphere (workbench-style) and a band of
objects scattered all around the spawn point (pipe-hall-style).
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from random import Random

from .geometry import Vec3, ViewState
from .layout import Label
from .words import ALL_LETTERS, WORDS_BY_LETTER

SCENE_FORMAT_VERSION = 1


@dataclass(frozen=True)
class SceneObject:
    id: str
    name: str
    position: Vec3


@dataclass(frozen=True)
class Scene:
    objects: tuple[SceneObject, ...]
    spawn: ViewState

    def object_map(self) -> dict[str, Vec3]:
        return {obj.id: obj.position for obj in self.objects}

    def get(self, object_id: str) -> SceneObject:
        for obj in self.objects:
            if obj.id == object_id:
                return obj
        raise KeyError(object_id)


DEFAULT_SPAWN = ViewState(
    viewpoint=(0.0, 0.0, 0.0),
    view_dir=(0.0, 0.0, -1.0),
    up=(0.0, 1.0, 0.0),
    gaze=(0.0, 0.0),
)


def _pick_names(rng: Random, count: int, letters: str | None) -> list[str]:
    pool = letters if letters else ALL_LETTERS
    names = []
    for _ in range(count):
        letter = pool[rng.randrange(len(pool))]
        options = WORDS_BY_LETTER[letter]
        names.append(options[rng.randrange(len(options))])
    return names


def generate_scene(
    seed: int,
    n_objects: int,
    preset: str = "grid",
    letters: str | None = None,
) -> Scene:
    """Deterministic scene for the given seed.

    ``grid`` lays objects on a regular lattice on a wall three units ahead
    (a single object sits exactly on the view axis); ``scatter`` spreads
    them uniformly on a band surrounding the spawn point.  ``letters``
    restricts the initial letters used for object names, which is how tests
    stress many same-initial labels.
    """
    if n_objects < 1:
        raise ValueError("n_objects must be at least 1")
    if preset not in ("grid", "scatter"):
        raise ValueError(f"unknown preset {preset!r}")
    rng = Random(seed)
    names = _pick_names(rng, n_objects, letters)
    objects: list[SceneObject] = []

    if preset == "grid":
        cols = min(n_objects, max(1, math.ceil(math.sqrt(2.0 * n_objects))))
        rows = max(1, math.ceil(n_objects / cols))
        for i in range(n_objects):
            r, c = divmod(i, cols)
            x = 0.0 if cols == 1 else -2.4 + 4.8 * c / (cols - 1)
            y = 0.0 if rows == 1 else 1.2 - 2.4 * r / (rows - 1)
            objects.append(SceneObject(f"obj_{i:03d}", names[i], (x, y, -3.0)))
    else:
        for i in range(n_objects):
            azimuth = rng.uniform(0.0, 2.0 * math.pi)
            radius = rng.uniform(2.5, 5.0)
            height = rng.uniform(-1.0, 1.5)
            pos = (radius * math.sin(azimuth), height, -radius * math.cos(azimuth))
            objects.append(SceneObject(f"obj_{i:03d}", names[i], pos))

    return Scene(objects=tuple(objects), spawn=DEFAULT_SPAWN)


def labels_for(scene: Scene) -> list[Label]:
    """Fresh label instances, one per scene object."""
    return [Label(id=f"lab_{obj.id}", text=obj.name, anchor_id=obj.id) for obj in scene.objects]


# --------------------------------------------------------------------------
# scene files


def scene_to_dict(scene: Scene) -> dict:
    return {
        "v": SCENE_FORMAT_VERSION,
        "objects": [
            {"id": obj.id, "name": obj.name, "position": list(obj.position)} for obj in scene.objects
        ],
        "spawn": {
            "viewpoint": list(scene.spawn.viewpoint),
            "view_dir": list(scene.spawn.view_dir),
            "up": list(scene.spawn.up),
        },
    }


def scene_from_dict(data: dict) -> Scene:
    try:
        objects = tuple(
            SceneObject(str(o["id"]), str(o["name"]), tuple(float(x) for x in o["position"]))
            for o in data["objects"]
        )
        spawn_data = data.get("spawn", {})
        spawn = ViewState(
            viewpoint=tuple(float(x) for x in spawn_data.get("viewpoint", (0.0, 0.0, 0.0))),
            view_dir=tuple(float(x) for x in spawn_data.get("view_dir", (0.0, 0.0, -1.0))),
            up=tuple(float(x) for x in spawn_data.get("up", (0.0, 1.0, 0.0))),
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise ValueError(f"malformed scene document: {exc}") from exc
    if not objects:
        raise ValueError("scene must contain at least one object")
    ids = [obj.id for obj in objects]
    if len(set(ids)) != len(ids):
        raise ValueError("scene object ids must be unique")
    return Scene(objects=objects, spawn=spawn)


def save_scene(scene: Scene, path: str | Path) -> None:
    Path(path).write_text(json.dumps(scene_to_dict(scene), indent=2, sort_keys=True) + "\n")


def load_scene(path: str | Path) -> Scene:
    return scene_from_dict(json.loads(Path(path).read_text()))
