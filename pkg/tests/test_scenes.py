import math

import pytest

from labelflight.geometry import dot3, sub3
from labelflight.scenes import (
    generate_scene,
    labels_for,
    load_scene,
    save_scene,
    scene_from_dict,
    scene_to_dict,
)


class TestGenerateScene:
    def test_single_grid_object_on_view_axis(self):
        scene = generate_scene(0, 1, "grid")
        obj = scene.objects[0]
        assert obj.position[0] == 0.0 and obj.position[1] == 0.0
        assert dot3(sub3(obj.position, scene.spawn.viewpoint), scene.spawn.view_dir) > 0

    def test_same_seed_identical(self):
        a = generate_scene(42, 30, "scatter")
        b = generate_scene(42, 30, "scatter")
        assert a == b

    def test_different_seed_differs(self):
        a = generate_scene(1, 30, "scatter")
        b = generate_scene(2, 30, "scatter")
        assert a != b

    def test_grid_objects_front_hemisphere_unique_ids(self):
        scene = generate_scene(0, 90, "grid")
        assert len({o.id for o in scene.objects}) == 90
        for obj in scene.objects:
            assert dot3(sub3(obj.position, scene.spawn.viewpoint), scene.spawn.view_dir) > 0

    def test_scatter_band_geometry(self):
        scene = generate_scene(7, 60, "scatter")
        for obj in scene.objects:
            lateral = math.hypot(obj.position[0], obj.position[2])
            assert 2.5 - 1e-9 <= lateral <= 5.0 + 1e-9
            assert -1.0 - 1e-9 <= obj.position[1] <= 1.5 + 1e-9

    def test_scatter_covers_back_hemisphere(self):
        scene = generate_scene(3, 60, "scatter")
        behind = sum(1 for o in scene.objects if dot3(sub3(o.position, scene.spawn.viewpoint), scene.spawn.view_dir) <= 0)
        assert behind > 10

    def test_letter_restriction(self):
        scene = generate_scene(5, 40, "grid", letters="s")
        assert all(o.name[0] == "s" for o in scene.objects)

    def test_rejects_bad_input(self):
        with pytest.raises(ValueError):
            generate_scene(0, 0, "grid")
        with pytest.raises(ValueError):
            generate_scene(0, 5, "sphere")

    def test_labels_for(self):
        scene = generate_scene(0, 8, "grid")
        labels = labels_for(scene)
        assert len(labels) == 8
        assert {l.anchor_id for l in labels} == {o.id for o in scene.objects}


class TestWordList:
    def test_size_and_coverage(self):
        from labelflight.words import ALL_LETTERS, WORDS, WORDS_BY_LETTER

        assert len(WORDS) >= 500
        assert len(WORDS) == len(set(WORDS))
        assert ALL_LETTERS == "abcdefghijklmnopqrstuvwxyz"
        assert all(word[0] == letter for letter, words in WORDS_BY_LETTER.items() for word in words)


class TestSceneFiles:
    def test_round_trip(self, tmp_path):
        scene = generate_scene(11, 25, "scatter")
        path = tmp_path / "scene.json"
        save_scene(scene, path)
        assert load_scene(path) == scene

    def test_dict_round_trip(self):
        scene = generate_scene(2, 10, "grid")
        assert scene_from_dict(scene_to_dict(scene)) == scene

    def test_versioned(self):
        doc = scene_to_dict(generate_scene(0, 3, "grid"))
        assert doc["v"] == 1

    def test_rejects_malformed(self):
        with pytest.raises(ValueError):
            scene_from_dict({"objects": [{"id": "a"}]})
        with pytest.raises(ValueError):
            scene_from_dict({"objects": []})

    def test_rejects_duplicate_ids(self):
        doc = scene_to_dict(generate_scene(0, 3, "grid"))
        doc["objects"][1]["id"] = doc["objects"][0]["id"]
        with pytest.raises(ValueError):
            scene_from_dict(doc)

    def test_deterministic_serialization(self, tmp_path):
        scene = generate_scene(9, 15, "scatter")
        p1, p2 = tmp_path / "a.json", tmp_path / "b.json"
        save_scene(scene, p1)
        save_scene(scene, p2)
        assert p1.read_bytes() == p2.read_bytes()
