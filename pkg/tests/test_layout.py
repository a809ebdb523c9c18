import math
from random import Random

import pytest

from support import check_layout_invariants, circle_gaps_ccw, cyclically_sorted, exhaustive_max_sorted

from labelflight.config import EngineConfig
from labelflight.geometry import TAU, ViewState, wrap_radian
from labelflight.layout import (
    CircleLayout,
    EmptyLabelSet,
    Label,
    RadianRange,
    UnresolvedAnchor,
    build_first_level,
    build_second_level,
    centered_range,
    init_label_attrs,
    insert_label,
    max_sorted_subseq,
    range_width,
    relax,
)

CFG = EngineConfig()

VIEW = ViewState(
    viewpoint=(0.0, 0.0, 0.0),
    view_dir=(0.0, 0.0, -1.0),
    up=(0.0, 1.0, 0.0),
    gaze=(0.0, 0.0),
)


def make_label(text, rad_p, ran_width=None, label_id=None, dis=None):
    """Label with hand-set radians, bypassing scene projection."""
    if dis is None:
        # Invert the width law so ran has exactly the requested width.
        if ran_width is None:
            dis = 10.0
        else:
            frac = ran_width / (math.pi / 4.0)
            dis = 50.0 if frac >= 1.0 else -math.log(1.0 - frac)
    label = Label(id=label_id or f"lab_{text}", text=text, anchor_id="obj", rad=rad_p, rad_p=rad_p)
    label.dis = dis
    label.ran = centered_range(rad_p, dis)
    return label


class TestRangeWidth:
    def test_zero_distance(self):
        assert range_width(0.0) == 0.0

    def test_unit_distance(self):
        assert range_width(1.0) == pytest.approx((1.0 - math.exp(-1.0)) * math.pi / 4.0, abs=1e-12)

    def test_asymptote(self):
        assert abs(range_width(20.0) - math.pi / 4.0) < 1e-8

    def test_monotone_in_distance(self):
        rng = Random(1)
        for _ in range(300):
            a = rng.uniform(0, 10)
            b = rng.uniform(0, 10)
            if a == b:
                continue
            lo, hi = min(a, b), max(a, b)
            assert range_width(lo) < range_width(hi)

    def test_bounded(self):
        rng = Random(2)
        for _ in range(100):
            w = range_width(rng.uniform(0, 100))
            assert 0.0 <= w < math.pi / 4.0 + 1e-12


class TestRadianRange:
    def test_contains_wraparound(self):
        ran = RadianRange(-0.1, 0.1)  # crosses zero
        assert ran.contains(0.05)
        assert ran.contains(TAU - 0.05)
        assert not ran.contains(math.pi)

    def test_contains_tolerance(self):
        ran = RadianRange(1.0, 2.0)
        assert ran.contains(2.0 + 5e-10)
        assert not ran.contains(2.1)


class TestInitLabelAttrs:
    def test_anchor_on_gaze_ray(self):
        labels = [Label(id="l1", text="anvil", anchor_id="o1")]
        out = init_label_attrs(labels, {"o1": (0.0, 0.0, -3.0)}, VIEW, cfg=CFG)
        assert out[0].dis == pytest.approx(0.0, abs=1e-12)
        assert out[0].ran.width == pytest.approx(0.0, abs=1e-12)

    def test_direction_points_from_center_toward_anchor(self):
        labels = [Label(id="l1", text="anvil", anchor_id="o1")]
        # Anchor to the right of the axis: radian must be 0 (three o'clock).
        out = init_label_attrs(labels, {"o1": (2.0, 0.0, -3.0)}, VIEW, cfg=CFG)
        assert out[0].rad == pytest.approx(0.0, abs=1e-12)
        # Above the axis: radian pi/2.
        out = init_label_attrs(labels, {"o1": (0.0, 2.0, -3.0)}, VIEW, cfg=CFG)
        assert out[0].rad == pytest.approx(math.pi / 2, abs=1e-12)

    def test_behind_anchor_still_gets_direction(self):
        labels = [Label(id="l1", text="anvil", anchor_id="o1")]
        out = init_label_attrs(labels, {"o1": (-1.0, 0.0, 4.0)}, VIEW, cfg=CFG)
        assert out[0].rad == pytest.approx(math.pi, abs=1e-12)

    def test_dis_in_screen_units(self):
        # Lateral offset equal to plane_depth * tan(half FOV) is one unit.
        labels = [Label(id="l1", text="anvil", anchor_id="o1")]
        lateral = CFG.plane_depth * math.tan(CFG.half_angle)
        out = init_label_attrs(labels, {"o1": (lateral, 0.0, -7.0)}, VIEW, cfg=CFG)
        assert out[0].dis == pytest.approx(1.0, abs=1e-12)
        assert out[0].ran.width == pytest.approx(range_width(1.0), abs=1e-12)

    def test_unknown_anchor(self):
        labels = [Label(id="l1", text="anvil", anchor_id="missing")]
        with pytest.raises(UnresolvedAnchor):
            init_label_attrs(labels, {"o1": (0, 0, -3.0)}, VIEW, cfg=CFG)

    def test_rad_p_equals_rad_and_result_sorted(self):
        labels = [
            Label(id="l2", text="Bolt", anchor_id="o2"),
            Label(id="l1", text="anvil", anchor_id="o1"),
        ]
        out = init_label_attrs(labels, {"o1": (1, 0, -3.0), "o2": (0, 1, -3.0)}, VIEW, cfg=CFG)
        assert [l.text for l in out] == ["anvil", "Bolt"]
        assert all(l.rad == l.rad_p for l in out)


class TestBuildFirstLevel:
    def test_single_letter(self):
        layout = build_first_level([make_label("anvil", 0.0)])
        assert [(s.letter, s.radian) for s in layout.letters] == [("a", 0.0)]

    def test_four_letters_evenly_spaced(self):
        labels = [make_label(t, 0.0) for t in ("anvil", "bolt", "clamp", "dowel")]
        layout = build_first_level(labels)
        assert [s.letter for s in layout.letters] == ["a", "b", "c", "d"]
        assert [s.radian for s in layout.letters] == pytest.approx([0.0, math.pi / 2, math.pi, 3 * math.pi / 2])

    def test_dedupes_and_sorts(self):
        labels = [make_label(t, 0.0, label_id=f"x{i}") for i, t in enumerate(("bolt", "anvil", "bracket"))]
        layout = build_first_level(labels)
        assert [(s.letter, s.radian) for s in layout.letters] == [("a", 0.0), ("b", pytest.approx(math.pi))]

    def test_empty_raises(self):
        with pytest.raises(EmptyLabelSet):
            build_first_level([])

    def test_hit_regions(self):
        labels = [make_label(t, 0.0) for t in ("anvil", "bolt", "clamp", "dowel")]
        layout = build_first_level(labels)
        assert layout.hit((1.0, 0.0)) == "a"
        assert layout.hit((0.0, 0.95)) == "b"
        assert layout.hit((0.2, 0.0)) is None  # inside the ring band
        assert layout.hit((2.0, 0.0)) is None  # outside the band


class TestMaxSortedSubseq:
    def test_already_sorted_takes_all(self):
        scl = [make_label("a", 0.1), make_label("b", 0.5), make_label("c", 1.0)]
        selected, remaining = max_sorted_subseq(scl)
        assert [l.text for l in selected] == ["a", "b", "c"]
        assert remaining == []

    def test_fully_reversed_takes_one(self):
        # Reversed radians still wind once around the circle, so a cut can
        # rescue two of the three; a strictly linear reading keeps one.
        scl = [make_label("a", 1.0), make_label("b", 0.5), make_label("c", 0.1)]
        selected, _ = max_sorted_subseq(scl)
        assert len(selected) == exhaustive_max_sorted([1.0, 0.5, 0.1])

    def test_empty(self):
        assert max_sorted_subseq([]) == ([], [])

    def test_matches_exhaustive_oracle_on_random_instances(self):
        rng = Random(0)
        for _ in range(60):
            n = rng.randint(1, 10)
            texts = sorted(rng.choice("abcdefghij") + rng.choice("abcdefghij") for _ in range(n))
            scl = [make_label(t, rng.uniform(0, TAU), label_id=f"l{i:02d}") for i, t in enumerate(texts)]
            scl.sort(key=lambda l: l.sort_key)
            rads = [l.rad_p for l in scl]
            selected, remaining = max_sorted_subseq(scl)
            assert len(selected) == exhaustive_max_sorted(rads)
            assert len(selected) + len(remaining) == n
            assert {l.id for l in selected} | {l.id for l in remaining} == {l.id for l in scl}

    def test_selected_subsequence_is_cyclically_sorted(self):
        rng = Random(4)
        for _ in range(40):
            n = rng.randint(2, 12)
            scl = sorted(
                (make_label(rng.choice("abcde"), rng.uniform(0, TAU), label_id=f"l{i:02d}") for i in range(n)),
                key=lambda l: l.sort_key,
            )
            selected, _ = max_sorted_subseq(scl)
            circle = CircleLayout(index=0, radius=1.0, entries=selected)
            assert cyclically_sorted(circle)


class TestInsert:
    def test_insert_between_neighbors(self):
        circle = CircleLayout(index=0, radius=1.0, entries=[])
        a = make_label("a", 0.2, ran_width=0.7)
        c = make_label("c", 1.0, ran_width=0.7)
        circle.entries = [a, c]
        b = make_label("b", 0.6, ran_width=0.78)  # ran roughly [0.21, 0.99]
        b.ran = RadianRange(0.1, 1.1)
        assert insert_label(circle, b, CFG)
        assert [l.text for l in circle.entries] == ["a", "b", "c"]
        assert 0.2 < b.rad < 1.0
        assert b.ran.contains(b.rad)
        # Feasibility oracle: some grid radian strictly inside (0.2, 1.0)
        # within the range must exist, and the chosen one must be among them.
        grid = [0.2 + i * 1e-3 for i in range(1, 800) if 0.2 + i * 1e-3 < 1.0]
        feasible = [g for g in grid if b.ran.contains(g)]
        assert feasible
        assert any(abs(b.rad - g) < 1e-3 for g in feasible)

    def test_refused_when_neighbors_outside_range(self):
        circle = CircleLayout(index=0, radius=1.0, entries=[])
        a = make_label("a", 0.2, ran_width=0.7)
        c = make_label("c", 1.0, ran_width=0.7)
        circle.entries = [a, c]
        b = make_label("b", 2.15, ran_width=0.3)
        b.ran = RadianRange(2.0, 2.3)
        before = [(l.text, l.rad) for l in circle.entries]
        assert not insert_label(circle, b, CFG)
        assert [(l.text, l.rad) for l in circle.entries] == before
        assert b.circle_index is None

    def test_empty_circle_places_at_rad_p(self):
        circle = CircleLayout(index=0, radius=1.0, entries=[])
        b = make_label("b", 2.15, ran_width=0.3)
        assert insert_label(circle, b, CFG)
        assert b.rad == pytest.approx(wrap_radian(2.15))

    def test_conjunction_required(self):
        # Right neighbor inside the range, left outside: still refused.
        circle = CircleLayout(index=0, radius=1.0, entries=[])
        a = make_label("a", 5.0, ran_width=0.7)
        c = make_label("c", 1.0, ran_width=0.7)
        circle.entries = sorted([a, c], key=lambda l: l.sort_key)
        b = make_label("b", 0.9, ran_width=0.5)
        assert not insert_label(circle, b, CFG)

    def test_insert_keeps_cyclic_sortedness(self):
        rng = Random(8)
        for _ in range(50):
            n = rng.randint(1, 8)
            scl = sorted(
                (make_label(rng.choice("abcdefgh"), rng.uniform(0, TAU), label_id=f"l{i:02d}") for i in range(n + 1)),
                key=lambda l: l.sort_key,
            )
            seed, rest = max_sorted_subseq(scl)
            circle = CircleLayout(index=0, radius=1.0, entries=seed)
            for label in rest:
                insert_label(circle, label, CFG)
            assert cyclically_sorted(circle)


class TestRelax:
    def test_identical_radians_separate(self):
        a = make_label("a", 1.0, ran_width=0.78)
        b = make_label("b", 1.0, ran_width=0.78)
        circle = CircleLayout(index=0, radius=1.0, entries=[a, b])
        dropped = relax(circle, 0, 60, CFG)
        assert dropped == []
        need = CFG.required_gap(0)
        assert all(g >= need - 1e-9 for g in circle_gaps_ccw(circle))
        assert cyclically_sorted(circle)
        assert a.ran.contains(a.rad) and b.ran.contains(b.rad)

    def test_non_overlapping_circle_unchanged(self):
        a = make_label("a", 0.5, ran_width=0.7)
        b = make_label("b", 2.5, ran_width=0.7)
        c = make_label("c", 4.5, ran_width=0.7)
        circle = CircleLayout(index=0, radius=1.0, entries=[a, b, c])
        before = [(l.id, l.rad) for l in circle.entries]
        dropped = relax(circle, 0, 60, CFG)
        assert dropped == []
        assert [(l.id, l.rad) for l in circle.entries] == before

    def test_pinned_pileup_drops_all_but_one(self):
        labels = [make_label(t, 2.0, ran_width=0.0, label_id=f"l{t}") for t in "abcde"]
        circle = CircleLayout(index=0, radius=1.0, entries=list(labels))
        dropped = relax(circle, 0, 10, CFG)
        assert len(dropped) == 4
        assert len(circle.entries) == 1

    def test_overlap_predicate_is_the_oracle(self):
        rng = Random(12)
        for _ in range(30):
            n = rng.randint(2, 10)
            scl = sorted(
                (make_label(rng.choice("abcdef"), rng.uniform(0, TAU), ran_width=rng.uniform(0.3, 0.78), label_id=f"l{i:02d}") for i in range(n)),
                key=lambda l: l.sort_key,
            )
            seed, rest = max_sorted_subseq(scl)
            circle = CircleLayout(index=0, radius=1.0, entries=seed)
            for label in rest:
                insert_label(circle, label, CFG)
            relax(circle, 0, 60, CFG)
            need = CFG.required_gap(0)
            if len(circle.entries) >= 2:
                assert all(g >= need - 1e-9 for g in circle_gaps_ccw(circle))
            assert cyclically_sorted(circle)
            for label in circle.entries:
                assert label.ran.contains(label.rad, tol=1e-9)


class TestBuildSecondLevel:
    def _scene(self, rng, n):
        objects = {}
        labels = []
        for i in range(n):
            oid = f"o{i:03d}"
            angle = rng.uniform(0, TAU)
            radius = rng.uniform(0.5, 4.0)
            depth = rng.uniform(-5.0, 3.0)
            objects[oid] = (radius * math.cos(angle), radius * math.sin(angle), depth)
            labels.append(Label(id=f"l{i:03d}", text=rng.choice("st") + rng.choice("aeiou") + rng.choice("lmnrt"), anchor_id=oid))
        return labels, objects

    def test_single_label_single_circle(self):
        labels = [Label(id="l1", text="anvil", anchor_id="o1")]
        mcl = build_second_level(labels, {"o1": (1.0, 0.5, -2.0)}, VIEW, cfg=CFG)
        assert len(mcl.circles) == 1
        assert len(mcl.circles[0].entries) == 1
        assert mcl.circles[0].entries[0].rad == pytest.approx(mcl.circles[0].entries[0].rad_p)
        assert mcl.dropped == []

    def test_presorted_labels_fit_one_circle(self):
        labels = []
        objects = {}
        for i, t in enumerate(("ant", "bee", "cat", "dog", "elk", "fox")):
            angle = i * 1.0
            oid = f"o{i}"
            objects[oid] = (4.0 * math.cos(angle), 4.0 * math.sin(angle), -2.0)
            labels.append(Label(id=f"l{i}", text=t, anchor_id=oid))
        mcl = build_second_level(labels, objects, VIEW, cfg=CFG)
        assert len(mcl.circles) == 1
        assert mcl.dropped == []

    def test_invariants_over_seeded_instances(self):
        for seed in range(100):
            rng = Random(seed)
            labels, objects = self._scene(rng, 30)
            inputs = list(labels)
            mcl = build_second_level(labels, objects, VIEW, cfg=CFG)
            problems = check_layout_invariants(mcl, inputs, CFG)
            assert problems == [], f"seed {seed}: {problems}"

    def test_determinism(self):
        rng1, rng2 = Random(77), Random(77)
        labels1, objects1 = self._scene(rng1, 25)
        labels2, objects2 = self._scene(rng2, 25)
        m1 = build_second_level(labels1, objects1, VIEW, cfg=CFG)
        m2 = build_second_level(labels2, objects2, VIEW, cfg=CFG)
        snap1 = [(c.index, [(l.id, l.rad) for l in c.entries]) for c in m1.circles]
        snap2 = [(c.index, [(l.id, l.rad) for l in c.entries]) for c in m2.circles]
        assert snap1 == snap2
        assert [l.id for l in m1.dropped] == [l.id for l in m2.dropped]

    def test_circle_budget_overflow_goes_to_dropped(self):
        rng = Random(5)
        labels, objects = self._scene(rng, 40)
        inputs = list(labels)
        mcl = build_second_level(labels, objects, VIEW, max_circles=1, cfg=CFG)
        assert len(mcl.circles) == 1
        assert len(mcl.placed()) + len(mcl.dropped) == len(inputs)
        assert mcl.dropped  # 40 labels cannot fit one circle
