import math
import time
from fractions import Fraction

import pytest

from unitdist.constructions import (
    CONSTRUCTION_IDS,
    FIXTURES,
    UnknownConstructionError,
    build,
    build_j,
    build_s_a,
    build_t,
    g_rotations,
    s_point_table,
    v_directions,
)
from unitdist.field import FieldElement
from unitdist.geometry import Composition, Point, ReflectX, dist2, double_arcsin_rotation
from unitdist.graph import stats, transform

R3 = FieldElement.radical(3)
R11 = FieldElement.radical(11)
R33 = FieldElement.radical(33)


@pytest.mark.parametrize("name", [n for n in FIXTURES if n != "N"])
def test_fixture_counts(name):
    t = time.perf_counter()
    build.cache_clear()
    s = stats(build(name)).as_dict()
    assert time.perf_counter() - t < 10
    for key, value in FIXTURES[name].items():
        assert s[key] == value, (name, key)


@pytest.mark.slow
def test_fixture_n():
    assert build("N").n == 20425


def test_fixture_values_are_the_published_ones():
    published = {"H": 7, "T": 9, "U": 15, "J": 31, "K": 61, "L": 121, "V": 31, "W": 301,
                 "M": 1345, "S_A": 397, "G": 1581, "N": 20425}
    assert {k: v["vertices"] for k, v in FIXTURES.items()} == published
    assert FIXTURES["H"]["edges"] == 12
    assert FIXTURES["U"]["spindles"] == 3
    assert FIXTURES["V"]["max_degree"] == 30


def test_moser_spindle():
    s = stats(build("MOSER"))
    assert (s.vertices, s.edges, s.spindles) == (7, 11, 1)


def test_j_annotations():
    j = build("J")
    centre = j.vertices[j.annotations["centre"][0]]
    assert centre == Point.of(0, 0)
    linking = [j.vertices[i] for i in j.annotations["linking"]]
    assert len(linking) == 6
    for p in linking:
        assert dist2(p, centre) == 4
    assert linking[0] == Point.of(2, 0)
    assert linking[1].y.sign() < 0  # clockwise from (2, 0)
    assert j.vertices[j.annotations["A"][0]] == Point.of(-2, 0)
    assert j.vertices[j.annotations["B"][0]] == Point.of(2, 0)


def test_k_linking_vertices_meet_at_unit_distance():
    k = build("K")
    first = [k.vertices[i] for i in k.annotations["linking"]]
    second = [k.vertices[i] for i in k.annotations["linking'"]]
    for p, q in zip(first, second):
        assert dist2(p, q) == 1


def test_l_b_and_b_prime_at_unit_distance():
    l = build("L")
    b, b_prime, a = (l.vertices[l.annotations[name][0]] for name in ("B", "B'", "A"))
    assert b == Point.of(2, 0)
    assert a == Point.of(-2, 0)
    assert b_prime != b
    assert dist2(b, b_prime) == 1
    assert dist2(a, b_prime) == 16


def test_t_coordinates_solve_the_constraints():
    t = build_t()
    tip = t.vertices[t.annotations["tip"][0]]
    y, z = (t.vertices[i] for i in t.annotations["base"])
    p, q = (t.vertices[i] for i in t.annotations["PQ"])
    assert tip == Point(FieldElement.from_rational(0), R11 / 2)
    assert y.y.is_zero() and z.y.is_zero() and p.y.is_zero() and q.y.is_zero()
    assert dist2(y, z) == 1
    assert dist2(tip, y) == dist2(tip, z) == 3
    assert dist2(tip, p) == dist2(tip, q) == dist2(p, q)
    assert p == Point(-(R33 / 6), FieldElement.from_rational(0))


def test_v_directions_distinct_unit_vectors():
    dirs = v_directions()
    assert len(dirs) == 30 and len(set(dirs)) == 30
    for d in dirs:
        assert d.norm2() == 1
    angles = sorted(math.atan2(float(d.y), float(d.x)) % (2 * math.pi) for d in dirs)
    tilt = math.asin(1 / math.sqrt(12))
    expected = sorted((i * math.pi / 3 + j * tilt) % (2 * math.pi) for i in range(6) for j in range(-2, 3))
    assert max(abs(a - b) for a, b in zip(angles, expected)) < 1e-12


def test_m_initialising_is_central_h():
    m = build("M")
    init = [m.vertices[i] for i in m.annotations["initialising"]]
    assert init[0] == Point.of(0, 0)
    assert all(dist2(p, init[0]) == 1 for p in init[1:])


def test_s_point_table_transcription():
    table = s_point_table()
    assert len(table) == 39
    assert len(set(table)) == 39
    assert table[0] == Point.of(0, 0)
    assert Point((R33 - 3) / 6, FieldElement.from_rational(0)) in table
    assert Point((R33 + 13) / 12, (R11 - R3) / 12) in table
    # 1/√12 and 1/√3 are written in the basis as √3/6 and √3/3
    assert Point.of(Fraction(1, 2), 0) + Point(FieldElement.from_rational(0), R3 / 6) in table


def test_s_a_and_its_rotation_are_mirror_images():
    """S_A ∪ S_b is symmetric about the line through the origin at angle arcsin(1/4)."""
    s_a = build_s_a()
    rot = double_arcsin_rotation(Fraction(1, 4))
    s_b = transform(s_a, rot)
    mirror = Composition((rot, ReflectX()))
    both = s_a.vertex_set() | s_b.vertex_set()
    assert {mirror(p) for p in both} == both
    assert {mirror(p) for p in s_a.vertices} == s_b.vertex_set()


def test_g_halves_are_congruent():
    ra, rb = g_rotations()
    for r in (ra, rb):
        assert r.centre == Point.of(-2, 0)
        assert r.sin.sign() > 0
    assert ra.cos == -rb.cos and ra.sin == rb.sin
    y = build("Y")
    g = build("G")
    assert y.n == 791
    assert g.n == 1581
    for r in (ra, rb):
        img = transform(y, r).vertex_set()
        assert img <= g.vertex_set()


def test_determinism():
    for name in ("J", "U", "S_A"):
        first = build(name).dumps()
        build.cache_clear()
        assert build(name).dumps() == first


def test_ids_and_unknown():
    assert set(CONSTRUCTION_IDS) == set(FIXTURES) | {"Y", "MOSER"}
    with pytest.raises(UnknownConstructionError):
        build("Q")
    assert build_j().n == 31
