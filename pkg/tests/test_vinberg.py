import itertools
from fractions import Fraction

import pytest

from raydiagram.vinberg import (
    PolytopeError,
    build_polytope,
    parse_polytope,
    vinberg_check,
)


def cube(weight=None):
    """The 3-cube; weight=w puts w on every oriented angle."""
    verts, coords = [], []
    for x in (0, 1):
        for y in (0, 1):
            for z in (0, 1):
                coords.append((x, y, z))
                verts.append((x, 2 + y, 4 + z))
    faces = []
    for axis in range(3):
        for val in (0, 1):
            sq = sorted(
                (i for i, c in enumerate(coords) if c[axis] == val),
                key=lambda i: tuple(coords[i][a] for a in range(3) if a != axis),
            )
            faces.append((sq[0], sq[1], sq[3], sq[2]))
    angles = []
    if weight is not None:
        for v, vf in enumerate(verts):
            for a, b in itertools.permutations(vf, 2):
                angles.append((v, a, b, weight))
    return build_polytope(3, 6, verts, angles, faces)


def simplex3():
    """The 3-simplex: 4 vertices, 4 triangular faces."""
    verts = [(1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2)]
    faces = [(1, 2, 3), (0, 2, 3), (0, 1, 3), (0, 1, 2)]
    return build_polytope(3, 4, verts, [], faces)


class TestChecker:
    def test_zero_weight_cube_fails_face_condition(self):
        got = vinberg_check(cube(), 0, 0)
        assert got.vertex_condition_ok
        assert not got.face_condition_ok and got.failed_face is not None

    def test_zero_weight_simplex_fails(self):
        # triangles need 5 - 3 = 2
        got = vinberg_check(simplex3(), 0, 0)
        assert not got.face_condition_ok

    def test_half_weight_cube_passes_at_c1(self):
        got = vinberg_check(cube(Fraction(1, 2)), 1, 0)
        assert got.vertex_condition_ok and got.face_condition_ok
        assert got.bound == 14  # n < 8C + 6

    def test_bound_at_c3(self):
        assert vinberg_check(cube(Fraction(1, 2)), 3, 0).bound == 30

    def test_vertex_condition_failure(self):
        got = vinberg_check(cube(Fraction(1, 2)), Fraction(1, 2), 0)
        assert not got.vertex_condition_ok and got.failed_vertex is not None

    def test_parity_bound_with_d(self):
        got = vinberg_check(cube(Fraction(1, 2)), 1, Fraction(3))
        # dim 3 is odd: 8C + 5 + (8C + 8D)/(n-1)
        assert got.bound == 8 + 5 + Fraction(8 + 24, 2)


class TestFormat:
    def test_round_trip(self):
        p = cube(Fraction(1, 2))
        lines = ["polytope v1", "dim 3", "facets 6"]
        for v, vf in enumerate(p.vertex_facets):
            lines.append(f"vertex {v} on {' '.join(map(str, vf))}")
        for v, a, b, w in p.angles:
            lines.append(f"angle {v} {a} {b} {w}")
        for cyc in p.faces2:
            lines.append("face2 " + " ".join(map(str, cyc)))
        again = parse_polytope("\n".join(lines))
        assert vinberg_check(again, 1, 0).bound == 14

    def test_rejects_wrong_facet_count(self):
        with pytest.raises(PolytopeError):
            build_polytope(3, 6, [(0, 1)], [], [])

    def test_rejects_bad_weight(self):
        verts = cube().vertex_facets
        with pytest.raises(PolytopeError):
            build_polytope(3, 6, verts, [(0, 0, 2, Fraction(1, 3))], [])

    def test_rejects_angle_off_vertex(self):
        verts = cube().vertex_facets
        with pytest.raises(PolytopeError):
            build_polytope(3, 6, verts, [(0, 1, 2, 1)], [])  # facet 1 not at v0

    def test_rejects_bad_face(self):
        verts = cube().vertex_facets
        with pytest.raises(PolytopeError):
            build_polytope(3, 6, verts, [], [(0, 1, 7, 6)])  # not a 2-face

    def test_parse_error_carries_line(self):
        with pytest.raises(PolytopeError) as err:
            parse_polytope("polytope v1\ndim x\n")
        assert err.value.line == 2
