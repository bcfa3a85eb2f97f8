import pytest

from raydiagram.catalog import FamilySpec, build_family
from raydiagram.raygraph import RaySet, TYPE_II, type_i
from raydiagram.shapes import (
    ShapeError,
    ShapeType,
    SpecialComponentType,
    full_graph_elliptic_max,
    is_chain,
    lint_special_structure,
    shape_type,
    special_components,
    special_rays,
)
from conftest import chain, rs


def fam(name, **params):
    return build_family(FamilySpec.make(name, **params))


class TestSpecialRays:
    def test_double_chain_has_none(self):
        assert special_rays(chain(2)) == set()

    def test_c2_both_special(self):
        s = rs([[-2, 0], [1, -2]])
        assert special_rays(s) == {0, 1}

    def test_dotted_pair_special(self):
        s = RaySet.from_entries([TYPE_II] * 2, {}, dotted=[(0, 1)])
        assert special_rays(s) == {0, 1}

    def test_black_special(self):
        s = rs([[-1, 1], [2, -2]])
        assert 0 in special_rays(s)


class TestSpecialComponents:
    def test_isolated_black(self):
        s = RaySet.from_entries([type_i(2), TYPE_II], {(0, 1): 1, (1, 0): 1})
        comps = special_components(s)
        assert [(c.type, c.vertices) for c in comps] == [
            (SpecialComponentType.A1, (0,))
        ]

    def test_b2_pair(self):
        s = RaySet.from_entries([TYPE_II] * 2, {}, dotted=[(0, 1)])
        assert special_components(s)[0].type is SpecialComponentType.B2

    def test_cn_hub(self):
        s = rs([[-2, 0, 0], [1, -2, 0], [1, 0, -2]])
        comp = special_components(s)[0]
        assert comp.type is SpecialComponentType.CN and comp.n == 3

    def test_t3_triangle(self):
        # singles 0->1, 1->2, double 0<->2
        s = rs([[-2, 1, 1], [0, -2, 1], [1, 0, -2]])
        assert special_components(s)[0].type is SpecialComponentType.T3

    def test_t3_prime(self):
        s = rs([[-2, 1, 0], [0, -2, 1], [1, 0, -2]])
        assert special_components(s)[0].type is SpecialComponentType.T3P

    def test_b2cn(self):
        # dotted pair (0,1), tail 2 with a single arrow into 1 and doubles to 0
        s = RaySet.from_entries(
            [TYPE_II] * 3,
            {(2, 1): 1, (2, 0): 1, (0, 2): 1},
            dotted=[(0, 1)],
        )
        comp = special_components(s)[0]
        assert comp.type is SpecialComponentType.B2CN and comp.n == 2

    def test_two_heads_is_a_valid_c3(self):
        s = rs([[-2, 1, 0], [0, -2, 0], [0, 1, -2]])
        comp = special_components(s)[0]
        assert comp.type is SpecialComponentType.CN and comp.n == 3

    def test_unmatched_pattern_reported(self):
        # a path of single arrows 0 -> 1 -> 2 without the triangle closure
        s = rs([[-2, 1, 0], [0, -2, 1], [0, 0, -2]])
        with pytest.raises(ShapeError):
            special_components(s)


class TestChains:
    def test_path_in_order(self):
        assert is_chain(chain(4), [0, 1, 2, 3])

    def test_path_out_of_order(self):
        assert not is_chain(chain(4), [0, 2, 1, 3])

    def test_branch_vertex_never_chains(self):
        d4 = fam("Dn", n=4)
        import itertools

        assert not any(
            is_chain(d4, perm) for perm in itertools.permutations(range(4))
        )


class TestShapeType:
    def test_affine_is_type_a(self):
        assert shape_type(fam("Et7"))[0] is ShapeType.A

    def test_black_chain_is_type_d(self):
        s = fam("AnDot", n=3, k=2, a=1, b=1)
        assert shape_type(s)[0] is ShapeType.D

    def test_table_c_core_is_type_c(self):
        s = fam("TypeC3", t21=1, t13=1, t31=1, t23=1, t32=1)
        assert shape_type(s)[0] is ShapeType.C

    def test_hub_with_chains_is_type_b(self):
        s = fam("TypeB", chains="A2:1,A1:2")
        assert shape_type(s)[0] is ShapeType.B

    def test_triangles(self):
        s = fam("Triangle", t12=1, t23=1, t13=1, t31=1)
        assert shape_type(s)[0] is ShapeType.E
        s = fam("SpecialTriangle", t12=1, t23=1, t31=1)
        assert shape_type(s)[0] is ShapeType.E_PRIME

    def test_single_vertex_is_type_a(self):
        assert shape_type(rs([[-2]]))[0] is ShapeType.A

    def test_black_branch_unclassified(self):
        # black with two neighbours cannot lead a chain
        s = rs([[-1, 1, 1], [1, -2, 0], [1, 0, -2]])
        assert shape_type(s)[0] is ShapeType.UNCLASSIFIED

    def test_requires_connected(self):
        with pytest.raises(ShapeError):
            shape_type(rs([[-2, 0], [0, -2]]))

    def test_debug_check_flags_bad_subsets(self):
        # a Lanner pair has elliptic singletons, so the debug check passes
        got, _ = shape_type(rs([[-2, 1], [5, -2]]), debug_check=True)
        assert got is ShapeType.A
        # a connected set with a parabolic proper subset fails it
        bad = rs([[-2, 2, 1], [2, -2, 1], [1, 1, -2]])
        with pytest.raises(ShapeError):
            shape_type(bad, debug_check=True)


class TestFullGraph:
    def test_weight_one(self):
        assert full_graph_elliptic_max(1) == 2

    def test_weight_three(self):
        assert full_graph_elliptic_max(3) == 2


class TestLints:
    def test_clean_catalog_instance(self):
        assert lint_special_structure(fam("TypeC5Q", t45=1, t54=2)) == []

    def test_single_arrow_attachment_flagged(self):
        # 0<->1 parabolic-ish pair, plus 2 -> 0 single arrow making {2,0} a C2;
        # vertex 1 then attaches to the head 0 only: 2.1.8 violation
        s = rs([[-2, 2, 0], [2, -2, 0], [1, 0, -2]])
        assert lint_special_structure(s)

    def test_two_rays_on_one_black_flagged(self):
        s = rs([[-1, 1, 1], [1, -2, 0], [1, 0, -2]])
        assert any("share special attachment" in w for w in lint_special_structure(s))
