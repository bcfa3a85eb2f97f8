from fractions import Fraction

import pytest

from raydiagram.classifier import (
    DiagramClass,
    PreconditionError,
    classify,
    is_connected_parabolic,
    is_elliptic,
    is_lanner,
    is_parabolic,
    is_quasi_lanner,
    is_semi_elliptic,
    minimal_non_semi_elliptic_check,
    oracle_classify,
    semi_elliptic_decomposition,
)
from raydiagram.raygraph import RaySet, TYPE_II
from conftest import chain, rs

E = DiagramClass


class TestElliptic:
    def test_singleton(self):
        ok, w = is_elliptic(rs([[-2]]))
        assert ok and w.coefficients == (1,)
        assert w.signs == ("<0",)

    def test_a2(self, a2):
        ok, w = is_elliptic(a2)
        assert ok
        assert all(s == "<0" for s in w.signs)

    def test_parabolic_pair_not_elliptic(self, at1_22):
        assert not is_elliptic(at1_22)[0]

    def test_black_pair(self):
        assert is_elliptic(rs([[-3, 2], [2, -2]]))[0]  # 4 < 6

    def test_witness_normalized_min_one(self):
        _, w = is_elliptic(chain(3))
        assert min(w.coefficients) == 1

    def test_rejects_dotted(self):
        s = RaySet.from_entries([TYPE_II] * 2, {}, dotted=[(0, 1)])
        with pytest.raises(PreconditionError):
            is_elliptic(s)

    def test_witness_is_strict_certificate(self):
        s = chain(5)
        _, w = is_elliptic(s)
        for i in range(5):
            assert sum(s.m[i][j] * w.coefficients[j] for j in range(5)) < 0


class TestConnectedParabolic:
    def test_at1_kernel(self):
        ok, w = is_connected_parabolic(rs([[-2, 1], [4, -2]]))
        assert ok
        # stated form (2, b) = (2, 4), normalized to minimum 1
        assert w.coefficients == (1, 2)

    def test_a2_cycle_kernel(self):
        s = rs([[-2, 1, 1], [1, -2, 1], [1, 1, -2]])
        ok, w = is_connected_parabolic(s)
        assert ok and w.coefficients == (1, 1, 1)

    def test_elliptic_is_not_parabolic(self, a2):
        assert not is_connected_parabolic(a2)[0]

    def test_disconnected_rejected(self):
        two = rs([[-2, 2, 0, 0], [2, -2, 0, 0], [0, 0, -2, 2], [0, 0, 2, -2]])
        assert not is_connected_parabolic(two)[0]
        assert is_parabolic(two)

    def test_parabolic_needs_every_component_parabolic(self, a2):
        mixed = rs([[-2, 2, 0, 0], [2, -2, 0, 0], [0, 0, -2, 1], [0, 0, 1, -2]])
        assert not is_parabolic(mixed)


class TestLanner:
    def test_two_vertex(self, lanner2):
        ok, w = is_lanner(lanner2)
        assert ok
        assert ">0" in w.signs and "<0" not in w.signs

    def test_parabolic_not_lanner(self, at1_22):
        assert not is_lanner(at1_22)[0]

    def test_parabolic_boundary_black(self):
        assert not is_lanner(rs([[-1, 1], [2, -2]]))[0]

    def test_quasi_subsumes_lanner(self, lanner2):
        assert is_quasi_lanner(lanner2)

    def test_quasi_with_parabolic_subset(self):
        # black(-1) + two whites, ab = 2 = kn/(n-1): the black pair is parabolic
        s = rs([[-1, 1, 0], [2, -2, 1], [0, 1, -2]])
        assert not is_lanner(s)[0]
        assert is_quasi_lanner(s)

    def test_elliptic_not_quasi(self, a2):
        assert not is_quasi_lanner(a2)


class TestSemiElliptic:
    def test_elliptic_is_semi(self, a2):
        assert is_semi_elliptic(a2)

    def test_affine_e8_is_semi(self):
        from raydiagram.catalog import FamilySpec, build_family

        assert is_semi_elliptic(build_family(FamilySpec.make("Et8")))

    def test_lanner_not_semi(self, lanner2):
        assert not is_semi_elliptic(lanner2)

    def test_decomposition_elliptic_whole(self, a2):
        d = semi_elliptic_decomposition(a2)
        assert d.parabolic_parts == () and d.elliptic_part == (0, 1)

    def test_decomposition_block_plus_vertex(self):
        # parabolic pair with an arrow out to an elliptic singleton
        s = rs([[-2, 2, 1], [2, -2, 0], [0, 0, -2]])
        d = semi_elliptic_decomposition(s)
        assert d.parabolic_parts == ((0, 1),)
        assert d.elliptic_part == (2,)

    def test_arrow_into_parabolic_part_fails(self):
        # same but the arrow points into the block: not semi-elliptic
        s = rs([[-2, 2, 0], [2, -2, 0], [1, 0, -2]])
        assert semi_elliptic_decomposition(s) is None
        assert not is_semi_elliptic(s)

    def test_lanner_decomposition_fails(self, lanner2):
        assert semi_elliptic_decomposition(lanner2) is None


class TestMinimalCheck:
    def test_lanner_two_vertex(self, lanner2):
        got = minimal_non_semi_elliptic_check(lanner2)
        assert got.precondition_ok and got.quasi_lanner and got.subset_structure_ok

    def test_five_vertex_quasi_with_parabolic_subset(self):
        from raydiagram.catalog import FamilySpec, build_family

        s = build_family(FamilySpec.make("TypeC5Q", t45=1, t54=2))
        got = minimal_non_semi_elliptic_check(s)
        assert got.precondition_ok and got.quasi_lanner and got.subset_structure_ok

    def test_elliptic_precondition_error(self, a2):
        got = minimal_non_semi_elliptic_check(a2)
        assert not got.precondition_ok


class TestClassify:
    @pytest.mark.parametrize(
        "matrix,label",
        [
            ([[-2, 3], [1, -2]], E.ELLIPTIC),
            ([[-2, 1], [4, -2]], E.CONNECTED_PARABOLIC),
            ([[-2, 1], [5, -2]], E.LANNER),
            ([[-2]], E.ELLIPTIC),
        ],
    )
    def test_spec_examples(self, matrix, label):
        assert classify(rs(matrix)).label is label

    def test_parabolic_disconnected(self):
        two = rs([[-2, 2, 0, 0], [2, -2, 0, 0], [0, 0, -2, 2], [0, 0, 2, -2]])
        got = classify(two)
        assert got.label is E.PARABOLIC
        assert got.kernel.coefficients == (1, 1, 1, 1)

    def test_single_arrow_into_parabolic_pair_is_quasi(self):
        # all proper subsets elliptic or parabolic, and the kernel plus the
        # arrow row gives the strict witness
        got = classify(rs([[-2, 2, 0], [2, -2, 0], [1, 0, -2]]))
        assert got.label is E.QUASI_LANNER

    def test_not_semi_elliptic_reason(self):
        # contains a Lanner pair, so no subset condition can hold
        got = classify(rs([[-2, 1, 0], [5, -2, 0], [0, 0, -2]]))
        assert got.label is E.NOT_SEMI_ELLIPTIC
        assert got.witness is not None and got.reason

    def test_flags(self, lanner2, a2):
        assert not classify(lanner2).is_semi_elliptic
        assert classify(a2).is_semi_elliptic

    def test_general_mode_diagonals(self):
        s = RaySet.from_matrix(
            [[Fraction(-1, 2), Fraction(1, 3)], [Fraction(2, 5), -2]],
            kinds=[TYPE_II, TYPE_II],
            mode="general",
        )
        assert classify(s).label is E.ELLIPTIC


class TestOracle:
    def test_bound(self):
        with pytest.raises(Exception):
            oracle_classify(chain(9), bound=7)

    def test_agrees_on_two_by_two_grid(self):
        for a in range(7):
            for b in range(7):
                s = rs([[-2, a], [b, -2]])
                assert oracle_classify(s) is classify(s).label

    def test_agrees_on_e8_affine(self):
        from raydiagram.catalog import FamilySpec, build_family

        s = build_family(FamilySpec.make("Et6"))
        assert oracle_classify(s) is DiagramClass.CONNECTED_PARABOLIC
