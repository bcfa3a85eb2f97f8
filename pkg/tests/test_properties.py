"""Stand-alone property suites (each class runs independently)."""

import itertools
import random
from fractions import Fraction

from raydiagram.classifier import (
    DiagramClass,
    classify,
    is_elliptic,
    is_semi_elliptic,
    semi_elliptic_decomposition,
)
from raydiagram.classifier import _int_rows, _system_nonneg_nonzero  # noqa: test hooks
from raydiagram.feasibility import fm_feasible
from raydiagram.raygraph import RaySet, TYPE_II, components, distance_A, type_i
from raydiagram.catalog import enumerate_families
from conftest import rs


def int_raysets(max_n=4, max_entry=3, count=200, seed=0):
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, max_n)
        entries = {}
        for i in range(n):
            for j in range(n):
                if i != j and rng.random() < 0.6:
                    entries[(i, j)] = rng.randint(1, max_entry)
        out.append(RaySet.from_entries([TYPE_II] * n, entries))
    return out


class TestHeredity:
    """Every subset of an elliptic ray set is elliptic."""

    def test_catalog_elliptics(self):
        for spec, s, predicted in enumerate_families(5, 3):
            if predicted is not DiagramClass.ELLIPTIC or s.n > 5:
                continue
            assert is_elliptic(s)[0], str(spec)
            for size in range(1, s.n):
                for combo in itertools.combinations(range(s.n), size):
                    assert is_elliptic(s.restrict(combo))[0], (str(spec), combo)

    def test_random_elliptics(self):
        for s in int_raysets(max_n=5, count=300, seed=1):
            if not is_elliptic(s)[0]:
                continue
            for size in range(1, s.n):
                for combo in itertools.combinations(range(s.n), size):
                    assert is_elliptic(s.restrict(combo))[0]


class TestMonotonicity:
    """Raising an off-diagonal entry never turns non-elliptic into elliptic."""

    def test_random_bumps(self):
        rng = random.Random(2)
        for s in int_raysets(max_n=4, count=300, seed=3):
            if s.n < 2 or is_elliptic(s)[0]:
                continue
            i = rng.randrange(s.n)
            j = (i + 1 + rng.randrange(s.n - 1)) % s.n
            mat = [list(row) for row in s.m]
            mat[i][j] += rng.randint(1, 3)
            bumped = RaySet.from_matrix(mat)
            assert not is_elliptic(bumped)[0]

    def test_two_vertex_boundary(self):
        # the parabolic pair stays non-elliptic under every increase
        for a in range(2, 6):
            for b in range(2, 6):
                if a * b >= 4:
                    assert not is_elliptic(rs([[-2, a], [b, -2]]))[0]


class TestScalingInvariance:
    """Rescaling a vertex (its row and column, diagonal included) by a
    positive rational never changes the outcome in general mode."""

    def test_random_scalings(self):
        rng = random.Random(4)
        for s in int_raysets(max_n=4, count=120, seed=5):
            base = classify(s).label
            i = rng.randrange(s.n)
            lam = Fraction(rng.randint(1, 5), rng.randint(1, 5))
            mat = [list(row) for row in s.m]
            for j in range(s.n):
                mat[i][j] *= lam
            scaled_row = RaySet.from_matrix(mat, kinds=s.kinds, mode="general")
            assert classify(scaled_row).label is base
            mat = [list(row) for row in s.m]
            for j in range(s.n):
                mat[j][i] *= lam
            scaled_col = RaySet.from_matrix(mat, kinds=s.kinds, mode="general")
            assert classify(scaled_col).label is base


class TestTrichotomy:
    """A connected set with all proper subsets elliptic is exactly one of
    elliptic / connected parabolic / Lanner."""

    def test_exhaustive_small(self):
        allowed = {
            DiagramClass.ELLIPTIC,
            DiagramClass.CONNECTED_PARABOLIC,
            DiagramClass.LANNER,
        }
        for entries in itertools.product(range(4), repeat=6):
            mat = [[-2, entries[0], entries[1]],
                   [entries[2], -2, entries[3]],
                   [entries[4], entries[5], -2]]
            s = RaySet.from_matrix(mat)
            if len(components(s)) != 1:
                continue
            if not all(
                is_elliptic(s.restrict(c))[0]
                for size in (1, 2)
                for c in itertools.combinations(range(3), size)
            ):
                continue
            assert classify(s).label in allowed


class TestProposition224:
    """Ellipticity coincides with infeasibility of {b >= 0, b != 0, M b >= 0}."""

    def test_exhaustive_pairs(self):
        for a in range(0, 5):
            for b in range(0, 5):
                s = rs([[-2, a], [b, -2]])
                rows = _int_rows(s)
                feas = fm_feasible(_system_nonneg_nonzero(rows, 2), 2)
                assert is_elliptic(s)[0] == (feas is None)

    def test_random(self):
        for s in int_raysets(max_n=6, count=250, seed=6):
            rows = _int_rows(s)
            feas = fm_feasible(_system_nonneg_nonzero(rows, s.n), s.n)
            assert is_elliptic(s)[0] == (feas is None)


class TestSemiEllipticAgreement:
    """The feasibility test and the decomposition construction agree."""

    def test_exhaustive_three_vertices(self):
        for entries in itertools.product(range(3), repeat=6):
            mat = [[-2, entries[0], entries[1]],
                   [entries[2], -2, entries[3]],
                   [entries[4], entries[5], -2]]
            s = RaySet.from_matrix(mat)
            assert is_semi_elliptic(s) == (semi_elliptic_decomposition(s) is not None)

    def test_random(self):
        for s in int_raysets(max_n=5, count=300, seed=7):
            decomp = semi_elliptic_decomposition(s)
            assert is_semi_elliptic(s) == (decomp is not None)
            if decomp is not None:
                flat = [v for part in decomp.parabolic_parts for v in part]
                flat += list(decomp.elliptic_part)
                assert sorted(flat) == list(range(s.n))


class TestRhoASymmetry:
    def test_exhaustive_small(self):
        for entries in itertools.product(range(3), repeat=6):
            mat = [[-2, entries[0], entries[1]],
                   [entries[2], -2, entries[3]],
                   [entries[4], entries[5], -2]]
            s = RaySet.from_matrix(mat)
            for i in range(3):
                for j in range(3):
                    assert distance_A(s, i, j) == distance_A(s, j, i)

    def test_with_blacks(self):
        rng = random.Random(8)
        for _ in range(150):
            n = rng.randint(2, 5)
            kinds = [type_i(rng.randint(1, 3)) if rng.random() < 0.3 else TYPE_II
                     for _ in range(n)]
            entries = {}
            for i in range(n):
                for j in range(n):
                    if i != j and rng.random() < 0.5:
                        entries[(i, j)] = rng.randint(1, 3)
            s = RaySet.from_entries(kinds, entries)
            for i in range(n):
                for j in range(n):
                    assert distance_A(s, i, j) == distance_A(s, j, i)
