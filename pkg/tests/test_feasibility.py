from fractions import Fraction

from hypothesis import given, settings, strategies as st

from raydiagram.feasibility import fm_feasible


def check(constraints, nvars, witness):
    for coeffs, const in constraints:
        assert sum(c * w for c, w in zip(coeffs, witness)) >= const


def test_simple_feasible():
    sys = [((1, 0), 1), ((0, 1), 1), ((-1, -1), -5)]
    w = fm_feasible(sys, 2)
    assert w is not None
    check(sys, 2, w)


def test_simple_infeasible():
    # x >= 3 and x <= 2
    assert fm_feasible([((1,), 3), ((-1,), -2)], 1) is None


def test_tight_equality():
    # x + y = 4 (as two inequalities), x >= 1, y >= 1
    sys = [((1, 1), 4), ((-1, -1), -4), ((1, 0), 1), ((0, 1), 1)]
    w = fm_feasible(sys, 2)
    assert w is not None and w[0] + w[1] == 4
    check(sys, 2, w)


def test_zero_variable_rows():
    assert fm_feasible([((0, 0), 1)], 2) is None
    assert fm_feasible([((0, 0), 0)], 2) is not None


def test_unbounded_direction():
    w = fm_feasible([((1, -1), 0)], 2)
    assert w is not None and w[0] >= w[1]


@st.composite
def random_systems(draw):
    nv = draw(st.integers(1, 4))
    rows = draw(st.integers(1, 6))
    sys = []
    for _ in range(rows):
        coeffs = tuple(draw(st.integers(-4, 4)) for _ in range(nv))
        const = draw(st.integers(-6, 6))
        sys.append((coeffs, const))
    return sys, nv


@settings(max_examples=200, deadline=None)
@given(random_systems())
def test_witness_always_satisfies(sysnv):
    sys, nv = sysnv
    w = fm_feasible(sys, nv)
    if w is not None:
        check(sys, nv, w)


@settings(max_examples=100, deadline=None)
@given(random_systems(), st.integers(0, 3))
def test_infeasibility_certified_by_rational_grid(sysnv, seed):
    # when FM says infeasible, no small grid point satisfies the system
    sys, nv = sysnv
    if fm_feasible(sys, nv) is not None:
        return
    grid = [Fraction(k, 2) for k in range(-8, 9)]
    if nv > 2:
        grid = [Fraction(k) for k in range(-4, 5)]
    from itertools import product

    for point in product(grid, repeat=nv):
        assert not all(
            sum(c * w for c, w in zip(coeffs, point)) >= const
            for coeffs, const in sys
        )
