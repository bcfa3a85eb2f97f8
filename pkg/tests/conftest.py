import pytest

from raydiagram.raygraph import RaySet, TYPE_II


def rs(matrix, **kw):
    return RaySet.from_matrix(matrix, **kw)


def chain(n, twists=()):
    """Unit double-arrow path with optional (edge_index, (wij, wji)) twists."""
    entries = {}
    for i in range(n - 1):
        entries[(i, i + 1)] = 1
        entries[(i + 1, i)] = 1
    for pos, (wij, wji) in twists:
        entries[(pos, pos + 1)] = wij
        entries[(pos + 1, pos)] = wji
    return RaySet.from_entries([TYPE_II] * n, entries)


@pytest.fixture
def a2():
    return rs([[-2, 1], [1, -2]])


@pytest.fixture
def lanner2():
    return rs([[-2, 1], [5, -2]])


@pytest.fixture
def at1_22():
    return rs([[-2, 2], [2, -2]])
