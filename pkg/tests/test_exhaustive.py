import itertools
import random

import pytest

from raydiagram.exhaustive import (
    classify_code,
    is_canonical,
    oracle_code,
    perm_tables,
    reference_classify_code,
    reference_oracle_code,
    sweep_mirror_range,
)


def test_perm_tables_shape():
    tables = perm_tables(4)
    assert len(tables) == 23
    assert all(sorted(t) == list(range(12)) for t in tables)


def test_canonical_counts_n2():
    tables = perm_tables(2)
    canon = [
        e for e in itertools.product(range(3), repeat=2) if is_canonical(e, tables)
    ]
    # unordered pairs of {0,1,2}: 6 of them
    assert len(canon) == 6


def test_two_by_two_grid_all_agree():
    # spec example: every 2x2 with off-diagonals in {0..6}
    for e in itertools.product(range(7), repeat=2):
        assert reference_classify_code(e, 2) == reference_oracle_code(e, 2)
        assert classify_code(e, 2) == reference_classify_code(e, 2)
        assert oracle_code(e, 2) == reference_oracle_code(e, 2)


def test_mirrors_bridge_random():
    rng = random.Random(99)
    for _ in range(400):
        n = rng.choice((3, 4))
        e = tuple(rng.randint(0, 5) for _ in range(n * (n - 1)))
        assert classify_code(e, n) == reference_classify_code(e, n)
        assert oracle_code(e, n) == reference_oracle_code(e, n)


def test_mirror_sweep_range_small():
    checked, bad = sweep_mirror_range(4, 1, 0, 2 ** 12)
    assert bad == []
    assert checked > 100


@pytest.mark.skipif(
    not pytest.importorskip("raydiagram.exhaustive").numba_available(),
    reason="numba unavailable",
)
def test_njit_kernel_bridges_python_mirror():
    import numpy as np

    from raydiagram import _njit_sweep

    S = dict(
        idx=np.empty(4, dtype=np.int64),
        a=np.empty((4, 4), dtype=np.int64),
        minor=np.empty((3, 3), dtype=np.int64),
        comps=np.empty(4, dtype=np.int64),
        ell=np.empty(16, dtype=np.int8),
        oell=np.empty(16, dtype=np.int8),
        ocp=np.empty(16, dtype=np.int8),
        fa=np.empty((512, 5), dtype=np.int64),
        fb=np.empty((512, 5), dtype=np.int64),
    )
    m = np.empty((4, 4), dtype=np.int64)
    for i in range(4):
        m[i, i] = -2
    rng = random.Random(5)
    for _ in range(1500):
        e = [rng.randint(0, 5) for _ in range(12)]
        q = 0
        for i in range(4):
            for j in range(4):
                if i != j:
                    m[i, j] = e[q]
                    q += 1
        got_c = _njit_sweep._classify4(
            m, S["idx"], S["a"], S["minor"], S["comps"], S["ell"], S["fa"], S["fb"]
        )
        got_o = _njit_sweep._oracle4(
            m, S["idx"], S["comps"], S["oell"], S["ocp"], S["fa"], S["fb"]
        )
        assert got_c == classify_code(tuple(e), 4)
        assert got_o == oracle_code(tuple(e), 4)


def test_oracle_agrees_on_catalog_diagrams():
    from raydiagram.catalog import enumerate_families
    from raydiagram.classifier import classify, oracle_classify

    seen = 0
    for spec, s, _ in enumerate_families(6, 3):
        if s.n > 5 and spec.family not in ("An", "Bn", "Cn", "Dn", "E6"):
            continue
        assert oracle_classify(s, bound=7) is classify(s).label, str(spec)
        seen += 1
    assert seen > 300
