"""Exhaustive small-case equivalence sweeps between classifier and oracle.

The n <= 3 grids run straight through the reference pipelines.  The n = 4
grid (6^12 matrices, ~91M up to vertex relabelling) runs through integer
mirrors of both pipelines: a pure-Python version and, by default, a
numba-compiled version of the same algorithms (set RAYDIAGRAM_NO_NUMBA=1
to force the Python path).  Bridge tests in the suite tie the mirrors to
the reference implementations on random and small exhaustive samples.

Labels are coded 0..6 in dispatch order:
0 elliptic, 1 connected-parabolic, 2 parabolic, 3 Lanner, 4 quasi-Lanner,
5 semi-elliptic, 6 not semi-elliptic.
"""

from __future__ import annotations

import itertools
import os
import random
from fractions import Fraction
from math import gcd
from typing import List, Sequence, Tuple

from .classifier import DiagramClass, classify, oracle_classify
from .raygraph import RaySet, TYPE_II, type_i

LABELS = (
    DiagramClass.ELLIPTIC,
    DiagramClass.CONNECTED_PARABOLIC,
    DiagramClass.PARABOLIC,
    DiagramClass.LANNER,
    DiagramClass.QUASI_LANNER,
    DiagramClass.SEMI_ELLIPTIC,
    DiagramClass.NOT_SEMI_ELLIPTIC,
)
_CODE = {label: code for code, label in enumerate(LABELS)}

# off-diagonal slot layout for n = 4, row-major
_POS4 = [(i, j) for i in range(4) for j in range(4) if i != j]
_POS4_INDEX = {pair: p for p, pair in enumerate(_POS4)}


def perm_tables(n: int = 4) -> List[List[int]]:
    """Position permutations induced by vertex relabelling (identity omitted)."""
    slots = [(i, j) for i in range(n) for j in range(n) if i != j]
    index = {pair: p for p, pair in enumerate(slots)}
    tables = []
    for perm in itertools.permutations(range(n)):
        if perm == tuple(range(n)):
            continue
        tables.append([index[(perm[i], perm[j])] for (i, j) in slots])
    return tables


def is_canonical(entries: Sequence[int], tables) -> bool:
    for table in tables:
        for p, q in enumerate(table):
            a, b = entries[p], entries[q]
            if a < b:
                break
            if a > b:
                return False
    return True


# -- integer mirrors (any n, all white vertices, diagonal -2) ------------------


def _matrix_from_entries(entries: Sequence[int], n: int) -> List[List[int]]:
    m = [[-2] * n for _ in range(n)]
    idx = 0
    for i in range(n):
        for j in range(n):
            if i != j:
                m[i][j] = entries[idx]
                idx += 1
        m[i][i] = -2
    return m


def _sub(m, mask, n):
    idx = [i for i in range(n) if mask >> i & 1]
    return [[m[i][j] for j in idx] for i in idx], len(idx)


def _ell_int(m, mask, n) -> bool:
    a, k = _sub(m, mask, n)
    for i in range(k):
        for j in range(k):
            a[i][j] = -a[i][j]
    prev = 1
    for p in range(k):
        if a[p][p] <= 0:
            return False
        if p == k - 1:
            break
        for i in range(p + 1, k):
            for j in range(p + 1, k):
                a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) // prev
        prev = a[p][p]
    return True


def _det_int(m, mask, n) -> int:
    a, k = _sub(m, mask, n)
    sign = 1
    prev = 1
    for p in range(k - 1):
        if a[p][p] == 0:
            piv = -1
            for i in range(p + 1, k):
                if a[i][p] != 0:
                    piv = i
                    break
            if piv < 0:
                return 0
            a[p], a[piv] = a[piv], a[p]
            sign = -sign
        for i in range(p + 1, k):
            for j in range(p + 1, k):
                a[i][j] = (a[i][j] * a[p][p] - a[i][p] * a[p][j]) // prev
        prev = a[p][p]
    return sign * a[k - 1][k - 1]


def _kernel_positive_int(m, mask, n) -> bool:
    """rank k-1 kernel vector with all entries of one strict sign (adjugate)."""
    a, k = _sub(m, mask, n)
    if k == 1:
        return False
    col = None
    for j in range(k):
        vec = []
        for i in range(k):
            minor = [
                [a[r][c] for c in range(k) if c != i]
                for r in range(k) if r != j
            ]
            d = _small_det(minor)
            vec.append(-d if (i + j) % 2 else d)
        if any(vec):
            col = vec
            break
    if col is None:
        return False
    return all(v > 0 for v in col) or all(v < 0 for v in col)


def _small_det(a) -> int:
    k = len(a)
    if k == 0:
        return 1
    if k == 1:
        return a[0][0]
    if k == 2:
        return a[0][0] * a[1][1] - a[0][1] * a[1][0]
    if k == 3:
        return (
            a[0][0] * (a[1][1] * a[2][2] - a[1][2] * a[2][1])
            - a[0][1] * (a[1][0] * a[2][2] - a[1][2] * a[2][0])
            + a[0][2] * (a[1][0] * a[2][1] - a[1][1] * a[2][0])
        )
    raise ValueError("small determinant only up to 3x3")


def _components_int(m, mask, n):
    comps = []
    rest = mask
    while rest:
        start = rest & -rest
        comp = 0
        frontier = start
        while frontier:
            comp |= frontier
            nxt = 0
            f = frontier
            while f:
                v = (f & -f).bit_length() - 1
                f &= f - 1
                for w in range(n):
                    if mask >> w & 1 and w != v and (m[v][w] > 0 or m[w][v] > 0):
                        nxt |= 1 << w
            frontier = nxt & ~comp
        comps.append(comp)
        rest &= ~comp
    return comps


def _fm_int(rows: List[List[int]], nv: int) -> bool:
    """Feasibility of sum(row[:nv] . x) >= row[nv]; pure integers."""
    rows = [row[:] for row in rows]
    for var in range(nv):
        lowers, uppers, keep = [], [], []
        for row in rows:
            c = row[var]
            if c > 0:
                lowers.append(row)
            elif c < 0:
                uppers.append(row)
            else:
                keep.append(row)
        new_rows = []
        seen = set()
        for row in keep:
            if any(row[:nv]):
                key = tuple(row)
                if key not in seen:
                    seen.add(key)
                    new_rows.append(row)
            elif row[nv] > 0:
                return False
        for lo in lowers:
            lp = lo[var]
            for up in uppers:
                un = -up[var]
                row = [un * lo[t] + lp * up[t] for t in range(nv + 1)]
                g = 0
                for t in range(nv + 1):
                    g = gcd(g, abs(row[t]))
                if g > 1:
                    row = [t // g for t in row]
                if any(row[:nv]):
                    key = tuple(row)
                    if key not in seen:
                        seen.add(key)
                        new_rows.append(row)
                elif row[nv] > 0:
                    return False
        rows = new_rows
    return all(row[nv] <= 0 for row in rows)


def _growth_system(m, mask, n, positive: bool):
    idx = [i for i in range(n) if mask >> i & 1]
    k = len(idx)
    rows = []
    for v in range(k):
        row = [0] * (k + 1)
        row[v] = 1
        row[k] = 1 if positive else 0
        rows.append(row)
    total = [0] * (k + 1)
    for a, i in enumerate(idx):
        row = [m[i][j] for j in idx] + [0]
        rows.append(row)
        for t in range(k):
            total[t] += row[t]
    total[k] = 1
    rows.append(total)
    return rows, k


def _nonneg_nonzero_system(m, mask, n):
    idx = [i for i in range(n) if mask >> i & 1]
    k = len(idx)
    rows = []
    for v in range(k):
        row = [0] * (k + 1)
        row[v] = 1
        rows.append(row)
    rows.append([1] * k + [1])
    for i in idx:
        rows.append([m[i][j] for j in idx] + [0])
    return rows, k


def _kernel_system(m, mask, n):
    idx = [i for i in range(n) if mask >> i & 1]
    k = len(idx)
    rows = []
    for v in range(k):
        row = [0] * (k + 1)
        row[v] = 1
        row[k] = 1
        rows.append(row)
    for i in idx:
        row = [m[i][j] for j in idx] + [0]
        rows.append(row)
        rows.append([-c for c in row[:k]] + [0])
    return rows, k


def classify_code(entries: Sequence[int], n: int) -> int:
    """Integer mirror of classify() for all-white diagonals -2."""
    m = _matrix_from_entries(entries, n)
    full = (1 << n) - 1
    ell = {}

    def is_ell(mask):
        got = ell.get(mask)
        if got is None:
            got = _ell_int(m, mask, n)
            ell[mask] = got
        return got

    if is_ell(full):
        return 0

    def is_cp(mask):
        k = bin(mask).count("1")
        if k < 2 or len(_components_int(m, mask, n)) != 1:
            return False
        sub = mask
        for i in range(n):
            if mask >> i & 1 and not is_ell(mask & ~(1 << i)):
                return False
        if _det_int(m, mask, n) != 0:
            return False
        return _kernel_positive_int(m, mask, n)

    def is_par(mask):
        return all(is_cp(c) for c in _components_int(m, mask, n))

    comps = _components_int(m, full, n)
    if len(comps) == 1 and is_cp(full):
        return 1
    if len(comps) > 1 and all(is_cp(c) for c in comps):
        return 2

    rows, k = _growth_system(m, full, n, positive=True)
    if n >= 2 and _fm_int(rows, k):
        if all(is_ell(full & ~(1 << i)) for i in range(n)):
            return 3
        ok = True
        sub = (full - 1) & full
        while sub and ok:
            if sub != full and not (is_ell(sub) or is_par(sub)):
                ok = False
            sub = (sub - 1) & full
        if ok:
            return 4
        return 6
    rows, k = _growth_system(m, full, n, positive=False)
    if not _fm_int(rows, k):
        return 5
    return 6


def oracle_code(entries: Sequence[int], n: int) -> int:
    """Integer mirror of oracle_classify(): feasibility only, no determinants."""
    m = _matrix_from_entries(entries, n)
    full = (1 << n) - 1
    ell = {}
    cp = {}

    def is_ell(mask):
        got = ell.get(mask)
        if got is None:
            rows, k = _nonneg_nonzero_system(m, mask, n)
            got = not _fm_int(rows, k)
            ell[mask] = got
        return got

    def is_cp(mask):
        got = cp.get(mask)
        if got is not None:
            return got
        k = bin(mask).count("1")
        ok = k >= 2 and len(_components_int(m, mask, n)) == 1
        sub = (mask - 1) & mask
        while ok and sub:
            if sub != mask and not is_ell(sub):
                ok = False
            sub = (sub - 1) & mask
        if ok:
            rows, kk = _kernel_system(m, mask, n)
            ok = _fm_int(rows, kk)
        cp[mask] = ok
        return ok

    def is_par(mask):
        return all(is_cp(c) for c in _components_int(m, mask, n))

    if is_ell(full):
        return 0
    if is_cp(full):
        return 1
    if is_par(full):
        return 2
    rows, k = _growth_system(m, full, n, positive=True)
    if n >= 2 and _fm_int(rows, k):
        all_ell = True
        all_ell_or_par = True
        sub = (full - 1) & full
        while sub and all_ell_or_par:
            if sub != full and not is_ell(sub):
                all_ell = False
                if not is_par(sub):
                    all_ell_or_par = False
            sub = (sub - 1) & full
        if all_ell:
            return 3
        if all_ell_or_par:
            return 4
    rows, k = _growth_system(m, full, n, positive=False)
    if not _fm_int(rows, k):
        return 5
    return 6


# -- sweeps --------------------------------------------------------------------


def reference_classify_code(entries: Sequence[int], n: int) -> int:
    rs = _rayset_from_entries(entries, n)
    return _CODE[classify(rs).label]


def reference_oracle_code(entries: Sequence[int], n: int) -> int:
    rs = _rayset_from_entries(entries, n)
    return _CODE[oracle_classify(rs)]


def _rayset_from_entries(entries: Sequence[int], n: int) -> RaySet:
    mat = _matrix_from_entries(entries, n)
    return RaySet.from_matrix(mat)


def sweep_small(n: int, max_entry: int) -> Tuple[int, List[Tuple[int, ...]]]:
    """Reference classify vs reference oracle on the full n-vertex grid."""
    slots = n * (n - 1)
    tables = perm_tables(n)
    checked = 0
    bad = []
    for entries in itertools.product(range(max_entry + 1), repeat=slots):
        if not is_canonical(entries, tables):
            continue
        checked += 1
        if reference_classify_code(entries, n) != reference_oracle_code(entries, n):
            bad.append(entries)
    return checked, bad


def sweep_mirror_range(
    n: int, max_entry: int, start: int, stop: int
) -> Tuple[int, List[Tuple[int, ...]]]:
    """Python-mirror sweep over an index range of the base-(max_entry+1) grid."""
    slots = n * (n - 1)
    base = max_entry + 1
    tables = perm_tables(n)
    checked = 0
    bad = []
    for code in range(start, stop):
        entries = _decode(code, base, slots)
        if not is_canonical(entries, tables):
            continue
        checked += 1
        if classify_code(entries, n) != oracle_code(entries, n):
            bad.append(entries)
    return checked, bad


def _decode(code: int, base: int, slots: int) -> Tuple[int, ...]:
    out = [0] * slots
    for p in range(slots - 1, -1, -1):
        out[p] = code % base
        code //= base
    return tuple(out)


def numba_available() -> bool:
    if os.environ.get("RAYDIAGRAM_NO_NUMBA"):
        return False
    try:
        import numba  # noqa: F401
    except ImportError:
        return False
    return True


def sweep_exhaustive_n4(max_entry: int = 5, workers: int = 0, chunk_callback=None):
    """Full n = 4 sweep modulo relabelling; numba when available.

    Returns (canonical_count, mismatch_entry_tuples).
    """
    if numba_available():
        from . import _njit_sweep

        return _njit_sweep.run(max_entry, chunk_callback)
    # pure-Python fallback: only sensible for small max_entry
    total = (max_entry + 1) ** 12
    return sweep_mirror_range(4, max_entry, 0, total)


def random_instances(count: int, seed: int, max_n: int = 6):
    """Random rational / mixed-kind ray sets for the randomized equivalence run."""
    rng = random.Random(seed)
    out = []
    for _ in range(count):
        n = rng.randint(1, max_n)
        kinds = []
        for _ in range(n):
            kinds.append(type_i(rng.randint(1, 3)) if rng.random() < 0.2 else TYPE_II)
        entries = {}
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                roll = rng.random()
                if roll < 0.45:
                    continue
                if roll < 0.8:
                    entries[(i, j)] = Fraction(rng.randint(1, 5))
                else:
                    entries[(i, j)] = Fraction(rng.randint(1, 9), rng.randint(1, 4))
        out.append(RaySet.from_entries(kinds, entries, mode="general"))
    return out
