"""Numba-compiled n = 4 exhaustive sweep (see exhaustive.py for the contract).

Same integer algorithms as exhaustive.classify_code / oracle_code,
specialized to 4 all-white vertices with diagonal -2, running over all
off-diagonal grids {0..max_entry}^12 modulo vertex relabelling.  All
scratch arrays are allocated once per chunk and threaded through.
"""

from __future__ import annotations

import numpy as np
from numba import njit, prange

from .exhaustive import perm_tables

_CAP = 512  # Fourier-Motzkin row cap (these systems stay far below)


@njit(cache=True)
def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


@njit(cache=True)
def _fm_int(work, buf, nrows, nv):
    """Feasibility of work[:nrows, :nv] . x >= work[:nrows, nv] (destructive)."""
    count = nrows
    for var in range(nv):
        nbuf = 0
        for r in range(count):
            if work[r, var] != 0:
                continue
            allz = True
            for t in range(nv):
                if work[r, t] != 0:
                    allz = False
                    break
            if allz:
                if work[r, nv] > 0:
                    return False
                continue
            dup = False
            for s in range(nbuf):
                same = True
                for t in range(nv + 1):
                    if buf[s, t] != work[r, t]:
                        same = False
                        break
                if same:
                    dup = True
                    break
            if not dup:
                if nbuf >= _CAP - 1:
                    raise RuntimeError("FM row cap exceeded")
                for t in range(nv + 1):
                    buf[nbuf, t] = work[r, t]
                nbuf += 1
        for r in range(count):
            lp = work[r, var]
            if lp <= 0:
                continue
            for s in range(count):
                un = -work[s, var]
                if un <= 0:
                    continue
                g = np.int64(0)
                infeas_row = True
                for t in range(nv + 1):
                    v = un * work[r, t] + lp * work[s, t]
                    buf[_CAP - 1, t] = v  # staging slot
                    g = _gcd(g, v if v >= 0 else -v)
                if g > 1:
                    for t in range(nv + 1):
                        buf[_CAP - 1, t] //= g
                allz = True
                for t in range(nv):
                    if buf[_CAP - 1, t] != 0:
                        allz = False
                        break
                if allz:
                    if buf[_CAP - 1, nv] > 0:
                        return False
                    continue
                dup = False
                for q in range(nbuf):
                    same = True
                    for t in range(nv + 1):
                        if buf[q, t] != buf[_CAP - 1, t]:
                            same = False
                            break
                    if same:
                        dup = True
                        break
                if not dup:
                    if nbuf >= _CAP - 1:
                        raise RuntimeError("FM row cap exceeded")
                    for t in range(nv + 1):
                        buf[nbuf, t] = buf[_CAP - 1, t]
                    nbuf += 1
        tmp = work
        work = buf
        buf = tmp
        count = nbuf
    for r in range(count):
        if work[r, nv] > 0:
            return False
    return True


@njit(cache=True)
def _mask_indices(mask, idx):
    k = 0
    for i in range(4):
        if mask >> i & 1:
            idx[k] = i
            k += 1
    return k


@njit(cache=True)
def _ell4(m, mask, idx, a):
    k = _mask_indices(mask, idx)
    for i in range(k):
        for j in range(k):
            a[i, j] = -m[idx[i], idx[j]]
    prev = np.int64(1)
    for p in range(k):
        if a[p, p] <= 0:
            return False
        if p == k - 1:
            break
        for i in range(p + 1, k):
            for j in range(p + 1, k):
                a[i, j] = (a[i, j] * a[p, p] - a[i, p] * a[p, j]) // prev
        prev = a[p, p]
    return True


@njit(cache=True)
def _det_small(a, k):
    if k == 0:
        return np.int64(1)
    if k == 1:
        return a[0, 0]
    if k == 2:
        return a[0, 0] * a[1, 1] - a[0, 1] * a[1, 0]
    return (
        a[0, 0] * (a[1, 1] * a[2, 2] - a[1, 2] * a[2, 1])
        - a[0, 1] * (a[1, 0] * a[2, 2] - a[1, 2] * a[2, 0])
        + a[0, 2] * (a[1, 0] * a[2, 1] - a[1, 1] * a[2, 0])
    )


@njit(cache=True)
def _det4(m, mask, idx, a, minor):
    k = _mask_indices(mask, idx)
    for i in range(k):
        for j in range(k):
            a[i, j] = m[idx[i], idx[j]]
    if k < 4:
        return _det_small(a, k)
    total = np.int64(0)
    sign = np.int64(1)
    for j in range(4):
        for r in range(1, 4):
            cc = 0
            for c in range(4):
                if c != j:
                    minor[r - 1, cc] = a[r, c]
                    cc += 1
        total += sign * a[0, j] * _det_small(minor, 3)
        sign = -sign
    return total


@njit(cache=True)
def _kernel_pos4(m, mask, idx, a, minor):
    k = _mask_indices(mask, idx)
    if k < 2:
        return False
    for i in range(k):
        for j in range(k):
            a[i, j] = m[idx[i], idx[j]]
    for j in range(k):
        nonzero = False
        pos = False
        neg = False
        zero = False
        for i in range(k):
            rr = 0
            for r in range(k):
                if r == j:
                    continue
                cc = 0
                for c in range(k):
                    if c == i:
                        continue
                    minor[rr, cc] = a[r, c]
                    cc += 1
                rr += 1
            d = _det_small(minor, k - 1)
            if (i + j) % 2 == 1:
                d = -d
            if d > 0:
                pos = True
                nonzero = True
            elif d < 0:
                neg = True
                nonzero = True
            else:
                zero = True
        if nonzero:
            return (pos != neg) and not zero
    return False


@njit(cache=True)
def _components4(m, mask, comps):
    count = 0
    rest = mask
    while rest:
        start = rest & (-rest)
        comp = start
        frontier = start
        while frontier:
            nxt = 0
            f = frontier
            while f:
                v = 0
                t = f & (-f)
                while t > 1:
                    t >>= 1
                    v += 1
                f &= f - 1
                for w in range(4):
                    if (mask >> w) & 1 and w != v:
                        if m[v, w] > 0 or m[w, v] > 0:
                            nxt |= 1 << w
            frontier = nxt & ~comp
            comp |= frontier
        comps[count] = comp
        count += 1
        rest &= ~comp
    return count


@njit(cache=True)
def _growth_feasible(m, mask, positive, idx, fa, fb):
    k = _mask_indices(mask, idx)
    r = 0
    for v in range(k):
        for t in range(k + 1):
            fa[r, t] = 0
        fa[r, v] = 1
        if positive:
            fa[r, k] = 1
        r += 1
    for i in range(k):
        for j in range(k):
            fa[r, j] = m[idx[i], idx[j]]
        fa[r, k] = 0
        r += 1
    for j in range(k):
        s = np.int64(0)
        for i in range(k):
            s += m[idx[i], idx[j]]
        fa[r, j] = s
    fa[r, k] = 1
    r += 1
    return _fm_int(fa, fb, r, k)


@njit(cache=True)
def _oracle_ell(m, mask, idx, fa, fb):
    k = _mask_indices(mask, idx)
    r = 0
    for v in range(k):
        for t in range(k + 1):
            fa[r, t] = 0
        fa[r, v] = 1
        r += 1
    for t in range(k):
        fa[r, t] = 1
    fa[r, k] = 1
    r += 1
    for i in range(k):
        for j in range(k):
            fa[r, j] = m[idx[i], idx[j]]
        fa[r, k] = 0
        r += 1
    return not _fm_int(fa, fb, r, k)


@njit(cache=True)
def _oracle_kernel(m, mask, idx, fa, fb):
    k = _mask_indices(mask, idx)
    r = 0
    for v in range(k):
        for t in range(k + 1):
            fa[r, t] = 0
        fa[r, v] = 1
        fa[r, k] = 1
        r += 1
    for i in range(k):
        for j in range(k):
            fa[r, j] = m[idx[i], idx[j]]
        fa[r, k] = 0
        r += 1
        for j in range(k):
            fa[r, j] = -m[idx[i], idx[j]]
        fa[r, k] = 0
        r += 1
    return _fm_int(fa, fb, r, k)


@njit(cache=True)
def _classify4(m, idx, a, minor, comps, ell, fa, fb):
    for t in range(16):
        ell[t] = -1
    full = 15

    def is_ell(mask):
        if ell[mask] < 0:
            ell[mask] = 1 if _ell4(m, mask, idx, a) else 0
        return ell[mask] == 1

    if is_ell(full):
        return 0

    def is_cp(mask):
        k = 0
        for i in range(4):
            if mask >> i & 1:
                k += 1
        if k < 2:
            return False
        if _components4(m, mask, comps) != 1:
            return False
        for i in range(4):
            if mask >> i & 1:
                if not is_ell(mask & ~(1 << i)):
                    return False
        if _det4(m, mask, idx, a, minor) != 0:
            return False
        return _kernel_pos4(m, mask, idx, a, minor)

    def is_par(mask):
        cnt = _components4(m, mask, comps)
        # comps buffer is shared: copy out first
        c0 = comps[0]
        c1 = comps[1] if cnt > 1 else 0
        c2 = comps[2] if cnt > 2 else 0
        c3 = comps[3] if cnt > 3 else 0
        if not is_cp(c0):
            return False
        if cnt > 1 and not is_cp(c1):
            return False
        if cnt > 2 and not is_cp(c2):
            return False
        if cnt > 3 and not is_cp(c3):
            return False
        return True

    ncomp = _components4(m, full, comps)
    if ncomp == 1:
        if is_cp(full):
            return 1
    else:
        if is_par(full):
            return 2

    if _growth_feasible(m, full, True, idx, fa, fb):
        all_ell = True
        for i in range(4):
            if not is_ell(full & ~(1 << i)):
                all_ell = False
                break
        if all_ell:
            return 3
        ok = True
        for sub in range(1, 15):
            if not (is_ell(sub) or is_par(sub)):
                ok = False
                break
        if ok:
            return 4
        return 6
    if not _growth_feasible(m, full, False, idx, fa, fb):
        return 5
    return 6


@njit(cache=True)
def _oracle4(m, idx, comps, oell, ocp, fa, fb):
    for t in range(16):
        oell[t] = -1
        ocp[t] = -1
    full = 15

    def is_ell(mask):
        if oell[mask] < 0:
            oell[mask] = 1 if _oracle_ell(m, mask, idx, fa, fb) else 0
        return oell[mask] == 1

    def is_cp(mask):
        if ocp[mask] >= 0:
            return ocp[mask] == 1
        k = 0
        for i in range(4):
            if mask >> i & 1:
                k += 1
        ok = k >= 2 and _components4(m, mask, comps) == 1
        if ok:
            sub = (mask - 1) & mask
            while sub:
                if sub != mask and not is_ell(sub):
                    ok = False
                    break
                sub = (sub - 1) & mask
        if ok:
            ok = _oracle_kernel(m, mask, idx, fa, fb)
        ocp[mask] = 1 if ok else 0
        return ok

    def is_par(mask):
        cnt = _components4(m, mask, comps)
        c0 = comps[0]
        c1 = comps[1] if cnt > 1 else 0
        c2 = comps[2] if cnt > 2 else 0
        c3 = comps[3] if cnt > 3 else 0
        if not is_cp(c0):
            return False
        if cnt > 1 and not is_cp(c1):
            return False
        if cnt > 2 and not is_cp(c2):
            return False
        if cnt > 3 and not is_cp(c3):
            return False
        return True

    if is_ell(full):
        return 0
    if is_cp(full):
        return 1
    if is_par(full):
        return 2
    if _growth_feasible(m, full, True, idx, fa, fb):
        all_ell = True
        all_ell_or_par = True
        for sub in range(1, 15):
            if not is_ell(sub):
                all_ell = False
                if not is_par(sub):
                    all_ell_or_par = False
                    break
        if all_ell:
            return 3
        if all_ell_or_par:
            return 4
    if not _growth_feasible(m, full, False, idx, fa, fb):
        return 5
    return 6


@njit(cache=True)
def _run_chunk(start, stop, stride, base, perms, out_counts, out_bad, chunk_id):
    digits = np.empty(12, dtype=np.int64)
    m = np.empty((4, 4), dtype=np.int64)
    idx = np.empty(4, dtype=np.int64)
    a = np.empty((4, 4), dtype=np.int64)
    minor = np.empty((3, 3), dtype=np.int64)
    comps = np.empty(4, dtype=np.int64)
    ell = np.empty(16, dtype=np.int8)
    oell = np.empty(16, dtype=np.int8)
    ocp = np.empty(16, dtype=np.int8)
    fa = np.empty((_CAP, 5), dtype=np.int64)
    fb = np.empty((_CAP, 5), dtype=np.int64)
    for i in range(4):
        m[i, i] = -2
    checked = np.int64(0)
    mism = np.int64(0)
    first_bad = np.int64(-1)
    nperms = perms.shape[0]
    for code in range(start, stop, stride):
        c = code
        for p in range(11, -1, -1):
            digits[p] = c % base
            c //= base
        canonical = True
        for t in range(nperms):
            for p in range(12):
                av = digits[p]
                bv = digits[perms[t, p]]
                if av < bv:
                    break
                if av > bv:
                    canonical = False
                    break
            if not canonical:
                break
        if not canonical:
            continue
        checked += 1
        q = 0
        for i in range(4):
            for j in range(4):
                if i != j:
                    m[i, j] = digits[q]
                    q += 1
        got = _classify4(m, idx, a, minor, comps, ell, fa, fb)
        want = _oracle4(m, idx, comps, oell, ocp, fa, fb)
        if got != want:
            mism += 1
            if first_bad < 0:
                first_bad = code
    out_counts[chunk_id, 0] = checked
    out_counts[chunk_id, 1] = mism
    out_bad[chunk_id] = first_bad


@njit(parallel=True, cache=True)
def _run_all(total, base, perms, nchunks, out_counts, out_bad):
    # strided chunks: canonical representatives cluster at small codes, so
    # contiguous ranges would leave one thread with nearly all the work
    for c in prange(nchunks):
        _run_chunk(c, total, nchunks, base, perms, out_counts, out_bad, c)


def run(max_entry: int, chunk_callback=None):
    base = max_entry + 1
    total = base ** 12
    perms = np.array(perm_tables(4), dtype=np.int64)
    nchunks = 512
    out_counts = np.zeros((nchunks, 2), dtype=np.int64)
    out_bad = np.full(nchunks, -1, dtype=np.int64)
    _run_all(total, base, perms, nchunks, out_counts, out_bad)
    checked = int(out_counts[:, 0].sum())
    mismatches = int(out_counts[:, 1].sum())
    examples = []
    for c in range(nchunks):
        if out_bad[c] >= 0:
            code = int(out_bad[c])
            digits = []
            for _ in range(12):
                digits.append(code % base)
                code //= base
            examples.append(tuple(reversed(digits)))
    return checked, mismatches, examples
