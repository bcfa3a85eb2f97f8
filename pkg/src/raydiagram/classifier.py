"""Exact classification of ray sets.

A ray set with matrix M is

* elliptic            -- some a > 0 has (M a)_i < 0 everywhere,
* connected parabolic -- every proper subset elliptic, positive kernel M a = 0,
* parabolic           -- every divisorially connected component connected parabolic,
* Lanner              -- every proper subset elliptic, some a > 0 has
                         M a >= 0 with a strict coordinate,
* quasi-Lanner        -- as Lanner but proper subsets may also be parabolic,
* semi-elliptic       -- no a >= 0 has M a >= 0 with a strict coordinate,

and "not semi-elliptic" is the catch-all.  Ellipticity is decided by the
Fiedler-Ptak test (all leading principal minors of -M positive); the
witness systems are decided by exact Fourier-Motzkin feasibility.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from fractions import Fraction
from math import lcm
from typing import Dict, List, Optional, Tuple

from .feasibility import fm_feasible
from .raygraph import RaySet, _adjacency_bits, mask_components


class DiagramClass(Enum):
    ELLIPTIC = "elliptic"
    CONNECTED_PARABOLIC = "connected-parabolic"
    PARABOLIC = "parabolic"
    LANNER = "lanner"
    QUASI_LANNER = "quasi-lanner"
    SEMI_ELLIPTIC = "semi-elliptic"
    NOT_SEMI_ELLIPTIC = "not-semi-elliptic"


class PreconditionError(ValueError):
    """Classifier entry points reject dotted pairs and empty sets."""


@dataclass(frozen=True)
class Witness:
    """Positive coefficient vector plus the signs of the products (M a)_i."""

    coefficients: Tuple[Fraction, ...]
    signs: Tuple[str, ...]  # each "<0", "=0" or ">0"


@dataclass(frozen=True)
class Decomposition:
    parabolic_parts: Tuple[Tuple[int, ...], ...]
    elliptic_part: Tuple[int, ...]


@dataclass(frozen=True)
class Classification:
    label: DiagramClass
    witness: Optional[Witness] = None
    kernel: Optional[Witness] = None
    decomposition: Optional[Decomposition] = None
    reason: str = ""

    @property
    def is_semi_elliptic(self) -> bool:
        return self.label in (
            DiagramClass.ELLIPTIC,
            DiagramClass.CONNECTED_PARABOLIC,
            DiagramClass.PARABOLIC,
            DiagramClass.SEMI_ELLIPTIC,
        )


def _require_plain(rs: RaySet):
    if rs.dotted:
        raise PreconditionError("dotted pairs are not allowed here")
    if rs.n < 1:
        raise PreconditionError("empty ray set")


# -- integer rows -----------------------------------------------------------


def _int_rows(rs: RaySet) -> List[Tuple[int, ...]]:
    """Clear denominators row by row (positive scalings preserve everything
    we decide: minor signs, kernels, and the feasibility systems)."""
    rows = []
    for i in range(rs.n):
        scale = lcm(*(v.denominator for v in rs.m[i])) if rs.n else 1
        rows.append(tuple(int(v * scale) for v in rs.m[i]))
    return rows


def _minors_positive(rows: List[Tuple[int, ...]], idx: Tuple[int, ...]) -> bool:
    """Fiedler-Ptak: all leading principal minors of -M positive (Bareiss)."""
    k = len(idx)
    a = [[-rows[i][j] for j in idx] for i in idx]
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


def _solve_unit(rs: RaySet) -> Tuple[Fraction, ...]:
    """Solve (-M) x = 1 exactly (M nonsingular M-matrix: x > 0)."""
    n = rs.n
    a = [[-rs.m[i][j] for j in range(n)] + [Fraction(1)] for i in range(n)]
    for p in range(n):
        piv = a[p][p]
        for i in range(n):
            if i == p:
                continue
            f = a[i][p] / piv
            if f:
                for j in range(p, n + 1):
                    a[i][j] -= f * a[p][j]
    return tuple(a[i][n] / a[i][i] for i in range(n))


def _kernel_vector(rows: List[Tuple[int, ...]], n: int) -> Optional[Tuple[Fraction, ...]]:
    """One-dimensional kernel of M, or None when M is nonsingular or nullity > 1."""
    a = [[Fraction(rows[i][j]) for j in range(n)] for i in range(n)]
    pivots = []
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, n):
            if a[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        a[r], a[piv] = a[piv], a[r]
        pv = a[r][c]
        for i in range(n):
            if i != r and a[i][c] != 0:
                f = a[i][c] / pv
                for j in range(c, n):
                    a[i][j] -= f * a[r][j]
        pivots.append(c)
        r += 1
    if r != n - 1:
        return None
    free = next(c for c in range(n) if c not in pivots)
    vec = [Fraction(0)] * n
    vec[free] = Fraction(1)
    for row_i, c in enumerate(pivots):
        vec[c] = -a[row_i][free] / a[row_i][c]
    return tuple(vec)


def normalize_positive(vec: Tuple[Fraction, ...]) -> Tuple[Fraction, ...]:
    """Scale a positive vector so its minimum coordinate is exactly 1."""
    low = min(vec)
    return tuple(v / low for v in vec)


def _signs(rows, vec) -> Tuple[str, ...]:
    out = []
    for row in rows:
        s = sum(c * v for c, v in zip(row, vec))
        out.append("<0" if s < 0 else (">0" if s > 0 else "=0"))
    return tuple(out)


def _witness(rs: RaySet, vec: Tuple[Fraction, ...]) -> Witness:
    return Witness(tuple(vec), _signs(rs.m, vec))


# -- feasibility systems ------------------------------------------------------


def _system_positive_growth(rows, n):
    """a_i >= 1; (M a)_i >= 0; sum_i (M a)_i >= 1  (Lanner / quasi-Lanner)."""
    sys = []
    for v in range(n):
        e = [0] * n
        e[v] = 1
        sys.append((tuple(e), 1))
    for row in rows:
        sys.append((tuple(row), 0))
    total = tuple(sum(row[j] for row in rows) for j in range(n))
    sys.append((total, 1))
    return sys


def _system_nonneg_growth(rows, n):
    """a_i >= 0; (M a)_i >= 0; sum_i (M a)_i >= 1  (non-semi-ellipticity)."""
    sys = []
    for v in range(n):
        e = [0] * n
        e[v] = 1
        sys.append((tuple(e), 0))
    for row in rows:
        sys.append((tuple(row), 0))
    total = tuple(sum(row[j] for row in rows) for j in range(n))
    sys.append((total, 1))
    return sys


def _system_kernel(rows, n):
    """a_i >= 1; (M a)_i >= 0 and <= 0  (positive kernel)."""
    sys = []
    for v in range(n):
        e = [0] * n
        e[v] = 1
        sys.append((tuple(e), 1))
    for row in rows:
        sys.append((tuple(row), 0))
        sys.append((tuple(-c for c in row), 0))
    return sys


def _system_nonneg_nonzero(rows, n):
    """b >= 0; sum b >= 1; (M b)_i >= 0  (negation of the elliptic criterion)."""
    sys = []
    for v in range(n):
        e = [0] * n
        e[v] = 1
        sys.append((tuple(e), 0))
    sys.append((tuple([1] * n), 1))
    for row in rows:
        sys.append((tuple(row), 0))
    return sys


def _sub_rows(rows, idx):
    return [tuple(rows[i][j] for j in idx) for i in idx]


# -- subset machinery ---------------------------------------------------------


_ELL, _PAR, _OTHER = 0, 1, 2


class _Scanner:
    """Memoized subset classification for one ray set."""

    def __init__(self, rs: RaySet):
        self.rs = rs
        self.rows = _int_rows(rs)
        self.adj = _adjacency_bits(rs)
        self.ell: Dict[int, bool] = {}
        self.kind: Dict[int, int] = {}

    def indices(self, mask: int) -> Tuple[int, ...]:
        return tuple(i for i in range(self.rs.n) if mask >> i & 1)

    def elliptic(self, mask: int) -> bool:
        got = self.ell.get(mask)
        if got is None:
            got = _minors_positive(self.rows, self.indices(mask))
            self.ell[mask] = got
        return got

    def connected(self, mask: int) -> bool:
        return len(mask_components(self.adj, mask)) == 1

    def connected_parabolic(self, mask: int) -> bool:
        """Requires mask connected; every proper subset elliptic + positive kernel."""
        idx = self.indices(mask)
        k = len(idx)
        if k < 2:
            return False
        # hereditary, so the maximal subsets suffice
        for drop in idx:
            if not self.elliptic(mask & ~(1 << drop)):
                return False
        vec = _kernel_vector(_sub_rows(self.rows, idx), k)
        return vec is not None and all(v > 0 for v in vec)

    def component_kind(self, mask: int) -> int:
        got = self.kind.get(mask)
        if got is None:
            if self.elliptic(mask):
                got = _ELL
            elif self.connected_parabolic(mask):
                got = _PAR
            else:
                got = _OTHER
            self.kind[mask] = got
        return got

    def elliptic_or_parabolic(self, mask: int) -> bool:
        """mask is elliptic, or every component of mask is connected parabolic."""
        kinds = {self.component_kind(c) for c in mask_components(self.adj, mask)}
        if _OTHER in kinds:
            return False
        return kinds <= {_ELL} or kinds <= {_PAR}

    def maximal_subsets_elliptic(self, full: int) -> bool:
        for i in self.indices(full):
            if not self.elliptic(full & ~(1 << i)):
                return False
        return True

    def all_proper_ell_or_par(self, full: int) -> bool:
        # maximal subsets first: they fail earliest
        for i in self.indices(full):
            if not self.elliptic_or_parabolic(full & ~(1 << i)):
                return False
        sub = (full - 1) & full
        while sub:
            if sub != full and not self.elliptic_or_parabolic(sub):
                return False
            sub = (sub - 1) & full
        return True


# -- public operations --------------------------------------------------------


def is_elliptic(rs: RaySet) -> Tuple[bool, Optional[Witness]]:
    _require_plain(rs)
    rows = _int_rows(rs)
    if not _minors_positive(rows, tuple(range(rs.n))):
        return False, None
    vec = _solve_unit(rs)
    return True, _witness(rs, normalize_positive(vec))


def is_connected_parabolic(rs: RaySet) -> Tuple[bool, Optional[Witness]]:
    _require_plain(rs)
    sc = _Scanner(rs)
    full = (1 << rs.n) - 1
    if rs.n < 2 or not sc.connected(full):
        return False, None
    if not sc.maximal_subsets_elliptic(full):
        return False, None
    vec = _kernel_vector(sc.rows, rs.n)
    if vec is None:
        return False, None
    if all(v > 0 for v in vec):
        vec = normalize_positive(vec)
    elif all(v < 0 for v in vec):
        vec = normalize_positive(tuple(-v for v in vec))
    else:
        return False, None
    return True, _witness(rs, vec)


def is_parabolic(rs: RaySet) -> bool:
    _require_plain(rs)
    sc = _Scanner(rs)
    full = (1 << rs.n) - 1
    return all(
        sc.component_kind(c) == _PAR for c in mask_components(sc.adj, full)
    )


def _growth_witness(rs: RaySet, rows, positive: bool) -> Optional[Witness]:
    system = (
        _system_positive_growth(rows, rs.n)
        if positive
        else _system_nonneg_growth(rows, rs.n)
    )
    vec = fm_feasible(system, rs.n)
    if vec is None:
        return None
    if positive:
        vec = normalize_positive(tuple(vec))
    return _witness(rs, tuple(vec))


def is_lanner(rs: RaySet) -> Tuple[bool, Optional[Witness]]:
    _require_plain(rs)
    sc = _Scanner(rs)
    full = (1 << rs.n) - 1
    if rs.n < 2 or not sc.maximal_subsets_elliptic(full):
        return False, None
    if sc.elliptic(full):
        return False, None
    w = _growth_witness(rs, sc.rows, positive=True)
    if w is None:
        return False, None
    return True, w


def is_quasi_lanner(rs: RaySet) -> bool:
    _require_plain(rs)
    sc = _Scanner(rs)
    full = (1 << rs.n) - 1
    if rs.n < 2 or sc.elliptic(full):
        return False
    if _growth_witness(rs, sc.rows, positive=True) is None:
        return False
    return sc.all_proper_ell_or_par(full)


def is_semi_elliptic(rs: RaySet) -> bool:
    """No a >= 0 yields M a >= 0 with a strictly positive coordinate.

    The literal text of the defining condition reads as the weaker "no
    a >= 0 makes every (M a)_i strictly positive", but the decomposition
    characterization (and everything built on it) needs this form; see
    the decomposition agreement tests.
    """
    _require_plain(rs)
    rows = _int_rows(rs)
    return fm_feasible(_system_nonneg_growth(rows, rs.n), rs.n) is None


def semi_elliptic_decomposition(rs: RaySet) -> Optional[Decomposition]:
    """Split a semi-elliptic set into parabolic parts plus an elliptic rest.

    Returns None exactly when the set is not semi-elliptic.  Greedy: peel
    minimal non-elliptic subsets (each is connected parabolic or the set
    was not semi-elliptic), then validate the defining disjointness and
    arrow conditions.
    """
    _require_plain(rs)
    sc = _Scanner(rs)
    full = (1 << rs.n) - 1
    parts: List[int] = []
    rest = full
    while rest and not sc.elliptic(rest):
        part = _minimal_non_elliptic(sc, rest)
        if sc.component_kind(part) != _PAR:
            return None  # a Lanner-type core: not semi-elliptic
        parts.append(part)
        rest &= ~part
    # validate: parts pairwise disjoint divisorially, no arrow from rest into parts
    for a in range(len(parts)):
        for b in range(a + 1, len(parts)):
            if _joined(sc, parts[a], parts[b]):
                return None
    for part in parts:
        for e in sc.indices(rest):
            for p in sc.indices(part):
                if rs.m[e][p] > 0:
                    return None
    return Decomposition(
        parabolic_parts=tuple(sc.indices(p) for p in parts),
        elliptic_part=sc.indices(rest),
    )


def _joined(sc: _Scanner, mask_a: int, mask_b: int) -> bool:
    for i in sc.indices(mask_a):
        if sc.adj[i] & mask_b:
            return True
    return False


def _minimal_non_elliptic(sc: _Scanner, mask: int) -> int:
    """Smallest (cardinality, then lexicographic) non-elliptic subset of mask."""
    idx = sc.indices(mask)
    from itertools import combinations

    for size in range(2, len(idx) + 1):
        for combo in combinations(idx, size):
            sub = 0
            for i in combo:
                sub |= 1 << i
            if not sc.elliptic(sub):
                return sub
    raise AssertionError("called on an elliptic mask")


@dataclass(frozen=True)
class MinimalNonSemiEllipticReport:
    precondition_ok: bool
    detail: str
    quasi_lanner: bool = False
    subset_structure_ok: bool = False


def minimal_non_semi_elliptic_check(rs: RaySet) -> MinimalNonSemiEllipticReport:
    """For a minimal non-semi-elliptic set: confirm it is quasi-Lanner and that
    every proper subset is elliptic or is connected parabolic of size n-1."""
    _require_plain(rs)
    if is_semi_elliptic(rs):
        return MinimalNonSemiEllipticReport(False, "input is semi-elliptic")
    sc = _Scanner(rs)
    full = (1 << rs.n) - 1
    sub = (full - 1) & full
    while sub:
        if sub != full:
            srs = rs.restrict(sc.indices(sub))
            if not is_semi_elliptic(srs):
                return MinimalNonSemiEllipticReport(
                    False,
                    f"proper subset {sc.indices(sub)} is already not semi-elliptic",
                )
        sub = (sub - 1) & full
    quasi = is_quasi_lanner(rs)
    ok = True
    sub = (full - 1) & full
    while sub:
        if sub != full:
            if not sc.elliptic(sub):
                size = bin(sub).count("1")
                if not (size == rs.n - 1 and sc.component_kind(sub) == _PAR):
                    ok = False
                    break
        sub = (sub - 1) & full
    return MinimalNonSemiEllipticReport(True, "", quasi, ok)


def classify(rs: RaySet) -> Classification:
    """Assign the unique primary label, with witness data as applicable."""
    _require_plain(rs)
    sc = _Scanner(rs)
    full = (1 << rs.n) - 1

    ok, w = is_elliptic(rs)
    if ok:
        return Classification(DiagramClass.ELLIPTIC, witness=w)

    ok, kern = is_connected_parabolic(rs)
    if ok:
        return Classification(DiagramClass.CONNECTED_PARABOLIC, kernel=kern)

    comps = mask_components(sc.adj, full)
    if len(comps) > 1 and all(sc.component_kind(c) == _PAR for c in comps):
        vec = [Fraction(0)] * rs.n
        for c in comps:
            idx = sc.indices(c)
            part = normalize_positive(
                _kernel_vector(_sub_rows(sc.rows, idx), len(idx))
            )
            for p, i in enumerate(idx):
                vec[i] = part[p]
        return Classification(
            DiagramClass.PARABOLIC, kernel=_witness(rs, tuple(vec))
        )

    witness = _growth_witness(rs, sc.rows, positive=True) if rs.n >= 2 else None
    if witness is not None:
        if sc.maximal_subsets_elliptic(full):
            return Classification(DiagramClass.LANNER, witness=witness)
        if sc.all_proper_ell_or_par(full):
            return Classification(DiagramClass.QUASI_LANNER, witness=witness)

    nonsemi = _growth_witness(rs, sc.rows, positive=False)
    if nonsemi is None:
        decomp = semi_elliptic_decomposition(rs)
        if decomp is None:
            raise AssertionError("semi-elliptic set without decomposition")
        return Classification(DiagramClass.SEMI_ELLIPTIC, decomposition=decomp)
    return Classification(
        DiagramClass.NOT_SEMI_ELLIPTIC,
        witness=nonsemi,
        reason="a non-negative combination grows somewhere and shrinks nowhere",
    )


# -- brute-force oracle -------------------------------------------------------


DEFAULT_ORACLE_BOUND = 7


class OracleBoundError(ValueError):
    pass


class _Oracle:
    """Fourier-Motzkin-only classification; no determinant shortcuts."""

    def __init__(self, rs: RaySet):
        self.rs = rs
        self.rows = _int_rows(rs)
        self.adj = _adjacency_bits(rs)
        self.ell: Dict[int, bool] = {}
        self.cp: Dict[int, bool] = {}

    def indices(self, mask):
        return tuple(i for i in range(self.rs.n) if mask >> i & 1)

    def elliptic(self, mask: int) -> bool:
        got = self.ell.get(mask)
        if got is None:
            idx = self.indices(mask)
            sub = _sub_rows(self.rows, idx)
            got = fm_feasible(_system_nonneg_nonzero(sub, len(idx)), len(idx)) is None
            self.ell[mask] = got
        return got

    def connected_parabolic(self, mask: int) -> bool:
        got = self.cp.get(mask)
        if got is not None:
            return got
        idx = self.indices(mask)
        k = len(idx)
        ok = k >= 2 and len(mask_components(self.adj, mask)) == 1
        if ok:
            sub = (mask - 1) & mask
            while ok and sub:
                if sub != mask and not self.elliptic(sub):
                    ok = False
                sub = (sub - 1) & mask
        if ok:
            srows = _sub_rows(self.rows, idx)
            ok = fm_feasible(_system_kernel(srows, k), k) is not None
        self.cp[mask] = ok
        return ok

    def parabolic(self, mask: int) -> bool:
        return all(
            self.connected_parabolic(c) for c in mask_components(self.adj, mask)
        )

    def growth(self, mask: int, positive: bool) -> bool:
        idx = self.indices(mask)
        sub = _sub_rows(self.rows, idx)
        system = (
            _system_positive_growth(sub, len(idx))
            if positive
            else _system_nonneg_growth(sub, len(idx))
        )
        return fm_feasible(system, len(idx)) is not None


def oracle_classify(rs: RaySet, bound: int = DEFAULT_ORACLE_BOUND) -> DiagramClass:
    _require_plain(rs)
    if rs.n > bound:
        raise OracleBoundError(f"oracle bound {bound} exceeded (n={rs.n})")
    orc = _Oracle(rs)
    full = (1 << rs.n) - 1
    if orc.elliptic(full):
        return DiagramClass.ELLIPTIC
    if orc.connected_parabolic(full):
        return DiagramClass.CONNECTED_PARABOLIC
    if orc.parabolic(full):
        return DiagramClass.PARABOLIC
    if rs.n >= 2 and orc.growth(full, positive=True):
        all_ell = True
        all_ell_or_par = True
        sub = (full - 1) & full
        while sub and all_ell_or_par:
            if sub != full:
                if not orc.elliptic(sub):
                    all_ell = False
                    if not orc.parabolic(sub):
                        all_ell_or_par = False
            sub = (sub - 1) & full
        if all_ell:
            return DiagramClass.LANNER
        if all_ell_or_par:
            return DiagramClass.QUASI_LANNER
    if not orc.growth(full, positive=False):
        return DiagramClass.SEMI_ELLIPTIC
    return DiagramClass.NOT_SEMI_ELLIPTIC
