"""Ray sets: vertex-typed exact-rational intersection matrices and their oriented graphs.

A ray set models a finite family of divisorial rays by the matrix
``m[i][j]`` = (curve generator of ray i) . (divisor of ray j).  Diagonal
entries are forced by the vertex kind (-2 for white / type II vertices,
-k for black / type I vertices), off-diagonal entries are non-negative,
and a "dotted" pair marks two white vertices sharing one divisor, encoded
as -2 in both off-diagonal slots.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Optional, Sequence, Tuple, Union

INFINITY = math.inf

RationalLike = Union[int, str, Fraction]


class RaySetError(ValueError):
    """Invariant violation while building a ray set."""


class ParseError(ValueError):
    """Malformed `rayset v1` input; carries a 1-based line number."""

    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


@dataclass(frozen=True)
class RayKind:
    """Vertex kind: type II (white) or type I (black) with weight k in {1,2,3}."""

    black: bool
    k: int = 2

    def __post_init__(self):
        if self.black and self.k not in (1, 2, 3):
            raise RaySetError(f"type I weight must be 1, 2 or 3, got {self.k}")
        if not self.black and self.k != 2:
            raise RaySetError("type II vertices carry no weight parameter")

    @property
    def diagonal(self) -> Fraction:
        return Fraction(-self.k)

    def __str__(self):
        return f"I k={self.k}" if self.black else "II"


TYPE_II = RayKind(False)


def type_i(k: int) -> RayKind:
    return RayKind(True, k)


def _frac(value: RationalLike) -> Fraction:
    if isinstance(value, Fraction):
        return value
    return Fraction(value)


@dataclass(frozen=True)
class RaySet:
    """Immutable ray set: kinds, dotted pairs and the full intersection matrix."""

    n: int
    kinds: Tuple[RayKind, ...]
    dotted: frozenset  # frozenset of 2-element frozensets of indices
    m: Tuple[Tuple[Fraction, ...], ...]
    mode: str = "cy"  # "cy" or "general"

    # -- construction ---------------------------------------------------

    @staticmethod
    def from_entries(
        kinds: Sequence[RayKind],
        entries: Mapping[Tuple[int, int], RationalLike] = (),
        dotted: Iterable[Tuple[int, int]] = (),
        mode: str = "cy",
    ) -> "RaySet":
        """Build from vertex kinds plus sparse off-diagonal entries."""
        n = len(kinds)
        if n < 1:
            raise RaySetError("a ray set needs at least one vertex")
        if mode not in ("cy", "general"):
            raise RaySetError(f"unknown mode {mode!r}")
        dotted_set = set()
        for pair in dotted:
            i, j = pair
            if i == j or not (0 <= i < n and 0 <= j < n):
                raise RaySetError(f"bad dotted pair {pair}")
            if kinds[i].black or kinds[j].black:
                raise RaySetError("dotted pairs connect two type II vertices only")
            dotted_set.add(frozenset((i, j)))
        touched = [v for p in dotted_set for v in p]
        if len(touched) != len(set(touched)):
            raise RaySetError("dotted pairs must be disjoint")

        mat = [[Fraction(0)] * n for _ in range(n)]
        for i in range(n):
            mat[i][i] = kinds[i].diagonal
        for pair in dotted_set:
            i, j = tuple(pair)
            mat[i][j] = Fraction(-2)
            mat[j][i] = Fraction(-2)
        seen = set()
        for (i, j), raw in dict(entries).items():
            if i == j:
                raise RaySetError("diagonal entries are derived, not supplied")
            if not (0 <= i < n and 0 <= j < n):
                raise RaySetError(f"entry index ({i},{j}) out of range")
            if (i, j) in seen:
                raise RaySetError(f"duplicate entry ({i},{j})")
            seen.add((i, j))
            if frozenset((i, j)) in dotted_set:
                raise RaySetError(f"entry ({i},{j}) conflicts with a dotted pair")
            value = _frac(raw)
            if value < 0:
                raise RaySetError(f"negative off-diagonal entry at ({i},{j})")
            if mode == "cy" and value.denominator != 1:
                raise RaySetError(f"non-integer entry {value} at ({i},{j}) in cy mode")
            mat[i][j] = value
        return RaySet(
            n=n,
            kinds=tuple(kinds),
            dotted=frozenset(dotted_set),
            m=tuple(tuple(row) for row in mat),
            mode=mode,
        )

    @staticmethod
    def from_matrix(
        matrix: Sequence[Sequence[RationalLike]],
        kinds: Optional[Sequence[RayKind]] = None,
        dotted: Iterable[Tuple[int, int]] = (),
        mode: str = "cy",
    ) -> "RaySet":
        """Build from a full matrix; kinds are inferred from the diagonal if omitted.

        In general mode an explicit ``kinds`` sequence keeps the supplied
        (arbitrary negative rational) diagonal as-is.
        """
        n = len(matrix)
        rows = [tuple(_frac(v) for v in row) for row in matrix]
        if any(len(row) != n for row in rows):
            raise RaySetError("matrix must be square")
        inferred = []
        for i in range(n):
            d = rows[i][i]
            if d >= 0:
                raise RaySetError(f"diagonal entry at {i} must be negative")
            if kinds is not None:
                inferred.append(kinds[i])
            elif d == -2:
                inferred.append(TYPE_II)
            elif d in (-1, -3):
                inferred.append(type_i(int(-d)))
            elif mode == "general":
                inferred.append(TYPE_II)
            else:
                raise RaySetError(f"diagonal {d} at {i} is not a cy-mode kind")
        dotted_set = frozenset(frozenset(p) for p in dotted)
        entries = {}
        for i in range(n):
            for j in range(n):
                if i == j:
                    continue
                if frozenset((i, j)) in dotted_set:
                    if rows[i][j] != -2:
                        raise RaySetError(f"dotted pair ({i},{j}) must carry -2 entries")
                    continue
                if rows[i][j] != 0:
                    entries[(i, j)] = rows[i][j]
        rs = RaySet.from_entries(inferred, entries, (tuple(p) for p in dotted_set), mode)
        if mode == "general" and kinds is not None:
            # keep the caller's diagonal (non-Calabi-Yau experiments)
            mat = [list(r) for r in rs.m]
            for i in range(n):
                mat[i][i] = rows[i][i]
            rs = RaySet(rs.n, rs.kinds, rs.dotted, tuple(tuple(r) for r in mat), mode)
        return rs

    # -- trivia ----------------------------------------------------------

    def is_dotted(self, i: int, j: int) -> bool:
        return frozenset((i, j)) in self.dotted

    def submatrix(self, indices: Sequence[int]) -> Tuple[Tuple[Fraction, ...], ...]:
        return tuple(tuple(self.m[i][j] for j in indices) for i in indices)

    def restrict(self, indices: Sequence[int]) -> "RaySet":
        """Induced sub-ray-set on the given vertices (in the given order)."""
        idx = list(indices)
        pos = {v: p for p, v in enumerate(idx)}
        dotted = [
            (pos[a], pos[b])
            for pair in self.dotted
            for a, b in [tuple(pair)]
            if a in pos and b in pos
        ]
        rs = RaySet(
            n=len(idx),
            kinds=tuple(self.kinds[i] for i in idx),
            dotted=frozenset(frozenset(p) for p in dotted),
            m=self.submatrix(idx),
            mode=self.mode,
        )
        return rs


@dataclass(frozen=True)
class Arrow:
    start: int
    end: int
    weight: Fraction
    single: bool


# -- graph operations ------------------------------------------------------


def arrows(rs: RaySet) -> Tuple[Arrow, ...]:
    """All ordered pairs (i,j) with m[i][j] > 0, flagged single iff m[j][i] = 0."""
    out = []
    for i in range(rs.n):
        for j in range(rs.n):
            if i != j and rs.m[i][j] > 0:
                out.append(Arrow(i, j, rs.m[i][j], rs.m[j][i] == 0))
    return tuple(out)


def divisorially_joint(rs: RaySet, i: int, j: int) -> bool:
    """True iff the two rays' divisors meet: an arrow either way or a dotted pair."""
    if i == j:
        raise IndexError("divisorially_joint needs two distinct vertices")
    if not (0 <= i < rs.n and 0 <= j < rs.n):
        raise IndexError("vertex index out of range")
    return rs.m[i][j] > 0 or rs.m[j][i] > 0 or rs.is_dotted(i, j)


def _state(rs: RaySet) -> dict:
    """Per-instance cache (graph data derived from the immutable matrix)."""
    cache = getattr(rs, "_rdcache", None)
    if cache is None:
        cache = {}
        object.__setattr__(rs, "_rdcache", cache)
    return cache


def _adjacency_bits(rs: RaySet) -> Tuple[int, ...]:
    """Undirected divisorial adjacency as bitmasks."""
    cache = _state(rs)
    bits = cache.get("adj")
    if bits is None:
        bits = [0] * rs.n
        for i in range(rs.n):
            for j in range(rs.n):
                if i != j and (
                    rs.m[i][j] > 0 or rs.m[j][i] > 0 or rs.is_dotted(i, j)
                ):
                    bits[i] |= 1 << j
        bits = tuple(bits)
        cache["adj"] = bits
    return bits


def _out_adjacency(rs: RaySet) -> Tuple[Tuple[int, ...], ...]:
    cache = _state(rs)
    adj = cache.get("out")
    if adj is None:
        adj = tuple(
            tuple(j for j in range(rs.n) if j != i and rs.m[i][j] > 0)
            for i in range(rs.n)
        )
        cache["out"] = adj
    return adj


def components(rs: RaySet) -> Tuple[Tuple[int, ...], ...]:
    """Divisorially connected components, each sorted, in order of smallest member."""
    adj = _adjacency_bits(rs)
    seen = 0
    comps = []
    for start in range(rs.n):
        if seen >> start & 1:
            continue
        frontier = 1 << start
        comp = 0
        while frontier:
            comp |= frontier
            nxt = 0
            f = frontier
            while f:
                v = (f & -f).bit_length() - 1
                f &= f - 1
                nxt |= adj[v]
            frontier = nxt & ~comp
        seen |= comp
        comps.append(tuple(i for i in range(rs.n) if comp >> i & 1))
    return tuple(comps)


def mask_components(adj: Sequence[int], mask: int) -> Tuple[int, ...]:
    """Connected components of the adjacency restricted to ``mask`` (as bitmasks)."""
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
                nxt |= adj[v] & mask
            frontier = nxt & ~comp
        comps.append(comp)
        rest &= ~comp
    return tuple(comps)


def distance(rs: RaySet, i: int, j: int):
    """Length of the shortest oriented arrow path from i to j (inf if none)."""
    if not (0 <= i < rs.n and 0 <= j < rs.n):
        raise IndexError("vertex index out of range")
    return _bfs_row(rs, i)[j]


def _bfs_row(rs: RaySet, i: int) -> Tuple[float, ...]:
    cache = _state(rs).setdefault("bfs", {})
    row = cache.get(i)
    if row is not None:
        return row
    adj = _out_adjacency(rs)
    dist = [INFINITY] * rs.n
    dist[i] = 0
    queue = [i]
    while queue:
        nxt = []
        for v in queue:
            step = dist[v] + 1
            for w in adj[v]:
                if dist[w] == INFINITY:
                    dist[w] = step
                    nxt.append(w)
        queue = nxt
    row = tuple(dist)
    cache[i] = row
    return row


def diameter(rs: RaySet):
    """Maximum oriented distance over ordered vertex pairs (0 for a single vertex)."""
    best = 0
    for i in range(rs.n):
        row = _bfs_row(rs, i)
        for j in range(rs.n):
            if row[j] > best:
                best = row[j]
    return best


def prune_special(rs: RaySet):
    """Drop type I vertices and heads of single arrows.

    Returns the surviving sub-ray-set together with the list mapping its
    positions back to the original indices.  The result has no single
    arrows among its vertices.
    """
    heads = set()
    for a in arrows(rs):
        if a.single:
            heads.add(a.end)
    keep = [
        v for v in range(rs.n) if not rs.kinds[v].black and v not in heads
    ]
    if not keep:
        return None, ()
    return rs.restrict(keep), tuple(keep)


def _pruned(rs: RaySet):
    cache = _state(rs)
    got = cache.get("pruned")
    if got is None:
        got = prune_special(rs)
        cache["pruned"] = got
    return got


def distance_A(rs: RaySet, i: int, j: int):
    """Symmetric distance within the pruned ray set; inf when a vertex is pruned."""
    if not (0 <= i < rs.n and 0 <= j < rs.n):
        raise IndexError("vertex index out of range")
    if i == j:
        return 0
    sub, keep = _pruned(rs)
    if sub is None or i not in keep or j not in keep:
        return INFINITY
    return distance(sub, keep.index(i), keep.index(j))


# -- rayset v1 text format ---------------------------------------------------


def _parse_rational(token: str, lineno: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError(lineno, f"bad rational {token!r}") from None


def parse_rayset(text: Union[str, bytes]) -> RaySet:
    """Parse the line-oriented `rayset v1` format."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    lines = text.splitlines()
    header_seen = False
    mode = "cy"
    n = None
    kinds: dict = {}
    dotted = []
    entries = {}
    for lineno, raw in enumerate(lines, start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not header_seen:
            if line != "rayset v1":
                raise ParseError(lineno, "expected header 'rayset v1'")
            header_seen = True
            continue
        parts = line.split()
        word = parts[0]
        if word == "mode":
            if len(parts) != 2 or parts[1] not in ("cy", "general"):
                raise ParseError(lineno, "mode must be 'cy' or 'general'")
            mode = parts[1]
        elif word == "n":
            if n is not None:
                raise ParseError(lineno, "duplicate n line")
            if len(parts) != 2 or not parts[1].isdigit() or int(parts[1]) < 1:
                raise ParseError(lineno, "n needs a positive vertex count")
            n = int(parts[1])
        elif word == "vertex":
            if n is None:
                raise ParseError(lineno, "vertex before n")
            if len(parts) < 3:
                raise ParseError(lineno, "vertex needs an index and a kind")
            try:
                idx = int(parts[1])
            except ValueError:
                raise ParseError(lineno, f"bad vertex index {parts[1]!r}") from None
            if not 0 <= idx < n:
                raise ParseError(lineno, f"vertex index {idx} out of range")
            if idx in kinds:
                raise ParseError(lineno, f"duplicate vertex {idx}")
            if parts[2] == "II" and len(parts) == 3:
                kinds[idx] = TYPE_II
            elif parts[2] == "I" and len(parts) == 4 and parts[3].startswith("k="):
                try:
                    k = int(parts[3][2:])
                except ValueError:
                    raise ParseError(lineno, f"bad weight {parts[3]!r}") from None
                if k not in (1, 2, 3):
                    raise ParseError(lineno, "type I weight must be 1, 2 or 3")
                kinds[idx] = type_i(k)
            else:
                raise ParseError(lineno, "vertex kind must be 'II' or 'I k=<1|2|3>'")
        elif word == "pair":
            if n is None:
                raise ParseError(lineno, "pair before n")
            if len(parts) != 3:
                raise ParseError(lineno, "pair needs two indices")
            try:
                i, j = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(lineno, "bad pair indices") from None
            dotted.append((i, j))
        elif word == "m":
            if n is None:
                raise ParseError(lineno, "m before n")
            if len(parts) != 4:
                raise ParseError(lineno, "m needs two indices and a value")
            try:
                i, j = int(parts[1]), int(parts[2])
            except ValueError:
                raise ParseError(lineno, "bad m indices") from None
            if i == j:
                raise ParseError(lineno, "diagonal m lines are rejected")
            if not (0 <= i < n and 0 <= j < n):
                raise ParseError(lineno, f"m index ({i},{j}) out of range")
            if (i, j) in entries:
                raise ParseError(lineno, f"duplicate m entry ({i},{j})")
            entries[(i, j)] = _parse_rational(parts[3], lineno)
        else:
            raise ParseError(lineno, f"unknown directive {word!r}")
    if not header_seen:
        raise ParseError(1, "empty input, expected 'rayset v1'")
    if n is None:
        raise ParseError(len(lines) or 1, "missing n line")
    kind_list = [kinds.get(i, TYPE_II) for i in range(n)]
    try:
        return RaySet.from_entries(kind_list, entries, dotted, mode)
    except RaySetError as exc:
        raise ParseError(len(lines) or 1, str(exc)) from None


def serialize_rayset(rs: RaySet) -> str:
    """Write a RaySet back out in `rayset v1` form (round-trips exactly)."""
    out = ["rayset v1", f"mode {rs.mode}", f"n {rs.n}"]
    for i, kind in enumerate(rs.kinds):
        out.append(f"vertex {i} {kind}")
    for pair in sorted(tuple(sorted(p)) for p in rs.dotted):
        out.append(f"pair {pair[0]} {pair[1]}")
    for i in range(rs.n):
        for j in range(rs.n):
            if i != j and not rs.is_dotted(i, j) and rs.m[i][j] != 0:
                out.append(f"m {i} {j} {rs.m[i][j]}")
    return "\n".join(out) + "\n"
