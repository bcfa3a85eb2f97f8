"""Weighted-angle check on simple polytopes and the resulting dimension bound.

Purely combinatorial: a polytope is its vertex/facet incidence plus the
2-faces as vertex cycles.  Oriented angles at a vertex are ordered pairs
of its facets; the 2-face through a vertex leaves exactly two facets
free, and those two (in both orders) are the face's angles there.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Tuple


class PolytopeError(ValueError):
    def __init__(self, message, line: Optional[int] = None):
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


_WEIGHTS = {Fraction(0), Fraction(1, 2), Fraction(1)}


@dataclass(frozen=True)
class WeightedPolytope:
    dim: int
    facet_count: int
    vertex_facets: Tuple[Tuple[int, ...], ...]  # per vertex, sorted facet ids
    angles: Tuple[Tuple[int, int, int, Fraction], ...]  # (vertex, A, B, weight)
    faces2: Tuple[Tuple[int, ...], ...]  # vertex cycles

    def angle_weight(self, vertex: int, a: int, b: int) -> Fraction:
        return self._angle_map().get((vertex, a, b), Fraction(0))

    def _angle_map(self) -> Dict[Tuple[int, int, int], Fraction]:
        if not hasattr(self, "_amap"):
            object.__setattr__(
                self,
                "_amap",
                {(v, a, b): w for v, a, b, w in self.angles},
            )
        return self._amap  # type: ignore[attr-defined]


def build_polytope(dim, facet_count, vertex_facets, angles, faces2) -> WeightedPolytope:
    vertex_facets = tuple(tuple(sorted(f)) for f in vertex_facets)
    for v, facets in enumerate(vertex_facets):
        if len(facets) != dim:
            raise PolytopeError(f"vertex {v} lies on {len(facets)} facets, needs {dim}")
        if len(set(facets)) != dim:
            raise PolytopeError(f"vertex {v} repeats a facet")
        if any(not 0 <= f < facet_count for f in facets):
            raise PolytopeError(f"vertex {v} uses an unknown facet")
    amap = {}
    for v, a, b, w in angles:
        w = Fraction(w)
        if w not in _WEIGHTS:
            raise PolytopeError(f"angle weight {w} not in {{0, 1/2, 1}}")
        if not 0 <= v < len(vertex_facets):
            raise PolytopeError(f"angle at unknown vertex {v}")
        if a == b or a not in vertex_facets[v] or b not in vertex_facets[v]:
            raise PolytopeError(f"angle facets ({a},{b}) do not meet vertex {v}")
        if (v, a, b) in amap:
            raise PolytopeError(f"duplicate angle {v} {a} {b}")
        amap[(v, a, b)] = w
    for cycle in faces2:
        if len(cycle) < 3:
            raise PolytopeError(f"2-face {cycle} needs at least 3 vertices")
        if len(set(cycle)) != len(cycle):
            raise PolytopeError(f"2-face {cycle} repeats a vertex")
        common = set(vertex_facets[cycle[0]])
        for v in cycle[1:]:
            common &= set(vertex_facets[v])
        if len(common) != dim - 2:
            raise PolytopeError(
                f"2-face {cycle} has {len(common)} common facets, needs {dim - 2}"
            )
        for a, b in zip(cycle, cycle[1:] + type(cycle)((cycle[0],))):
            shared = set(vertex_facets[a]) & set(vertex_facets[b])
            if len(shared) != dim - 1:
                raise PolytopeError(f"consecutive face vertices {a},{b} share no edge")
    return WeightedPolytope(
        dim,
        facet_count,
        vertex_facets,
        tuple((v, a, b, Fraction(w)) for v, a, b, w in angles),
        tuple(tuple(c) for c in faces2),
    )


def parse_polytope(text) -> WeightedPolytope:
    """Parse the line-oriented `polytope v1` format."""
    if isinstance(text, bytes):
        text = text.decode("utf-8")
    dim = facets = None
    vertex_facets: Dict[int, List[int]] = {}
    angles = []
    faces2 = []
    header = False
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if not header:
            if line != "polytope v1":
                raise PolytopeError("expected header 'polytope v1'", lineno)
            header = True
            continue
        parts = line.split()
        try:
            if parts[0] == "dim":
                dim = int(parts[1])
            elif parts[0] == "facets":
                facets = int(parts[1])
            elif parts[0] == "vertex":
                if parts[2] != "on":
                    raise PolytopeError("vertex line needs 'on'", lineno)
                vid = int(parts[1])
                if vid in vertex_facets:
                    raise PolytopeError(f"duplicate vertex {vid}", lineno)
                vertex_facets[vid] = [int(x) for x in parts[3:]]
            elif parts[0] == "angle":
                v, a, b = int(parts[1]), int(parts[2]), int(parts[3])
                angles.append((v, a, b, Fraction(parts[4])))
            elif parts[0] == "face2":
                faces2.append(tuple(int(x) for x in parts[1:]))
            else:
                raise PolytopeError(f"unknown directive {parts[0]!r}", lineno)
        except (IndexError, ValueError, ZeroDivisionError) as exc:
            if isinstance(exc, PolytopeError):
                raise
            raise PolytopeError(f"malformed line: {line!r}", lineno) from None
    if not header:
        raise PolytopeError("empty input", 1)
    if dim is None or facets is None:
        raise PolytopeError("missing dim or facets line")
    if set(vertex_facets) != set(range(len(vertex_facets))):
        raise PolytopeError("vertex ids must be 0..count-1")
    ordered = [vertex_facets[i] for i in range(len(vertex_facets))]
    try:
        return build_polytope(dim, facets, ordered, angles, faces2)
    except PolytopeError:
        raise


@dataclass(frozen=True)
class VinbergReport:
    vertex_condition_ok: bool
    face_condition_ok: bool
    failed_vertex: Optional[int]
    failed_face: Optional[int]
    bound: Optional[Fraction]
    bound_text: str


def _face_angles(p: WeightedPolytope, cycle) -> List[Tuple[int, int, int]]:
    common = set(p.vertex_facets[cycle[0]])
    for v in cycle[1:]:
        common &= set(p.vertex_facets[v])
    out = []
    for v in cycle:
        extra = [f for f in p.vertex_facets[v] if f not in common]
        a, b = extra
        out.append((v, a, b))
    return out


def vinberg_check(p: WeightedPolytope, C, D) -> VinbergReport:
    """Verify the two weighted-angle conditions; on success report the bound.

    Condition (1): each vertex's oriented angle weights sum to <= C*dim + D.
    Condition (2): each k-gon 2-face carries total weight >= 5 - k.
    Bound: dim < 8C + 6 when D = 0 (C >= 0), else the parity-split form.
    """
    C, D = Fraction(C), Fraction(D)
    n = p.dim
    vertex_ok, bad_vertex = True, None
    totals: Dict[int, Fraction] = {v: Fraction(0) for v in range(len(p.vertex_facets))}
    for v, a, b, w in p.angles:
        totals[v] += w
    for v, total in totals.items():
        if total > C * n + D:
            vertex_ok, bad_vertex = False, v
            break
    face_ok, bad_face = True, None
    for idx, cycle in enumerate(p.faces2):
        total = Fraction(0)
        for v, a, b in _face_angles(p, cycle):
            total += p.angle_weight(v, a, b) + p.angle_weight(v, b, a)
        if total < 5 - len(cycle):
            face_ok, bad_face = False, idx
            break
    if not (vertex_ok and face_ok):
        return VinbergReport(vertex_ok, face_ok, bad_vertex, bad_face, None, "")
    if D == 0 and C >= 0:
        bound = 8 * C + 6
    elif n % 2 == 0:
        bound = 8 * C + 5 + 1 + 8 * D / n
    else:
        bound = 8 * C + 5 + (8 * C + 8 * D) / (n - 1)
    return VinbergReport(True, True, None, None, bound, f"n < {bound}")
