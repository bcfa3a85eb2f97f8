"""Structural typing of ray-set graphs.

Special rays (blacks, dotted-pair members, single-arrow endpoints) fall
into a short list of component patterns; connected sets whose proper
subsets are elliptic fall into the six-type grammar A/B/C/D/E/E'.
Both classifications are purely combinatorial.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum
from itertools import combinations
from typing import Dict, List, Optional, Sequence, Set, Tuple

from .classifier import is_elliptic
from .raygraph import RaySet, TYPE_II, arrows, components, divisorially_joint


class ShapeError(ValueError):
    pass


class SpecialComponentType(Enum):
    A1 = "A1"
    B2 = "B2"
    CN = "Cn"
    B2CN = "B2Cn"
    T3 = "T3"
    T3P = "T3'"


class ShapeType(Enum):
    A = "A"
    B = "B"
    C = "C"
    D = "D"
    E = "E"
    E_PRIME = "E'"
    UNCLASSIFIED = "unclassified"


@dataclass(frozen=True)
class SpecialComponent:
    vertices: Tuple[int, ...]
    type: SpecialComponentType
    n: int  # the subscript in the pattern name


def special_rays(rs: RaySet) -> Set[int]:
    """Blacks, dotted-pair members and endpoints of single arrows."""
    out = {i for i in range(rs.n) if rs.kinds[i].black}
    for pair in rs.dotted:
        out |= set(pair)
    for a in arrows(rs):
        if a.single:
            out.add(a.start)
            out.add(a.end)
    return out


def _single_arrows(rs: RaySet):
    return [(a.start, a.end) for a in arrows(rs) if a.single]


def special_components(rs: RaySet) -> List[SpecialComponent]:
    """Connected components of the special subgraph, matched to their patterns.

    Raises ShapeError on a component outside the pattern list (such an
    input cannot arise from the geometry the patterns describe).
    """
    if rs.mode != "cy":
        raise ShapeError("special component typing expects cy mode")
    spec = sorted(special_rays(rs))
    sub = rs.restrict(spec)
    singles = _single_arrows(rs)
    out = []
    for comp in components(sub):
        verts = tuple(spec[i] for i in comp)
        out.append(_match_component(rs, verts, singles))
    return out


def _match_component(rs, verts, singles) -> SpecialComponent:
    vset = set(verts)
    blacks = [v for v in verts if rs.kinds[v].black]
    dotted = [tuple(sorted(p)) for p in rs.dotted if set(p) <= vset]
    singles_in = [(s, t) for s, t in singles if s in vset and t in vset]

    def fail(msg):
        raise ShapeError(f"special component {verts} matches no pattern: {msg}")

    if blacks:
        if len(verts) == 1:
            return SpecialComponent(verts, SpecialComponentType.A1, 1)
        fail("a black vertex must be isolated among special rays")
    if len(verts) == 1:
        fail("an isolated white special vertex")

    pairwise_joint = {
        (a, b)
        for a, b in combinations(verts, 2)
        if divisorially_joint(rs, a, b)
    }

    if dotted:
        if len(dotted) > 1:
            fail("two dotted pairs in one component")
        q11, q12 = dotted[0]
        if len(verts) == 2:
            if singles_in:
                fail("dotted pair with a single arrow inside")
            return SpecialComponent(verts, SpecialComponentType.B2, 2)
        # B2Cn: tails -> single arrows into one pair member, non-single to the other
        for hub, mate in ((q11, q12), (q12, q11)):
            tails = [v for v in verts if v not in (hub, mate)]
            if all((t, hub) in singles_in for t in tails) and all(
                rs.m[t][mate] > 0 and rs.m[mate][t] > 0 for t in tails
            ):
                extra = [
                    p for p in pairwise_joint
                    if set(p) & set(tails) and set(p) <= set(tails)
                ]
                if extra:
                    fail("tails of a B2Cn pattern must be pairwise disjoint")
                if len(singles_in) != len(tails):
                    fail("stray single arrows in a B2Cn pattern")
                return SpecialComponent(
                    verts, SpecialComponentType.B2CN, len(tails) + 1
                )
        fail("dotted pair with attachments not of B2Cn form")

    if not singles_in:
        fail("white special vertices without single arrows or dots")

    if len(verts) == 3:
        perms = [(a, b, c) for a, b, c in
                 [(x, y, z) for x in verts for y in verts for z in verts
                  if len({x, y, z}) == 3]]
        for q1, q2, q3 in perms:
            s12 = (q1, q2) in singles_in
            s23 = (q2, q3) in singles_in
            if s12 and s23 and len(singles_in) == 2:
                if rs.m[q1][q3] > 0 and rs.m[q3][q1] > 0:
                    return SpecialComponent((q1, q2, q3), SpecialComponentType.T3, 3)
            if s12 and s23 and (q3, q1) in singles_in and len(singles_in) == 3:
                return SpecialComponent((q1, q2, q3), SpecialComponentType.T3P, 3)

    # Cn: hub receiving single arrows from pairwise-disjoint tails
    heads = {t for _, t in singles_in}
    if len(heads) == 1:
        hub = next(iter(heads))
        tails = [v for v in verts if v != hub]
        if (
            all((t, hub) in singles_in for t in tails)
            and len(singles_in) == len(tails)
            and not any(
                set(p) <= set(tails) for p in pairwise_joint
            )
        ):
            return SpecialComponent(verts, SpecialComponentType.CN, len(verts))
    fail("not an A1/B2/Cn/B2Cn/T3/T3' pattern")


def is_chain(rs: RaySet, indices: Sequence[int]) -> bool:
    """Consecutive members non-single both ways, the rest divisorially disjoint."""
    idx = list(indices)
    if len(idx) != len(set(idx)):
        raise ShapeError("chain indices must be distinct")
    for v in idx:
        if not 0 <= v < rs.n:
            raise IndexError("chain index out of range")
    for a, b in zip(idx, idx[1:]):
        if not (rs.m[a][b] > 0 and rs.m[b][a] > 0):
            return False
    for i, j in combinations(range(len(idx)), 2):
        if j - i > 1 and divisorially_joint(rs, idx[i], idx[j]):
            return False
    return True


def _path_order(rs: RaySet, verts: Sequence[int]) -> Optional[List[int]]:
    """Order vertices as a chain (non-single adjacency), or None."""
    verts = list(verts)
    if len(verts) == 1:
        return verts
    adj = {
        v: [
            w
            for w in verts
            if w != v and rs.m[v][w] > 0 and rs.m[w][v] > 0
        ]
        for v in verts
    }
    ends = [v for v in verts if len(adj[v]) == 1]
    if any(len(adj[v]) > 2 for v in verts) or len(ends) != 2:
        return None
    order = [ends[0]]
    prev = None
    while len(order) < len(verts):
        nxt = [w for w in adj[order[-1]] if w != prev]
        if len(nxt) != 1:
            return None
        prev = order[-1]
        order.append(nxt[0])
    if not is_chain(rs, order):
        return None
    return order


def shape_type(rs: RaySet, debug_check: bool = False) -> Tuple[ShapeType, str]:
    """Assign the grammar type of a connected set whose proper subsets are elliptic.

    The ellipticity precondition is the caller's job (it is re-verified
    only with debug_check=True); connectivity and dotted-freeness are
    always enforced.
    """
    if rs.dotted:
        raise ShapeError("shape typing expects no dotted pairs")
    if len(components(rs)) != 1:
        raise ShapeError("shape typing expects a divisorially connected set")
    if debug_check:
        for size in range(1, rs.n):
            for combo in combinations(range(rs.n), size):
                if not is_elliptic(rs.restrict(combo))[0]:
                    raise ShapeError(f"proper subset {combo} is not elliptic")

    blacks = [i for i in range(rs.n) if rs.kinds[i].black]
    singles = _single_arrows(rs)

    if not blacks and not singles:
        return ShapeType.A, "all type II, no single arrows"

    if blacks:
        if len(blacks) > 1:
            return ShapeType.UNCLASSIFIED, "more than one type I vertex"
        if singles:
            return ShapeType.UNCLASSIFIED, "type I vertex plus single arrows"
        order = _path_order(rs, range(rs.n))
        if order is None:
            return ShapeType.UNCLASSIFIED, "type I vertex outside a chain"
        if order[-1] == blacks[0]:
            order.reverse()
        if order[0] != blacks[0]:
            return ShapeType.UNCLASSIFIED, "type I vertex is not terminal"
        return ShapeType.D, "chain led by the type I vertex"

    if rs.n == 3 and len(singles) in (2, 3):
        comp = _match_triangle(rs, singles)
        if comp is not None:
            return comp

    heads = {t for _, t in singles}
    if len(heads) == 1:
        hub = next(iter(heads))
        if all(t == hub for _, t in singles):
            got = _match_hub_chains(rs, hub, singles)
            if got is not None:
                return got

    got = _match_type_c(rs, singles)
    if got is not None:
        return got
    return ShapeType.UNCLASSIFIED, "single arrows outside the B/C/E patterns"


def _match_triangle(rs, singles):
    verts = range(3)
    for q1 in verts:
        for q2 in verts:
            for q3 in verts:
                if len({q1, q2, q3}) != 3:
                    continue
                if set(singles) == {(q1, q2), (q2, q3)}:
                    if rs.m[q1][q3] > 0 and rs.m[q3][q1] > 0:
                        return ShapeType.E, "triangle"
                if set(singles) == {(q1, q2), (q2, q3), (q3, q1)}:
                    return ShapeType.E_PRIME, "special triangle"
    return None


def _match_hub_chains(rs, hub, singles):
    starts = {s for s, _ in singles}
    rest = [v for v in range(rs.n) if v != hub]
    # hub may touch the chains only through the single arrows
    for v in rest:
        if rs.m[hub][v] > 0:
            return None
    sub = rs.restrict(rest)
    for comp in components(sub):
        verts = [rest[i] for i in comp]
        order = _path_order(rs, verts)
        if order is None:
            return None
        touching = [v for v in verts if v in starts]
        if len(touching) != 1 or touching[0] not in (order[0], order[-1]):
            return None
    return ShapeType.B, "hub fed by disjoint chains through single arrows"


def _match_type_c(rs, singles):
    if len(singles) != 1:
        return None
    r2, r1 = singles[0]  # single arrow R2 -> R1
    third = [
        v
        for v in range(rs.n)
        if v not in (r1, r2)
        and rs.m[v][r1] > 0 and rs.m[r1][v] > 0
        and rs.m[v][r2] > 0 and rs.m[r2][v] > 0
    ]
    if len(third) != 1:
        return None
    r3 = third[0]
    tail = [v for v in range(rs.n) if v not in (r1, r2)]
    order = _path_order(rs, tail) if tail else [r3]
    if order is None:
        return None
    if order[-1] == r3:
        order.reverse()
    if order[0] != r3:
        return None
    for v in order[1:]:
        if divisorially_joint(rs, v, r1) or divisorially_joint(rs, v, r2):
            return None
    return ShapeType.C, "single arrow head joined to a chain through one vertex"


def full_graph_elliptic_max(max_weight: int) -> int:
    """Largest elliptic all-type-II set whose graph has every ordered pair as an arrow.

    Exhaustive per size; stopping is sound because a full subgraph of a
    full elliptic graph is full and elliptic.
    """
    if max_weight < 1:
        raise ShapeError("weight bound must be at least 1")
    pairs = [
        (x, y)
        for x in range(1, max_weight + 1)
        for y in range(1, max_weight + 1)
        if x * y < 4  # a non-elliptic pair kills every superset
    ]
    best = 1
    n = 2
    while True:
        slots = list(combinations(range(n), 2))
        found = False
        for combo in _assignments(pairs, len(slots)):
            entries = {}
            for (i, j), (wij, wji) in zip(slots, combo):
                entries[(i, j)] = wij
                entries[(j, i)] = wji
            rs = RaySet.from_entries([TYPE_II] * n, entries)
            if is_elliptic(rs)[0]:
                found = True
                break
        if not found:
            return best
        best = n
        n += 1


def _assignments(pairs, k):
    if k == 0:
        yield ()
        return
    for rest in _assignments(pairs, k - 1):
        for p in pairs:
            yield rest + (p,)


# -- structural lints ---------------------------------------------------------


def lint_special_structure(rs: RaySet) -> List[str]:
    """Consistency warnings: configurations the structure theorems exclude.

    These are warnings, not errors: arbitrary matrices need not come from
    geometry, but a clean report is evidence of realizability.
    """
    warnings: List[str] = []
    try:
        comps = special_components(rs)
    except ShapeError as exc:
        return [str(exc)]

    where: Dict[int, SpecialComponent] = {}
    for comp in comps:
        for v in comp.vertices:
            where[v] = comp

    spec = set(where)
    attach: Dict[int, Set[int]] = {}
    for s in range(rs.n):
        if s in spec:
            continue
        z = {q for q in spec if divisorially_joint(rs, s, q)}
        if not z:
            continue
        attach[s] = z
        comps_hit = {id(where[q]) for q in z}
        if len(comps_hit) > 1:
            warnings.append(
                f"vertex {s} attaches to several special components"
            )
            continue
        comp = where[next(iter(z))]
        for q in z:
            if not (rs.m[s][q] > 0 and rs.m[q][s] > 0):
                warnings.append(
                    f"vertex {s} attaches to special ray {q} by a single arrow"
                )
        kind = comp.type
        if kind is SpecialComponentType.A1:
            pass  # one black neighbour is fine
        elif kind is SpecialComponentType.B2:
            if z != set(comp.vertices):
                warnings.append(
                    f"vertex {s} attaches to only part of dotted pair {comp.vertices}"
                )
        elif kind is SpecialComponentType.CN:
            hub = _cn_hub(rs, comp)
            tails = set(comp.vertices) - {hub}
            if comp.n == 2 and z == set(comp.vertices):
                pass
            elif len(z) == 1 and z <= tails:
                pass
            else:
                warnings.append(
                    f"vertex {s} attaches to Cn component {comp.vertices} at {sorted(z)}"
                )
        elif kind is SpecialComponentType.B2CN:
            pair = [tuple(sorted(p)) for p in rs.dotted if set(p) <= set(comp.vertices)][0]
            tails = set(comp.vertices) - set(pair)
            if not (len(z) == 1 and z <= tails):
                warnings.append(
                    f"vertex {s} attaches to B2Cn component {comp.vertices} at {sorted(z)}"
                )
        else:  # T3 / T3'
            warnings.append(
                f"vertex {s} attaches to a {kind.value} component {comp.vertices}"
            )

    # shared attachments (the rare allowed cases all involve C2 or B2)
    items = sorted(attach.items())
    for (s, zs), (t, zt) in combinations(items, 2):
        common = zs & zt
        if not common:
            continue
        comp = where[next(iter(common))]
        if comp.type is SpecialComponentType.B2:
            continue
        if comp.type is SpecialComponentType.CN and comp.n == 2:
            full = set(comp.vertices)
            hub = _cn_hub(rs, comp)
            tail = full - {hub}
            if zs == full or zt == full:
                continue
            if zs == zt == tail:
                warnings.append(
                    f"vertices {s},{t} both attach only to the C2 tail {sorted(tail)}"
                )
                continue
        warnings.append(
            f"vertices {s},{t} share special attachment {sorted(common)} "
            f"on a {comp.type.value} component"
        )
    return warnings


def _cn_hub(rs: RaySet, comp: SpecialComponent) -> int:
    for s, t in _single_arrows(rs):
        if t in comp.vertices and s in comp.vertices:
            return t
    raise AssertionError("Cn component without single arrows")
