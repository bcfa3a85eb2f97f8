"""Parameterized builders for the diagram families, with closed-form predicates.

Vertex order is always the left-to-right reading order of the source
figure, a vertical column read top to bottom.  Arrow-weight labels above
an edge weight the rightward arrow, labels below the leftward arrow.
Each family records its expected class as an exact predicate in the
parameters; `enumerate_families` sweeps only parameter tuples for which
a predicate applies.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Dict, Iterator, List, Optional, Tuple

from .classifier import DiagramClass
from .raygraph import RaySet, TYPE_II, type_i


class CatalogError(ValueError):
    pass


class NoPredicateError(CatalogError):
    """The family's table rows do not cover these parameters."""


@dataclass(frozen=True)
class FamilySpec:
    family: str
    params: Tuple[Tuple[str, object], ...] = ()

    @staticmethod
    def make(family: str, **params) -> "FamilySpec":
        return FamilySpec(family, tuple(sorted(params.items())))

    def get(self, name, default=None):
        for key, value in self.params:
            if key == name:
                return value
        return default

    def __str__(self):
        inner = ",".join(f"{k}={v}" for k, v in self.params)
        return f"{self.family}({inner})" if inner else self.family


def _edges_rayset(kinds, edges) -> RaySet:
    """edges: iterable of (i, j, w_ij, w_ji)."""
    entries = {}
    for i, j, wij, wji in edges:
        if wij:
            entries[(i, j)] = wij
        if wji:
            entries[(j, i)] = wji
    return RaySet.from_entries(kinds, entries)


def _path_edges(n, start=0):
    return [(start + i, start + i + 1, 1, 1) for i in range(n - 1)]


# -- Table 4.1: finite (elliptic) diagrams ----------------------------------


def _build_An(p):
    n = p.get("n")
    return _edges_rayset([TYPE_II] * n, _path_edges(n))


def _build_Bn(p):
    n = p.get("n")
    edges = _path_edges(n)
    edges[0] = (0, 1, 1, 2)
    return _edges_rayset([TYPE_II] * n, edges)


def _build_Cn(p):
    n = p.get("n")
    edges = _path_edges(n)
    edges[0] = (0, 1, 2, 1)
    return _edges_rayset([TYPE_II] * n, edges)


def _build_Dn(p):
    n = p.get("n")
    # 0 and 2 are the prongs, 1 the fork vertex, 3.. the tail
    edges = [(0, 1, 1, 1), (1, 2, 1, 1)]
    if n > 3:
        edges.append((1, 3, 1, 1))
        edges += _path_edges(n - 3, start=3)
    return _edges_rayset([TYPE_II] * n, edges)


def _build_E(n):
    # chain 0,1,2,4,..,n-1 with the branch vertex 3 hanging below 2
    edges = [(0, 1, 1, 1), (1, 2, 1, 1), (2, 3, 1, 1), (2, 4, 1, 1)]
    edges += _path_edges(n - 4, start=4)
    return _edges_rayset([TYPE_II] * n, edges)


def _build_F4(_):
    edges = _path_edges(4)
    edges[1] = (1, 2, 2, 1)
    return _edges_rayset([TYPE_II] * 4, edges)


def _build_G2(_):
    return _edges_rayset([TYPE_II] * 2, [(0, 1, 3, 1)])


# -- Table 4.2: affine (connected parabolic) diagrams ------------------------
# expected_kernel gives the figure's vertex weights in build order.


def _build_At1(p):
    a, b = p.get("a"), p.get("b")
    return _edges_rayset([TYPE_II] * 2, [(0, 1, a, b)])


def _build_Atn(p):
    n = p.get("n")
    edges = _path_edges(n + 1) + [(0, n, 1, 1)]
    return _edges_rayset([TYPE_II] * (n + 1), edges)


def _build_Btn(p):
    n = p.get("n")
    edges = _path_edges(n + 1)
    edges[0] = (0, 1, 1, 2)
    edges[-1] = (n - 1, n, 2, 1)
    return _edges_rayset([TYPE_II] * (n + 1), edges)


def _build_BtCtn(p):
    n = p.get("n")
    edges = _path_edges(n + 1)
    edges[0] = (0, 1, 1, 2)
    edges[-1] = (n - 1, n, 1, 2)
    return _edges_rayset([TYPE_II] * (n + 1), edges)


def _build_Ctn(p):
    n = p.get("n")
    edges = _path_edges(n + 1)
    edges[0] = (0, 1, 2, 1)
    edges[-1] = (n - 1, n, 1, 2)
    return _edges_rayset([TYPE_II] * (n + 1), edges)


def _fork_chain_edges(n, last):
    # 0/2 prongs on fork vertex 1, tail 3..n, last edge weighted per `last`
    edges = [(0, 1, 1, 1), (1, 2, 1, 1), (1, 3, 1, 1)]
    edges += _path_edges(n - 2, start=3)
    i, j, _, _ = edges[-1]
    edges[-1] = (i, j, last[0], last[1])
    return edges


def _build_BtDtn(p):
    n = p.get("n")
    return _edges_rayset([TYPE_II] * (n + 1), _fork_chain_edges(n, (2, 1)))


def _build_CtDtn(p):
    n = p.get("n")
    return _edges_rayset([TYPE_II] * (n + 1), _fork_chain_edges(n, (1, 2)))


def _build_Dtn(p):
    n = p.get("n")
    # left fork 0/1/2, middle chain 3..n-3, right fork n-2/n-1/n
    edges = [(0, 1, 1, 1), (1, 2, 1, 1)]
    middle = list(range(3, n - 2))
    spine = [1] + middle + [n - 1]
    for a, b in zip(spine, spine[1:]):
        edges.append((a, b, 1, 1))
    edges += [(n - 2, n - 1, 1, 1), (n - 1, n, 1, 1)]
    return _edges_rayset([TYPE_II] * (n + 1), edges)


def _build_Et6(_):
    edges = [(0, 1, 1, 1), (1, 2, 1, 1), (2, 3, 1, 1), (3, 4, 1, 1),
             (2, 5, 1, 1), (5, 6, 1, 1)]
    return _edges_rayset([TYPE_II] * 7, edges)


def _build_Et7(_):
    edges = [(0, 1, 1, 1), (1, 2, 1, 1), (2, 3, 1, 1), (3, 4, 1, 1),
             (3, 5, 1, 1), (5, 6, 1, 1), (6, 7, 1, 1)]
    return _edges_rayset([TYPE_II] * 8, edges)


def _build_Et8(_):
    edges = [(0, 1, 1, 1), (1, 2, 1, 1), (2, 3, 1, 1), (2, 4, 1, 1),
             (4, 5, 1, 1), (5, 6, 1, 1), (6, 7, 1, 1), (7, 8, 1, 1)]
    return _edges_rayset([TYPE_II] * 9, edges)


def _build_BtFt4(_):
    edges = _path_edges(5)
    edges[2] = (2, 3, 2, 1)
    return _edges_rayset([TYPE_II] * 5, edges)


def _build_CtFt4(_):
    edges = _path_edges(5)
    edges[1] = (1, 2, 2, 1)
    return _edges_rayset([TYPE_II] * 5, edges)


def _build_AtGt2(_):
    return _edges_rayset([TYPE_II] * 3, [(0, 1, 1, 1), (1, 2, 3, 1)])


def _build_GtAt2(_):
    return _edges_rayset([TYPE_II] * 3, [(0, 1, 1, 1), (1, 2, 1, 3)])


def _kernel_At1(p):
    return (2, p.get("b"))


def _kernel_chain(first, mid, last):
    def kern(p):
        n = p.get("n")
        return (first,) + (mid,) * (n - 1) + (last,)

    return kern


def _kernel_fork(last):
    def kern(p):
        n = p.get("n")
        return (1, 2, 1) + (2,) * (n - 3) + (last,)

    return kern


def _kernel_Dtn(p):
    n = p.get("n")
    return (1, 2, 1) + (2,) * (n - 5) + (1, 2, 1)


# -- Table 4.3: Lanner diagrams without single arrows -------------------------


def _build_Lanner2(p):
    return _edges_rayset([TYPE_II] * 2, [(0, 1, p.get("t12"), p.get("t21"))])


def _build_Lanner3Path(p):
    edges = [(0, 1, p.get("t12"), p.get("t21")), (1, 2, p.get("t23"), p.get("t32"))]
    return _edges_rayset([TYPE_II] * 3, edges)


def _build_Lanner3Cycle(p):
    edges = [
        (0, 1, p.get("t12"), p.get("t21")),
        (1, 2, p.get("t23"), p.get("t32")),
        (0, 2, p.get("t13"), p.get("t31")),
    ]
    return _edges_rayset([TYPE_II] * 3, edges)


def _build_block4(bottom):
    def build(_):
        edges = [(0, 1, 1, 1), (2, 3, 1, 1), (0, 2, 2, 1), (1, 3) + bottom]
        return _edges_rayset([TYPE_II] * 4, edges)

    return build


def _build_Lanner5(_):
    edges = [(0, 1, 1, 1), (3, 4, 1, 1), (0, 3, 2, 1), (1, 2, 1, 1), (2, 4, 1, 1)]
    return _edges_rayset([TYPE_II] * 5, edges)


# -- Theorem 4.2.2.1: hub plus chains (type B), always elliptic ---------------

_CHAIN_BUILDERS = {
    "A": lambda n: (_path_edges(n), n),
    "B": lambda n: ([(0, 1, 1, 2)] + _path_edges(n)[1:], n),
    "C": lambda n: ([(0, 1, 2, 1)] + _path_edges(n)[1:], n),
    "F": lambda n: ([(0, 1, 1, 1), (1, 2, 2, 1), (2, 3, 1, 1)], 4),
    "G": lambda n: ([(0, 1, 3, 1)], 2),
}


def parse_chain_string(text: str) -> List[Tuple[str, int, int]]:
    """Parse "A3:1,B2:4" into [(type, length, weight), ...]."""
    out = []
    for item in text.split(","):
        item = item.strip()
        if not item:
            continue
        if ":" in item:
            head, weight = item.split(":", 1)
        else:
            head, weight = item, "1"
        kind, length = head[0].upper(), head[1:]
        if kind not in _CHAIN_BUILDERS or not length.isdigit():
            raise CatalogError(f"bad chain spec {item!r}")
        n, w = int(length), int(weight)
        if kind == "F" and n != 4:
            raise CatalogError("F chains have length 4")
        if kind == "G" and n != 2:
            raise CatalogError("G chains have length 2")
        if kind in ("B", "C") and n < 2:
            raise CatalogError(f"{kind} chains need length >= 2")
        if n < 1 or w < 1:
            raise CatalogError(f"bad chain spec {item!r}")
        out.append((kind, n, w))
    if not out:
        raise CatalogError("type B needs at least one chain")
    return out


def _build_TypeB(p):
    chains = parse_chain_string(p.get("chains"))
    kinds = [TYPE_II]
    edges = []
    base = 1
    for kind, length, weight in chains:
        chain_edges, size = _CHAIN_BUILDERS[kind](length)
        kinds += [TYPE_II] * size
        for i, j, wij, wji in chain_edges:
            edges.append((base + i, base + j, wij, wji))
        edges.append((base, 0, weight, 0))  # single arrow into the hub
        base += size
    return _edges_rayset(kinds, edges)


# -- Table 4.4: type (C) diagrams ---------------------------------------------
# Core: single arrow R2->R1 weighted t21, R3 joined to both by non-single arrows.


def _c_core_edges(t21, t13, t31, t23, t32):
    return [(1, 0, t21, 0), (0, 2, t13, t31), (1, 2, t23, t32)]


def _c_expr(p):
    return (
        p.get("t21") * p.get("t13") * p.get("t32")
        + 2 * p.get("t13") * p.get("t31")
        + 2 * p.get("t23") * p.get("t32")
    )


def _build_TypeC3(p):
    edges = _c_core_edges(
        p.get("t21"), p.get("t13"), p.get("t31"), p.get("t23"), p.get("t32")
    )
    return _edges_rayset([TYPE_II] * 3, edges)


def _build_c_chain(t21, tail_weights):
    """Unit core with weighted single arrow plus a chain hanging off R3."""
    edges = _c_core_edges(t21, 1, 1, 1, 1)
    prev = 2
    kinds = [TYPE_II] * (3 + len(tail_weights))
    for offset, (wij, wji) in enumerate(tail_weights):
        edges.append((prev, 3 + offset, wij, wji))
        prev = 3 + offset
    return _edges_rayset(kinds, edges)


def _build_TypeC4E(_):
    return _build_c_chain(1, [(1, 1)])


def _build_TypeC4P(_):
    return _build_c_chain(2, [(1, 1)])


def _build_TypeC4Q(p):
    edges = _c_core_edges(
        p.get("t21"), p.get("t13"), p.get("t31"), p.get("t23"), p.get("t32")
    )
    edges.append((2, 3, p.get("t34"), p.get("t43")))
    return _edges_rayset([TYPE_II] * 4, edges)


def _build_TypeC5E(_):
    return _build_c_chain(1, [(1, 1), (1, 1)])


def _build_TypeC5L(p):
    return _build_c_chain(1, [(1, 1), (p.get("t45"), p.get("t54"))])


def _build_TypeC5Q(p):
    return _build_c_chain(2, [(1, 1), (p.get("t45"), p.get("t54"))])


def _build_TypeC6P(_):
    return _build_c_chain(1, [(1, 1), (1, 1), (1, 1)])


def _build_TypeC6L(p):
    return _build_c_chain(1, [(1, 1), (1, 1), (p.get("t45"), p.get("t54"))])


def _build_TypeC7Q(p):
    return _build_c_chain(1, [(1, 1), (1, 1), (1, 1), (p.get("t45"), p.get("t54"))])


# -- Table 4.5: type (D) diagrams (black vertex first) ------------------------


def _build_dot(p, twist: Optional[Tuple[int, Tuple[int, int]]]):
    """Black vertex 0, whites 1..n; twist = (edge index in the white chain, (wij, wji))."""
    n, k, a, b = p.get("n"), p.get("k"), p.get("a"), p.get("b")
    kinds = [type_i(k)] + [TYPE_II] * n
    edges = [(0, 1, a, b)]
    chain = _path_edges(n, start=1)
    if twist is not None:
        pos, w = twist
        i, j, _, _ = chain[pos]
        chain[pos] = (i, j, w[0], w[1])
    return _edges_rayset(kinds, edges + chain)


def _dot_predicate(lo: Fraction, hi, boundary=DiagramClass.QUASI_LANNER):
    def predict(ab: Fraction) -> DiagramClass:
        if ab < lo:
            return DiagramClass.ELLIPTIC
        if ab == lo:
            return DiagramClass.CONNECTED_PARABOLIC
        if hi is None or ab < hi:
            return DiagramClass.LANNER
        if ab == hi:
            return boundary
        raise NoPredicateError("ab beyond the quasi-Lanner range")

    return predict


# -- Table 4.6: triangle and special triangle ---------------------------------


def _build_Triangle(p):
    edges = [
        (0, 1, p.get("t12"), 0),
        (1, 2, p.get("t23"), 0),
        (0, 2, p.get("t13"), p.get("t31")),
    ]
    return _edges_rayset([TYPE_II] * 3, edges)


def _build_SpecialTriangle(p):
    edges = [
        (0, 1, p.get("t12"), 0),
        (1, 2, p.get("t23"), 0),
        (2, 0, p.get("t31"), 0),
    ]
    return _edges_rayset([TYPE_II] * 3, edges)


# -- registry -----------------------------------------------------------------


@dataclass(frozen=True)
class FamilyDef:
    name: str
    table: str
    build: Callable
    predict: Callable  # params -> DiagramClass (raises NoPredicateError)
    domain: Callable  # (max_n, max_weight) -> iterator of param dicts
    expected_kernel: Optional[Callable] = None  # affine families: figure weights


def _always(cls):
    return lambda p: cls


def _weight_pairs(limit, lo=1):
    for x in range(lo, limit + 1):
        for y in range(lo, limit + 1):
            yield x, y


def _dom_simple(min_n, size_of=lambda n: n):
    def dom(max_n, _):
        n = min_n
        while size_of(n) <= max_n:
            yield {"n": n}
            n += 1

    return dom


def _dom_fixed(size):
    def dom(max_n, _):
        if size <= max_n:
            yield {}

    return dom


def _dom_At1(max_n, max_weight):
    if max_n < 2:
        return
    for a, b in _weight_pairs(max_weight):
        if a * b == 4:
            yield {"a": a, "b": b}


def _dom_Lanner2(max_n, max_weight):
    if max_n < 2:
        return
    for a, b in _weight_pairs(max_weight):
        if a * b > 4:
            yield {"t12": a, "t21": b}


def _dom_Lanner3Path(max_n, max_weight):
    if max_n < 3:
        return
    for t12, t21 in _weight_pairs(max_weight):
        if not 0 < t12 * t21 < 4:
            continue
        for t23, t32 in _weight_pairs(max_weight):
            if 0 < t23 * t32 < 4 and t12 * t21 + t23 * t32 > 4:
                yield {"t12": t12, "t21": t21, "t23": t23, "t32": t32}


def _dom_Lanner3Cycle(max_n, max_weight):
    if max_n < 3:
        return
    pairs = [(x, y) for x, y in _weight_pairs(max_weight) if 0 < x * y < 4]
    for t12, t21 in pairs:
        for t23, t32 in pairs:
            for t13, t31 in pairs:
                if t12 * t21 + t23 * t32 + t13 * t31 > 3:
                    yield {
                        "t12": t12, "t21": t21, "t23": t23,
                        "t32": t32, "t13": t13, "t31": t31,
                    }


def _chain_menu(max_len):
    menu = []
    for n in range(1, max_len + 1):
        menu.append(("A", n))
        if n >= 2:
            menu.append(("B", n))
            menu.append(("C", n))
    if max_len >= 4:
        menu.append(("F", 4))
    if max_len >= 2:
        menu.append(("G", 2))
    return menu


def _dom_TypeB(max_n, max_weight):
    # multisets of chains with total size <= max_n - 1; weight sweeps are
    # thinned ({1, W} per chain for <= 3 chains, constant vectors beyond)
    # because Theorem-level the class is weight-independent.
    menu = _chain_menu(max_n - 1)

    def rec(start, budget, acc):
        if acc:
            yield list(acc)
        for idx in range(start, len(menu)):
            kind, length = menu[idx]
            if length <= budget:
                acc.append((kind, length))
                yield from rec(idx, budget - length, acc)
                acc.pop()

    weights = sorted({1, max_weight})
    for chains in rec(0, max_n - 1, []):
        k = len(chains)
        if k <= 3:
            combos: Iterator[Tuple[int, ...]] = _tuples(weights, k)
        else:
            combos = iter([(w,) * k for w in weights])
        for combo in combos:
            text = ",".join(
                f"{kind}{length}:{w}" for (kind, length), w in zip(chains, combo)
            )
            yield {"chains": text}


def _tuples(values, k):
    if k == 0:
        yield ()
        return
    for rest in _tuples(values, k - 1):
        for v in values:
            yield rest + (v,)


def _predict_TypeC3(p):
    expr = _c_expr(p)
    side1, side2 = p.get("t13") * p.get("t31"), p.get("t23") * p.get("t32")
    if expr < 8:
        return DiagramClass.ELLIPTIC
    if expr == 8:
        return DiagramClass.CONNECTED_PARABOLIC
    if side1 <= 4 and side2 <= 4:
        if side1 < 4 and side2 < 4:
            return DiagramClass.LANNER
        return DiagramClass.QUASI_LANNER
    raise NoPredicateError("side products beyond 4")


def _dom_TypeC3(max_n, max_weight):
    if max_n < 3:
        return
    for t21 in range(1, max_weight + 1):
        for t13, t31 in _weight_pairs(max_weight):
            for t23, t32 in _weight_pairs(max_weight):
                p = FamilySpec.make(
                    "TypeC3", t21=t21, t13=t13, t31=t31, t23=t23, t32=t32
                )
                try:
                    _predict_TypeC3(p)
                except NoPredicateError:
                    continue
                yield dict(p.params)


def _predict_TypeC4Q(p):
    expr = _c_expr(p)
    tail = p.get("t34") * p.get("t43")
    side1 = p.get("t13") * p.get("t31") + tail
    side2 = p.get("t23") * p.get("t32") + tail
    if side1 <= 4 and side2 <= 4 and expr <= 8 and expr + 2 * tail > 8:
        if side1 < 4 and side2 < 4 and expr < 8:
            return DiagramClass.LANNER
        return DiagramClass.QUASI_LANNER
    raise NoPredicateError("outside the table conditions")


def _dom_TypeC4Q(max_n, max_weight):
    if max_n < 4:
        return
    small = [(x, y) for x, y in _weight_pairs(max_weight) if x * y <= 3]
    for t21 in range(1, max_weight + 1):
        for t13, t31 in small:
            for t23, t32 in small:
                for t34, t43 in small:
                    p = FamilySpec.make(
                        "TypeC4Q",
                        t21=t21, t13=t13, t31=t31,
                        t23=t23, t32=t32, t34=t34, t43=t43,
                    )
                    try:
                        _predict_TypeC4Q(p)
                    except NoPredicateError:
                        continue
                    yield dict(p.params)


def _dom_last_pair(min_size, products):
    def dom(max_n, max_weight):
        if max_n < min_size:
            return
        for x, y in _weight_pairs(max_weight):
            if x * y in products:
                yield {"t45": x, "t54": y}

    return dom


def _predict_Triangle(p):
    expr = p.get("t12") * p.get("t23") * p.get("t31") + 2 * p.get("t13") * p.get("t31")
    side = p.get("t13") * p.get("t31")
    if expr < 8:
        return DiagramClass.ELLIPTIC
    if expr == 8:
        return DiagramClass.CONNECTED_PARABOLIC
    if side < 4:
        return DiagramClass.LANNER
    if side == 4:
        return DiagramClass.QUASI_LANNER
    raise NoPredicateError("side product beyond 4")


def _dom_Triangle(max_n, max_weight):
    if max_n < 3:
        return
    for t12 in range(1, max_weight + 1):
        for t23 in range(1, max_weight + 1):
            for t13, t31 in _weight_pairs(max_weight):
                p = FamilySpec.make("Triangle", t12=t12, t23=t23, t13=t13, t31=t31)
                try:
                    _predict_Triangle(p)
                except NoPredicateError:
                    continue
                yield dict(p.params)


def _predict_SpecialTriangle(p):
    expr = p.get("t12") * p.get("t23") * p.get("t31")
    if expr < 8:
        return DiagramClass.ELLIPTIC
    if expr == 8:
        return DiagramClass.CONNECTED_PARABOLIC
    return DiagramClass.LANNER


def _dom_SpecialTriangle(max_n, max_weight):
    if max_n < 3:
        return
    for t12 in range(1, max_weight + 1):
        for t23 in range(1, max_weight + 1):
            for t31 in range(1, max_weight + 1):
                yield {"t12": t12, "t23": t23, "t31": t31}


def _predict_dot(lo_of, hi_of, boundary=DiagramClass.QUASI_LANNER):
    def predict(p):
        ab = Fraction(p.get("a") * p.get("b"))
        n, k = p.get("n"), p.get("k")
        hi = hi_of(n, k)
        return _dot_predicate(lo_of(n, k), hi, boundary)(ab)

    return predict


def _dom_dot(min_n, lo_of, hi_of, fixed_n=None):
    def dom(max_n, max_weight):
        ns = [fixed_n] if fixed_n is not None else range(min_n, max_n)
        for n in ns:
            if n + 1 > max_n:
                continue
            for k in (1, 2, 3):
                hi = hi_of(n, k)
                for a, b in _weight_pairs(max_weight):
                    ab = a * b
                    if hi is not None and ab > hi:
                        continue
                    yield {"n": n, "k": k, "a": a, "b": b}

    return dom


_AN_LO = lambda n, k: Fraction(k * (n + 1), n)
_AN_HI = lambda n, k: (Fraction(k * n, n - 1) if n > 1 else None)
_BC1_LO = lambda n, k: Fraction(k)
_BC1_HI = lambda n, k: Fraction(k * n, n - 1)
_BC2_LO = lambda n, k: Fraction(2 * k, n)
_BC2_HI = lambda n, k: Fraction(2 * k, n - 1)
_FG_LO = lambda n, k: Fraction(k, 2)
_FG_HI = lambda n, k: Fraction(k)


FAMILIES: Dict[str, FamilyDef] = {}


def _register(name, table, build, predict, domain, expected_kernel=None):
    FAMILIES[name] = FamilyDef(name, table, build, predict, domain, expected_kernel)


_register("An", "4.1", _build_An, _always(DiagramClass.ELLIPTIC), _dom_simple(1))
_register("Bn", "4.1", _build_Bn, _always(DiagramClass.ELLIPTIC), _dom_simple(2))
_register("Cn", "4.1", _build_Cn, _always(DiagramClass.ELLIPTIC), _dom_simple(2))
_register("Dn", "4.1", _build_Dn, _always(DiagramClass.ELLIPTIC), _dom_simple(4))
_register("E6", "4.1", lambda p: _build_E(6), _always(DiagramClass.ELLIPTIC), _dom_fixed(6))
_register("E7", "4.1", lambda p: _build_E(7), _always(DiagramClass.ELLIPTIC), _dom_fixed(7))
_register("E8", "4.1", lambda p: _build_E(8), _always(DiagramClass.ELLIPTIC), _dom_fixed(8))
_register("F4", "4.1", _build_F4, _always(DiagramClass.ELLIPTIC), _dom_fixed(4))
_register("G2", "4.1", _build_G2, _always(DiagramClass.ELLIPTIC), _dom_fixed(2))

_CP = DiagramClass.CONNECTED_PARABOLIC
_register("At1", "4.2", _build_At1, _always(_CP), _dom_At1, _kernel_At1)
_register("Atn", "4.2", _build_Atn, _always(_CP),
          _dom_simple(2, lambda n: n + 1), lambda p: (1,) * (p.get("n") + 1))
_register("Btn", "4.2", _build_Btn, _always(_CP),
          _dom_simple(3, lambda n: n + 1), _kernel_chain(1, 2, 1))
_register("BtCtn", "4.2", _build_BtCtn, _always(_CP),
          _dom_simple(2, lambda n: n + 1), _kernel_chain(1, 2, 2))
_register("Ctn", "4.2", _build_Ctn, _always(_CP),
          _dom_simple(2, lambda n: n + 1), _kernel_chain(1, 1, 1))
_register("BtDtn", "4.2", _build_BtDtn, _always(_CP),
          _dom_simple(3, lambda n: n + 1), _kernel_fork(1))
_register("CtDtn", "4.2", _build_CtDtn, _always(_CP),
          _dom_simple(3, lambda n: n + 1), _kernel_fork(2))
_register("Dtn", "4.2", _build_Dtn, _always(_CP),
          _dom_simple(5, lambda n: n + 1), _kernel_Dtn)
_register("Et6", "4.2", _build_Et6, _always(_CP), _dom_fixed(7),
          lambda p: (1, 2, 3, 2, 1, 2, 1))
_register("Et7", "4.2", _build_Et7, _always(_CP), _dom_fixed(8),
          lambda p: (1, 2, 3, 4, 2, 3, 2, 1))
_register("Et8", "4.2", _build_Et8, _always(_CP), _dom_fixed(9),
          lambda p: (2, 4, 6, 3, 5, 4, 3, 2, 1))
_register("BtFt4", "4.2", _build_BtFt4, _always(_CP), _dom_fixed(5),
          lambda p: (1, 2, 3, 2, 1))
_register("CtFt4", "4.2", _build_CtFt4, _always(_CP), _dom_fixed(5),
          lambda p: (2, 4, 3, 2, 1))
_register("AtGt2", "4.2", _build_AtGt2, _always(_CP), _dom_fixed(3),
          lambda p: (1, 2, 1))
_register("GtAt2", "4.2", _build_GtAt2, _always(_CP), _dom_fixed(3),
          lambda p: (1, 2, 3))

_register("Lanner2", "4.3", _build_Lanner2, _always(DiagramClass.LANNER), _dom_Lanner2)
_register("Lanner3Path", "4.3", _build_Lanner3Path,
          _always(DiagramClass.LANNER), _dom_Lanner3Path)
_register("Lanner3Cycle", "4.3", _build_Lanner3Cycle,
          _always(DiagramClass.LANNER), _dom_Lanner3Cycle)
_register("Lanner4a", "4.3", _build_block4((1, 1)),
          _always(DiagramClass.LANNER), _dom_fixed(4))
_register("Lanner4b", "4.3", _build_block4((2, 1)),
          _always(DiagramClass.LANNER), _dom_fixed(4))
_register("Lanner4c", "4.3", _build_block4((1, 2)),
          _always(DiagramClass.LANNER), _dom_fixed(4))
_register("Lanner5", "4.3", _build_Lanner5, _always(DiagramClass.LANNER), _dom_fixed(5))

_register("TypeB", "Thm 4.2.2.1", _build_TypeB,
          _always(DiagramClass.ELLIPTIC), _dom_TypeB)

_register("TypeC3", "4.4", _build_TypeC3, _predict_TypeC3, _dom_TypeC3)
_register("TypeC4E", "4.4", _build_TypeC4E, _always(DiagramClass.ELLIPTIC), _dom_fixed(4))
_register("TypeC4P", "4.4", _build_TypeC4P, _always(_CP), _dom_fixed(4))
_register("TypeC4Q", "4.4", _build_TypeC4Q, _predict_TypeC4Q, _dom_TypeC4Q)
_register("TypeC5E", "4.4", _build_TypeC5E, _always(DiagramClass.ELLIPTIC), _dom_fixed(5))
_register("TypeC5L", "4.4", _build_TypeC5L, _always(DiagramClass.LANNER),
          _dom_last_pair(5, {2}))
_register("TypeC5Q", "4.4", _build_TypeC5Q, _always(DiagramClass.QUASI_LANNER),
          _dom_last_pair(5, {1, 2}))
# the paper prints this row as elliptic; exact arithmetic gives a positive
# kernel (2,3,4,3,2,1), so it is frozen as connected parabolic
_register("TypeC6P", "4.4", _build_TypeC6P, _always(_CP), _dom_fixed(6))
_register("TypeC6L", "4.4", _build_TypeC6L, _always(DiagramClass.LANNER),
          _dom_last_pair(6, {2}))
_register("TypeC7Q", "4.4", _build_TypeC7Q, _always(DiagramClass.QUASI_LANNER),
          _dom_last_pair(7, {2}))

_register("AnDot", "4.5", lambda p: _build_dot(p, None),
          _predict_dot(_AN_LO, _AN_HI), _dom_dot(1, _AN_LO, _AN_HI))
_register("BnDot1", "4.5", lambda p: _build_dot(p, (p.get("n") - 2, (2, 1))),
          _predict_dot(_BC1_LO, _BC1_HI), _dom_dot(2, _BC1_LO, _BC1_HI))
_register("CnDot1", "4.5", lambda p: _build_dot(p, (p.get("n") - 2, (1, 2))),
          _predict_dot(_BC1_LO, _BC1_HI), _dom_dot(2, _BC1_LO, _BC1_HI))
_register("BnDot2", "4.5", lambda p: _build_dot(p, (0, (1, 2))),
          _predict_dot(_BC2_LO, _BC2_HI), _dom_dot(2, _BC2_LO, _BC2_HI))
_register("CnDot2", "4.5", lambda p: _build_dot(p, (0, (2, 1))),
          _predict_dot(_BC2_LO, _BC2_HI), _dom_dot(2, _BC2_LO, _BC2_HI))
_register("F4Dot1", "4.5", lambda p: _build_dot(p, (1, (2, 1))),
          _predict_dot(_FG_LO, _FG_HI), _dom_dot(4, _FG_LO, _FG_HI, fixed_n=4))
_register("F4Dot2", "4.5", lambda p: _build_dot(p, (1, (1, 2))),
          _predict_dot(_FG_LO, _FG_HI), _dom_dot(4, _FG_LO, _FG_HI, fixed_n=4))
# at ab = k the G2 rows have no parabolic proper subset (dropping the last
# vertex leaves A1-dot, parabolic only at ab = 2k), so the boundary is Lanner
_register("G2Dot1", "4.5", lambda p: _build_dot(p, (0, (3, 1))),
          _predict_dot(_FG_LO, _FG_HI, DiagramClass.LANNER),
          _dom_dot(2, _FG_LO, _FG_HI, fixed_n=2))
_register("G2Dot2", "4.5", lambda p: _build_dot(p, (0, (1, 3))),
          _predict_dot(_FG_LO, _FG_HI, DiagramClass.LANNER),
          _dom_dot(2, _FG_LO, _FG_HI, fixed_n=2))

_register("Triangle", "4.6", _build_Triangle, _predict_Triangle, _dom_Triangle)
_register("SpecialTriangle", "4.6", _build_SpecialTriangle,
          _predict_SpecialTriangle, _dom_SpecialTriangle)


# -- public operations --------------------------------------------------------


def build_family(spec: FamilySpec) -> RaySet:
    fam = FAMILIES.get(spec.family)
    if fam is None:
        raise CatalogError(f"unknown family {spec.family!r}")
    _validate_params(spec)
    return fam.build(spec)


def predicted_class(spec: FamilySpec) -> DiagramClass:
    fam = FAMILIES.get(spec.family)
    if fam is None:
        raise CatalogError(f"unknown family {spec.family!r}")
    _validate_params(spec)
    return fam.predict(spec)


def expected_kernel(spec: FamilySpec) -> Optional[Tuple[int, ...]]:
    fam = FAMILIES[spec.family]
    if fam.expected_kernel is None:
        return None
    return tuple(fam.expected_kernel(spec))


def _validate_params(spec: FamilySpec):
    for key, value in spec.params:
        if key == "chains":
            parse_chain_string(value)
        elif not isinstance(value, int) or value < 0:
            raise CatalogError(f"parameter {key} must be a non-negative integer")
    n = spec.get("n")
    if n is not None and n < 1:
        raise CatalogError("n must be at least 1")
    k = spec.get("k")
    if k is not None and k not in (1, 2, 3):
        raise CatalogError("k must be 1, 2 or 3")


def enumerate_families(
    max_n: int, max_weight: int, families=None
) -> Iterator[Tuple[FamilySpec, RaySet, DiagramClass]]:
    """Stream every in-domain instance with its built ray set and predicted class."""
    if max_n < 2 or max_weight < 1:
        raise CatalogError("need max_n >= 2 and max_weight >= 1")
    names = families if families is not None else sorted(FAMILIES)
    for name in names:
        fam = FAMILIES[name]
        for params in fam.domain(max_n, max_weight):
            spec = FamilySpec.make(name, **params)
            rs = fam.build(spec)
            if rs.n > max_n:
                continue
            yield spec, rs, fam.predict(spec)


def family_table() -> List[Tuple[str, str]]:
    """(name, source table) pairs for `catalog list`."""
    return sorted((name, fam.table) for name, fam in FAMILIES.items())
