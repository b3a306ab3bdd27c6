"""Direct enumeration of unbranched subgraph families and their polynomials.

Subgraphs are arc subsets stored as bitmasks; bit ``k`` is the ``k``-th arc
in input order. Everything here is built combinatorially and serves as the
reference against which the contraction engine is checked.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .asano import AScheme
from .cyclotomic import Cyc8
from .graph import Bipartition, GraphError, OrientedGraph, UndirectedGraph, check_bipartite
from .multiaffine import MultiAffinePoly
from .poly import IntPoly

__all__ = [
    "Subgraph",
    "Component",
    "FAMILIES",
    "is_unbranched",
    "is_loop_subgraph",
    "decompose",
    "enum_family",
    "poly_family",
    "poly_v0",
    "multivar_P",
    "PairingResult",
    "pairing_check",
    "enum_undirected_unbranched",
    "poly_undirected_unbranched",
    "undirected_components",
    "closed_form_oriented_unbranched",
    "closed_form_oriented_unbranched_even",
]

FAMILIES = ("U", "L", "U_even")


@dataclass(frozen=True)
class Subgraph:
    graph: OrientedGraph
    mask: int

    def __post_init__(self):
        if self.mask < 0 or self.mask >> len(self.graph.arcs):
            raise ValueError("mask has bits outside the arc range")

    @classmethod
    def from_ids(cls, g: OrientedGraph, ids: Iterable[str]) -> Subgraph:
        pos = {a.id: k for k, a in enumerate(g.arcs)}
        mask = 0
        for i in ids:
            if i not in pos:
                raise GraphError(f"unknown arc {i!r}")
            mask |= 1 << pos[i]
        return cls(g, mask)

    @property
    def arc_ids(self) -> list[str]:
        return [a.id for k, a in enumerate(self.graph.arcs) if self.mask >> k & 1]

    def __len__(self) -> int:
        return bin(self.mask).count("1")

    def __contains__(self, arc_id: str) -> bool:
        return arc_id in self.arc_ids


SubgraphLike = Union[Subgraph, int, Iterable[str]]


def _mask(g: OrientedGraph, f: SubgraphLike) -> int:
    if isinstance(f, Subgraph):
        if f.graph is not g and f.graph != g:
            raise ValueError("subgraph belongs to a different graph")
        return f.mask
    if isinstance(f, int):
        return Subgraph(g, f).mask
    return Subgraph.from_ids(g, f).mask


def _bits(mask: int) -> Iterator[int]:
    k = 0
    while mask:
        if mask & 1:
            yield k
        mask >>= 1
        k += 1


def _degrees(g: OrientedGraph, mask: int):
    outs: dict[str, int] = defaultdict(int)
    ins: dict[str, int] = defaultdict(int)
    for k in _bits(mask):
        a = g.arcs[k]
        outs[a.tail] += 1
        ins[a.head] += 1
    return outs, ins


def is_unbranched(g: OrientedGraph, f: SubgraphLike) -> bool:
    outs, ins = _degrees(g, _mask(g, f))
    return all(d <= 1 for d in outs.values()) and all(d <= 1 for d in ins.values())


def is_loop_subgraph(g: OrientedGraph, f: SubgraphLike) -> bool:
    mask = _mask(g, f)
    if not is_unbranched(g, mask):
        return False
    outs, ins = _degrees(g, mask)
    return all(outs[v] == ins[v] for v in set(outs) | set(ins))


@dataclass(frozen=True)
class Component:
    """Connected piece of an unbranched subgraph.

    Paths run ``start -> ... -> end``; loops have ``start = end = None``.
    """

    mask: int
    kind: str
    start: str | None
    end: str | None
    size: int

    @property
    def is_loop(self) -> bool:
        return self.kind == "loop"


def _components(g: OrientedGraph, mask: int) -> list[int]:
    # arcs sharing an endpoint are joined, whatever their direction
    parent = {k: k for k in _bits(mask)}

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    at_vertex: dict[str, int] = {}
    for k in parent:
        a = g.arcs[k]
        for v in (a.tail, a.head):
            if v in at_vertex:
                r1, r2 = find(k), find(at_vertex[v])
                if r1 != r2:
                    parent[max(r1, r2)] = min(r1, r2)
            else:
                at_vertex[v] = k
    groups: dict[int, int] = {}
    for k in parent:
        r = find(k)
        groups[r] = groups.get(r, 0) | (1 << k)
    return [groups[r] for r in sorted(groups)]


def decompose(g: OrientedGraph, f: SubgraphLike) -> list[Component]:
    """Split an unbranched subgraph into loop and path components.

    Components are ordered by their lowest arc index.
    """
    mask = _mask(g, f)
    if not is_unbranched(g, mask):
        raise ValueError("decompose needs an unbranched subgraph")
    out = []
    for comp in _components(g, mask):
        outs, ins = _degrees(g, comp)
        size = bin(comp).count("1")
        starts = [v for v in outs if ins.get(v, 0) == 0]
        ends = [v for v in ins if outs.get(v, 0) == 0]
        if not starts:
            out.append(Component(comp, "loop", None, None, size))
        else:
            out.append(Component(comp, "path", starts[0], ends[0], size))
    return out


def _enum_unbranched(g: OrientedGraph) -> Iterator[int]:
    # backtrack from the highest arc down, excluding before including,
    # so members come out in ascending bitmask order
    arcs = g.arcs
    used_out: set[str] = set()
    used_in: set[str] = set()

    def rec(k: int, mask: int):
        if k < 0:
            yield mask
            return
        yield from rec(k - 1, mask)
        a = arcs[k]
        if a.tail not in used_out and a.head not in used_in:
            used_out.add(a.tail)
            used_in.add(a.head)
            yield from rec(k - 1, mask | (1 << k))
            used_out.discard(a.tail)
            used_in.discard(a.head)

    yield from rec(len(arcs) - 1, 0)


def _resolve_bipartition(g: OrientedGraph, bipartition: Bipartition | None) -> Bipartition:
    if bipartition is None and g.bipartition is None:
        raise GraphError("family U_even needs a bipartition")
    return check_bipartite(g, bipartition)


def enum_family(
    g: OrientedGraph,
    family: str = "U",
    bipartition: Bipartition | None = None,
    *,
    strict: bool = True,
) -> Iterator[Subgraph]:
    """Yield every member of U(E), L(E) or U_even(E) once, ascending by mask.

    ``U_even`` requires a bipartition (passed or stored on ``g``) unless
    ``strict=False``; the evenness filter itself only looks at component
    sizes.
    """
    if family not in FAMILIES:
        raise ValueError(f"unknown family {family!r}; expected one of {FAMILIES}")
    if family == "U_even" and strict:
        _resolve_bipartition(g, bipartition)
    for mask in _enum_unbranched(g):
        if family == "L" and not is_loop_subgraph(g, mask):
            continue
        if family == "U_even" and any(c.size % 2 for c in decompose(g, mask)):
            continue
        yield Subgraph(g, mask)


def _count_poly(sizes: Iterable[int]) -> IntPoly:
    counts: list[int] = []
    for k in sizes:
        while len(counts) <= k:
            counts.append(0)
        counts[k] += 1
    return IntPoly(tuple(counts))


def poly_family(
    g: OrientedGraph,
    family: str = "U",
    bipartition: Bipartition | None = None,
    *,
    strict: bool = True,
) -> IntPoly:
    """Coefficient of z**k = number of family members with k arcs."""
    if family not in ("U", "U_even", "L"):
        raise ValueError(f"unknown family {family!r}")
    return _count_poly(len(f) for f in enum_family(g, family, bipartition, strict=strict))


def _covers(g: OrientedGraph, mask: int, v0: frozenset) -> bool:
    outs, ins = _degrees(g, mask)
    return all(outs.get(v, 0) == 1 and ins.get(v, 0) == 1 for v in g.vertices if v not in v0)


def poly_v0(g: OrientedGraph, v0: Iterable[str]) -> IntPoly:
    """Count unbranched F with in = out = 1 at every vertex outside ``v0``.

    The result may be identically zero; check ``.is_zero``.
    """
    v0 = frozenset(v0)
    unknown = v0 - set(g.vertices)
    if unknown:
        raise GraphError(f"V0 contains unknown vertices {sorted(unknown)}")
    return _count_poly(
        bin(mask).count("1") for mask in _enum_unbranched(g) if _covers(g, mask, v0)
    )


def multivar_P(g: OrientedGraph, scheme: AScheme) -> MultiAffinePoly:
    """Sum over U(E) of component weights times the product of arc variables.

    For schemes with a'(x) a''(x) = 1 each path component weighs
    a''(start) * a'(end) and each loop weighs 1. For ``v0`` schemes a
    subgraph weighs 1 when it passes through every vertex outside V0 and 0
    otherwise.
    """
    if scheme.tilde:
        raise ValueError("tilde factors have no enumeration formula")
    ids = g.arc_ids()
    terms: dict[frozenset, Cyc8] = {}
    if scheme.name == "v0":
        for mask in _enum_unbranched(g):
            if _covers(g, mask, scheme.v0):
                terms[frozenset(ids[k] for k in _bits(mask))] = Cyc8(1)
        return MultiAffinePoly(ids, terms)

    one = Cyc8(1)
    for v in g.vertices:
        if scheme.a_out[v] * scheme.a_in[v] != one:
            raise ValueError(f"scheme {scheme.name!r} has a'(x) a''(x) != 1 at {v!r}")
    for mask in _enum_unbranched(g):
        weight = one
        for comp in decompose(g, mask):
            if not comp.is_loop:
                weight = weight * scheme.a_in[comp.start] * scheme.a_out[comp.end]
        terms[frozenset(ids[k] for k in _bits(mask))] = weight
    return MultiAffinePoly(ids, terms)


@dataclass(frozen=True)
class PairingResult:
    ok: bool
    witness: Subgraph | None = None
    groups_checked: int = 0

    def __bool__(self) -> bool:
        return self.ok


def _connected_members(g: OrientedGraph) -> Iterator[int]:
    for mask in _enum_unbranched(g):
        if mask and len(_components(g, mask)) == 1:
            yield mask


def pairing_check(g: OrientedGraph, bipartition: Bipartition | None = None) -> PairingResult:
    """Check that odd connected unbranched subgraphs pair up with reversed endpoints.

    Connected members of U(E) are grouped by (vertex set, size, start, end).
    Every group of odd-size paths must be matched in cardinality by the group
    with start and end swapped. Loops and even sizes need no partner. The
    witness is the lowest-mask member of the first unmatched group.
    """
    if bipartition is not None:
        check_bipartite(g, bipartition)
    groups: dict[tuple, list[int]] = defaultdict(list)
    for mask in _connected_members(g):
        (comp,) = decompose(g, mask)
        if comp.is_loop or comp.size % 2 == 0:
            continue
        verts = frozenset(v for k in _bits(mask) for v in (g.arcs[k].tail, g.arcs[k].head))
        groups[(verts, comp.size, comp.start, comp.end)].append(mask)
    ordered = sorted(groups.items(), key=lambda kv: kv[1][0])
    for (verts, size, start, end), members in ordered:
        partner = groups.get((verts, size, end, start), [])
        if len(partner) != len(members):
            return PairingResult(False, Subgraph(g, members[0]), len(groups))
    return PairingResult(True, None, len(groups))


# -- undirected side -------------------------------------------------------


def enum_undirected_unbranched(g0: UndirectedGraph) -> Iterator[int]:
    """Edge masks where every vertex has degree at most 2, ascending."""
    edges = g0.edges
    deg: dict[str, int] = defaultdict(int)

    def rec(k: int, mask: int):
        if k < 0:
            yield mask
            return
        yield from rec(k - 1, mask)
        x, y = edges[k].ends
        if deg[x] < 2 and deg[y] < 2:
            deg[x] += 1
            deg[y] += 1
            yield from rec(k - 1, mask | (1 << k))
            deg[x] -= 1
            deg[y] -= 1

    yield from rec(len(edges) - 1, 0)


def poly_undirected_unbranched(g0: UndirectedGraph) -> IntPoly:
    return _count_poly(bin(m).count("1") for m in enum_undirected_unbranched(g0))


def undirected_components(g0: UndirectedGraph, mask: int) -> list[int]:
    """Sizes of the connected components of an edge subset."""
    parent = {k: k for k in _bits(mask)}

    def find(k):
        while parent[k] != k:
            parent[k] = parent[parent[k]]
            k = parent[k]
        return k

    at_vertex: dict[str, int] = {}
    for k in parent:
        for v in g0.edges[k].ends:
            if v in at_vertex:
                r1, r2 = find(k), find(at_vertex[v])
                if r1 != r2:
                    parent[max(r1, r2)] = min(r1, r2)
            else:
                at_vertex[v] = k
    sizes: dict[int, int] = defaultdict(int)
    for k in parent:
        sizes[find(k)] += 1
    return [sizes[r] for r in sorted(sizes)]


def _require_simple(g0: UndirectedGraph) -> None:
    if not g0.simple:
        raise GraphError("closed forms need a simple graph (no repeated edges)")


def closed_form_oriented_unbranched(g0: UndirectedGraph) -> IntPoly:
    """Sum over U(E0) of (2z + z^2) per single edge and 2 z^|Fj| per larger component."""
    _require_simple(g0)
    single = IntPoly((0, 2, 1))
    total = IntPoly()
    for mask in enum_undirected_unbranched(g0):
        term = IntPoly((1,))
        for size in undirected_components(g0, mask):
            if size == 1:
                term = term * single
            else:
                term = term * IntPoly((0,) * size + (2,))
        total = total + term
    return total


def closed_form_oriented_unbranched_even(g0: UndirectedGraph, *, literal: bool = False) -> IntPoly:
    """Sum over F with components of size 1 or even size.

    A single edge contributes z^2 (the two opposite arcs together); an even
    component of size s contributes 2 z^s. With ``literal=True`` the even
    factor is (2z)^s instead, which over-counts and is kept only to
    demonstrate the mismatch.
    """
    _require_simple(g0)
    total = IntPoly()
    for mask in enum_undirected_unbranched(g0):
        sizes = undirected_components(g0, mask)
        if any(s > 1 and s % 2 for s in sizes):
            continue
        term = IntPoly((1,))
        for size in sizes:
            if size == 1:
                term = term * IntPoly((0, 0, 1))
            elif literal:
                term = term * IntPoly((0,) * size + (2**size,))
            else:
                term = term * IntPoly((0,) * size + (2,))
        total = total + term
    return total
