"""Vertex factors, their product, and Asano contraction over a graph.

This builds P(Z) purely algebraically: expand every vertex factor
``(a'(x) + sum of outgoing z') * (a''(x) + sum of ingoing z'')``, multiply
them in, and contract each arc's pair ``(z'_e, z''_e)`` into ``z_e`` as soon
as both of its endpoints have been multiplied in.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Mapping

from .cyclotomic import ZETA, ZETA_BAR, Cyc8
from .graph import Bipartition, GraphError, OrientedGraph, check_bipartite
from .multiaffine import MultiAffinePoly, asano_contract, multiply, specialize

__all__ = [
    "AScheme",
    "vertex_factor",
    "contract_graph",
    "multiply",
    "asano_contract",
    "specialize",
    "out_var",
    "in_var",
]


def out_var(arc_id: str) -> str:
    return f"z'[{arc_id}]"


def in_var(arc_id: str) -> str:
    return f"z''[{arc_id}]"


@dataclass(frozen=True)
class AScheme:
    """Per-vertex constants a'(x), a''(x) and the set of tilde vertices.

    ``name`` is one of ``ones``, ``zeta-bipartite``, ``v0`` or ``custom``;
    ``v0`` keeps the vertex set it was built from.
    """

    name: str
    a_out: Mapping[str, Cyc8]
    a_in: Mapping[str, Cyc8]
    tilde: frozenset = frozenset()
    v0: frozenset | None = None
    bipartition: Bipartition | None = field(default=None, compare=False)

    @classmethod
    def ones(cls, g: OrientedGraph) -> AScheme:
        one = Cyc8(1)
        return cls("ones", {v: one for v in g.vertices}, {v: one for v in g.vertices})

    @classmethod
    def zeta_bipartite(cls, g: OrientedGraph, bipartition: Bipartition | None = None) -> AScheme:
        """a'(x) = (1+i)/sqrt2 on V1, (1-i)/sqrt2 on V2; a''(x) its conjugate."""
        if bipartition is None and g.bipartition is None:
            raise GraphError("zeta-bipartite scheme needs a bipartition")
        v1, v2 = check_bipartite(g, bipartition)
        side1 = set(v1)
        a_out = {v: ZETA if v in side1 else ZETA_BAR for v in g.vertices}
        a_in = {v: c.conjugate() for v, c in a_out.items()}
        return cls("zeta-bipartite", a_out, a_in, bipartition=(v1, v2))

    @classmethod
    def from_v0(cls, g: OrientedGraph, v0: Iterable[str]) -> AScheme:
        v0 = frozenset(v0)
        unknown = v0 - set(g.vertices)
        if unknown:
            raise GraphError(f"V0 contains unknown vertices {sorted(unknown)}")
        one, zero = Cyc8(1), Cyc8(0)
        a = {v: one if v in v0 else zero for v in g.vertices}
        return cls("v0", a, dict(a), v0=v0)

    def with_tilde(self, vertices: Iterable[str]) -> AScheme:
        return AScheme(self.name, self.a_out, self.a_in, frozenset(vertices), self.v0, self.bipartition)

    def check(self, g: OrientedGraph) -> None:
        missing = [v for v in g.vertices if v not in self.a_out or v not in self.a_in]
        if missing:
            raise GraphError(f"scheme undefined on vertices {missing}")
        extra = self.tilde - set(g.vertices)
        if extra:
            raise GraphError(f"tilde flag on unknown vertices {sorted(extra)}")


def vertex_factor(g: OrientedGraph, x: str, scheme: AScheme) -> MultiAffinePoly:
    if x not in g.vertices:
        raise GraphError(f"unknown vertex {x!r}")
    outs = [out_var(a.id) for a in g.arcs if a.tail == x]
    ins = [in_var(a.id) for a in g.arcs if a.head == x]
    left = {frozenset(): scheme.a_out[x], **{frozenset([v]): 1 for v in outs}}
    right = {frozenset(): scheme.a_in[x], **{frozenset([v]): 1 for v in ins}}
    p = multiply(MultiAffinePoly(outs, left), MultiAffinePoly(ins, right))
    if x in scheme.tilde:
        p = p + MultiAffinePoly.constant(1)
    return p


def contract_graph(g: OrientedGraph, scheme: AScheme) -> MultiAffinePoly:
    """P(Z) over the arc ids of ``g``, built by product and contraction."""
    scheme.check(g)
    reserved = {out_var(a.id) for a in g.arcs} | {in_var(a.id) for a in g.arcs}
    clash = reserved & set(g.arc_ids())
    if clash:
        raise GraphError(f"arc ids collide with internal variable names: {sorted(clash)}")

    done: set[str] = set()
    pending = list(g.arcs)
    p = MultiAffinePoly.constant(1)
    for x in g.vertices:
        p = multiply(p, vertex_factor(g, x, scheme))
        done.add(x)
        waiting = []
        for a in pending:
            if a.tail in done and a.head in done:
                p = asano_contract(p, (out_var(a.id), in_var(a.id)), a.id)
            else:
                waiting.append(a)
        pending = waiting
    return p.relabel(g.arc_ids())
