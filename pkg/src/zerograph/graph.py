"""Oriented and undirected graph model, validation, doubling and generators.

Vertex, arc and edge ids are strings. Every ordering used downstream
(enumeration, bitmasks, reports) comes from input order, so results are
reproducible from the JSON alone.
"""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterator, Union

__all__ = [
    "Arc",
    "Edge",
    "GraphError",
    "NotBipartite",
    "OrientedGraph",
    "UndirectedGraph",
    "DoubledGraph",
    "SplitMix64",
    "parse_graph",
    "graph_to_dict",
    "graph_to_json",
    "double",
    "check_bipartite",
    "deg2",
    "random_graph",
]


class GraphError(ValueError):
    """Raised for structurally invalid graph input."""


class NotBipartite(GraphError):
    """The underlying undirected structure has an odd cycle.

    ``witness`` is a closed walk ``[v0, v1, ..., v0]`` of odd length.
    """

    def __init__(self, witness: list[str]):
        self.witness = witness
        super().__init__(f"graph is not bipartite; odd closed walk {' -> '.join(witness)}")


@dataclass(frozen=True)
class Arc:
    id: str
    tail: str
    head: str


@dataclass(frozen=True)
class Edge:
    id: str
    ends: tuple[str, str]


Bipartition = tuple[tuple[str, ...], tuple[str, ...]]


def _check_ids(vertices: tuple[str, ...], items, what: str) -> None:
    if not vertices:
        raise GraphError("vertex list must be nonempty")
    for v in vertices:
        if not isinstance(v, str):
            raise GraphError(f"vertex id {v!r} is not a string")
    if len(set(vertices)) != len(vertices):
        raise GraphError("duplicate vertex id")
    ids = [it.id for it in items]
    for i in ids:
        if not isinstance(i, str):
            raise GraphError(f"{what} id {i!r} is not a string")
    if len(set(ids)) != len(ids):
        dup = next(i for i in ids if ids.count(i) > 1)
        raise GraphError(f"duplicate {what} id {dup!r}")


def _check_partition(vertices, pairs, bipartition: Bipartition) -> None:
    v1, v2 = bipartition
    s1, s2 = set(v1), set(v2)
    if not s1 or not s2:
        raise GraphError("bipartition parts must be nonempty")
    if len(s1) != len(v1) or len(s2) != len(v2) or s1 & s2:
        raise GraphError("bipartition parts must be disjoint")
    if s1 | s2 != set(vertices):
        raise GraphError("bipartition must cover every vertex exactly")
    for eid, x, y in pairs:
        if (x in s1) == (y in s1):
            raise GraphError(f"edge {eid!r} does not cross the bipartition")


@dataclass(frozen=True)
class OrientedGraph:
    """Vertices plus an ordered arc list; parallel and antiparallel arcs allowed."""

    vertices: tuple[str, ...]
    arcs: tuple[Arc, ...] = ()
    bipartition: Bipartition | None = None
    _index: dict = field(default=None, init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "arcs", tuple(self.arcs))
        _check_ids(self.vertices, self.arcs, "arc")
        vset = set(self.vertices)
        for a in self.arcs:
            if a.tail not in vset or a.head not in vset:
                raise GraphError(f"arc {a.id!r} references an unknown vertex")
            if a.tail == a.head:
                raise GraphError(f"arc {a.id!r} is a self-loop at {a.tail!r}")
        if self.bipartition is not None:
            bp = (tuple(self.bipartition[0]), tuple(self.bipartition[1]))
            object.__setattr__(self, "bipartition", bp)
            _check_partition(self.vertices, [(a.id, a.tail, a.head) for a in self.arcs], bp)
        object.__setattr__(self, "_index", {v: i for i, v in enumerate(self.vertices)})

    @property
    def directed(self) -> bool:
        return True

    def vertex_index(self, v: str) -> int:
        return self._index[v]

    def arc_ids(self) -> list[str]:
        return [a.id for a in self.arcs]

    def out_degree(self, v: str) -> int:
        return sum(1 for a in self.arcs if a.tail == v)

    def in_degree(self, v: str) -> int:
        return sum(1 for a in self.arcs if a.head == v)

    def reversed(self) -> OrientedGraph:
        """Same graph with every arc turned around."""
        return OrientedGraph(
            self.vertices,
            tuple(Arc(a.id, a.head, a.tail) for a in self.arcs),
            self.bipartition,
        )

    def with_bipartition(self, bipartition: Bipartition | None) -> OrientedGraph:
        return OrientedGraph(self.vertices, self.arcs, bipartition)


@dataclass(frozen=True)
class UndirectedGraph:
    vertices: tuple[str, ...]
    edges: tuple[Edge, ...] = ()
    bipartition: Bipartition | None = None

    def __post_init__(self):
        object.__setattr__(self, "vertices", tuple(self.vertices))
        object.__setattr__(self, "edges", tuple(self.edges))
        _check_ids(self.vertices, self.edges, "edge")
        vset = set(self.vertices)
        for e in self.edges:
            if len(e.ends) != 2:
                raise GraphError(f"edge {e.id!r} must have exactly two ends")
            x, y = e.ends
            if x not in vset or y not in vset:
                raise GraphError(f"edge {e.id!r} references an unknown vertex")
            if x == y:
                raise GraphError(f"edge {e.id!r} is a self-loop at {x!r}")
        if self.bipartition is not None:
            bp = (tuple(self.bipartition[0]), tuple(self.bipartition[1]))
            object.__setattr__(self, "bipartition", bp)
            _check_partition(self.vertices, [(e.id, *e.ends) for e in self.edges], bp)

    @property
    def directed(self) -> bool:
        return False

    @property
    def simple(self) -> bool:
        seen = set()
        for e in self.edges:
            key = frozenset(e.ends)
            if key in seen:
                return False
            seen.add(key)
        return True

    def degree(self, v: str) -> int:
        return sum(e.ends.count(v) for e in self.edges)


@dataclass(frozen=True)
class DoubledGraph:
    """Oriented graph obtained by replacing every edge with two opposite arcs.

    Edge ``e`` with ends ``(x1, x2)`` becomes ``e'`` : x1 -> x2 and
    ``e''`` : x2 -> x1.
    """

    graph: OrientedGraph
    reversal: dict[str, str]
    origin: dict[str, str]


Graph = Union[OrientedGraph, UndirectedGraph]


# -- serialization ---------------------------------------------------------

_TOP_KEYS = {"directed", "vertices", "edges", "bipartition"}


def _parse_bipartition(obj) -> Bipartition | None:
    if obj is None:
        return None
    if not isinstance(obj, dict) or set(obj) != {"V1", "V2"}:
        raise GraphError("bipartition must be an object with exactly keys V1, V2")
    v1, v2 = obj["V1"], obj["V2"]
    if not isinstance(v1, list) or not isinstance(v2, list):
        raise GraphError("bipartition parts must be lists")
    return tuple(v1), tuple(v2)


def parse_graph(text: str) -> Graph:
    """Parse and validate the graph JSON format.

    Raises :class:`GraphError` on malformed JSON, unknown keys, duplicate ids,
    dangling vertex references, self-loops, or an invalid bipartition.
    """
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphError(f"malformed JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise GraphError("graph document must be a JSON object")
    unknown = set(doc) - _TOP_KEYS
    if unknown:
        raise GraphError(f"unknown keys: {sorted(unknown)}")
    for key in ("directed", "vertices", "edges"):
        if key not in doc:
            raise GraphError(f"missing key {key!r}")
    directed = doc["directed"]
    if not isinstance(directed, bool):
        raise GraphError("'directed' must be a boolean")
    vertices = doc["vertices"]
    if not isinstance(vertices, list):
        raise GraphError("'vertices' must be a list")
    if not isinstance(doc["edges"], list):
        raise GraphError("'edges' must be a list")
    bipartition = _parse_bipartition(doc.get("bipartition"))

    want = {"id", "tail", "head"} if directed else {"id", "ends"}
    items = []
    for raw in doc["edges"]:
        if not isinstance(raw, dict) or set(raw) != want:
            raise GraphError(f"edge entry must have exactly keys {sorted(want)}: {raw!r}")
        if directed:
            items.append(Arc(raw["id"], raw["tail"], raw["head"]))
        else:
            ends = raw["ends"]
            if not isinstance(ends, list) or len(ends) != 2:
                raise GraphError(f"edge {raw['id']!r}: 'ends' must be a two-element list")
            items.append(Edge(raw["id"], (ends[0], ends[1])))
    if directed:
        return OrientedGraph(tuple(vertices), tuple(items), bipartition)
    return UndirectedGraph(tuple(vertices), tuple(items), bipartition)


def graph_to_dict(g: Graph) -> dict:
    if isinstance(g, DoubledGraph):
        g = g.graph
    doc: dict = {"directed": g.directed, "vertices": list(g.vertices)}
    if g.directed:
        doc["edges"] = [{"id": a.id, "tail": a.tail, "head": a.head} for a in g.arcs]
    else:
        doc["edges"] = [{"id": e.id, "ends": list(e.ends)} for e in g.edges]
    if g.bipartition is not None:
        doc["bipartition"] = {"V1": list(g.bipartition[0]), "V2": list(g.bipartition[1])}
    return doc


def graph_to_json(g: Graph, indent: int | None = None) -> str:
    return json.dumps(graph_to_dict(g), indent=indent, ensure_ascii=False)


# -- structure -------------------------------------------------------------


def double(g: UndirectedGraph) -> DoubledGraph:
    arcs = []
    reversal = {}
    origin = {}
    for e in g.edges:
        x1, x2 = e.ends
        fwd, bwd = e.id + "'", e.id + "''"
        arcs.append(Arc(fwd, x1, x2))
        arcs.append(Arc(bwd, x2, x1))
        reversal[fwd], reversal[bwd] = bwd, fwd
        origin[fwd] = origin[bwd] = e.id
    return DoubledGraph(OrientedGraph(g.vertices, tuple(arcs), g.bipartition), reversal, origin)


def _neighbours(g: Graph) -> dict[str, list[str]]:
    adj: dict[str, list[str]] = {v: [] for v in g.vertices}
    pairs = [(a.tail, a.head) for a in g.arcs] if g.directed else [e.ends for e in g.edges]
    for x, y in pairs:
        adj[x].append(y)
        adj[y].append(x)
    return adj


def check_bipartite(g: Graph, bipartition: Bipartition | None = None) -> Bipartition:
    """Return a bipartition (V1, V2) of ``g`` or raise :class:`NotBipartite`.

    A supplied partition (argument first, then the one stored on ``g``) is
    verified and returned. Otherwise the underlying undirected structure is
    2-coloured by BFS, seeding each component at its lexicographically least
    vertex, which goes to V1. Parts keep the graph's vertex order.

    A graph whose every vertex lands in V1 (no edges) gets an empty V2; such
    a partition is returned as-is since it is only a colouring, but it cannot
    be attached to a graph.
    """
    if bipartition is None:
        bipartition = g.bipartition
    if bipartition is not None:
        pairs = [(a.id, a.tail, a.head) for a in g.arcs] if g.directed else [
            (e.id, *e.ends) for e in g.edges
        ]
        _check_partition(g.vertices, pairs, (tuple(bipartition[0]), tuple(bipartition[1])))
        return tuple(bipartition[0]), tuple(bipartition[1])

    adj = _neighbours(g)
    colour: dict[str, int] = {}
    parent: dict[str, str | None] = {}
    depth: dict[str, int] = {}
    for root in sorted(g.vertices):
        if root in colour:
            continue
        colour[root], parent[root], depth[root] = 0, None, 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for w in adj[u]:
                if w not in colour:
                    colour[w] = 1 - colour[u]
                    parent[w], depth[w] = u, depth[u] + 1
                    queue.append(w)
                elif colour[w] == colour[u]:
                    raise NotBipartite(_odd_cycle(u, w, parent, depth))
    v1 = tuple(v for v in g.vertices if colour[v] == 0)
    v2 = tuple(v for v in g.vertices if colour[v] == 1)
    return v1, v2


def _odd_cycle(u, w, parent, depth) -> list[str]:
    # tree paths u -> lca and w -> lca plus the edge u-w form an odd cycle
    left, right = [u], [w]
    a, b = u, w
    while depth[a] > depth[b]:
        a = parent[a]
        left.append(a)
    while depth[b] > depth[a]:
        b = parent[b]
        right.append(b)
    while a != b:
        a, b = parent[a], parent[b]
        left.append(a)
        right.append(b)
    right.pop()
    return left[::-1] + right + [left[-1]]


def deg2(g: OrientedGraph) -> int:
    if not g.arcs:
        return 0
    outs = {v: 0 for v in g.vertices}
    ins = {v: 0 for v in g.vertices}
    for a in g.arcs:
        outs[a.tail] += 1
        ins[a.head] += 1
    return max(outs.values()) * max(ins.values())


# -- random generation -----------------------------------------------------

_MASK64 = (1 << 64) - 1


class SplitMix64:
    """SplitMix64 stream.

    ``next()`` advances the state by 0x9E3779B97F4A7C15 and mixes it with the
    standard (30, 27, 31) xor-shift/multiply finalizer. ``below(n)`` draws
    uniformly from ``range(n)`` by rejecting outputs under ``2**64 % n``.
    """

    def __init__(self, seed: int):
        self.state = seed & _MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & _MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        return z ^ (z >> 31)

    def below(self, n: int) -> int:
        if n <= 0:
            raise ValueError("below() needs a positive bound")
        threshold = (1 << 64) % n
        while True:
            r = self.next()
            if r >= threshold:
                return r % n

    def between(self, lo: int, hi: int) -> int:
        """Uniform integer in [lo, hi]."""
        return lo + self.below(hi - lo + 1)

    def __iter__(self) -> Iterator[int]:
        while True:
            yield self.next()


def _simple_edges(rng: SplitMix64, candidates: list[tuple[int, int]], m: int):
    # rejection sampling over the candidate pair list, in draw order
    chosen: list[tuple[int, int]] = []
    used = set()
    while len(chosen) < m:
        k = rng.below(len(candidates))
        if k in used:
            continue
        used.add(k)
        chosen.append(candidates[k])
    return chosen


def random_graph(kind: str, n: int, m: int, seed: int) -> Graph:
    """Deterministic random graph on vertices ``"1".."n"``; ids ``e1..em``.

    * ``oriented``: each arc draws tail ``t = below(n)`` then
      ``h = below(n - 1)``, bumped by one when ``h >= t``. Duplicates allowed.
    * ``simple-undirected``: draws indices into the lexicographic list of
      pairs ``(i, j), i < j`` and rejects repeats.
    * ``bipartite-undirected``: draws the size ``k`` of V1 (the first ``k``
      vertices) uniformly among splits with ``k * (n - k) >= m``, then samples
      distinct cross pairs ``(i in V1, j in V2)`` the same way.
    """
    if n < 1:
        raise ValueError("n must be at least 1")
    if m < 0:
        raise ValueError("m must be nonnegative")
    rng = SplitMix64(seed)
    names = [str(i + 1) for i in range(n)]

    if kind == "oriented":
        if m > 0 and n < 2:
            raise ValueError("an oriented arc needs two distinct vertices")
        arcs = []
        for i in range(m):
            t = rng.below(n)
            h = rng.below(n - 1)
            if h >= t:
                h += 1
            arcs.append(Arc(f"e{i + 1}", names[t], names[h]))
        return OrientedGraph(tuple(names), tuple(arcs))

    if kind == "simple-undirected":
        pairs = [(i, j) for i in range(n) for j in range(i + 1, n)]
        if m > len(pairs):
            raise ValueError(f"{m} edges requested but only {len(pairs)} vertex pairs exist")
        chosen = _simple_edges(rng, pairs, m)
        edges = tuple(Edge(f"e{k + 1}", (names[i], names[j])) for k, (i, j) in enumerate(chosen))
        return UndirectedGraph(tuple(names), edges)

    if kind == "bipartite-undirected":
        if n < 2:
            raise ValueError("a bipartite graph needs at least two vertices")
        splits = [k for k in range(1, n) if k * (n - k) >= m]
        if not splits:
            raise ValueError(f"{m} cross edges do not fit on {n} vertices")
        k = splits[rng.below(len(splits))]
        pairs = [(i, j) for i in range(k) for j in range(k, n)]
        chosen = _simple_edges(rng, pairs, m)
        edges = tuple(Edge(f"e{t + 1}", (names[i], names[j])) for t, (i, j) in enumerate(chosen))
        return UndirectedGraph(tuple(names), edges, (tuple(names[:k]), tuple(names[k:])))

    raise ValueError(f"unknown graph kind {kind!r}")
