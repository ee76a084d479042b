"""Graph data model, edge-list / JSON parsing, and named graph families.

The model is deliberately small: finite simple connected undirected graphs
with opaque string vertex labels.  Vertices receive dense integer indices in
first-appearance order and edges receive ordinals in lexicographic index
order; everything downstream (measures, Laplacians, reports) is expressed in
those ordinals, so construction order pins the output order of every table.
Instances never mutate after __init__, which makes them safe to share.
"""

from __future__ import annotations

import heapq
import json
import math
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

from .errors import (
    DisconnectedError,
    DuplicateEdgeError,
    EmptyInputError,
    FormatError,
    InvalidParameterError,
    NonpositiveWeightError,
    SelfLoopError,
    UnknownEdgeError,
    UnknownVertexError,
)
from .rng import SplitMix64


def _check_label(label: str) -> str:
    if not isinstance(label, str) or not label:
        raise FormatError(f"vertex label {label!r} must be a nonempty string")
    if any(ch.isspace() for ch in label):
        raise FormatError(f"vertex label {label!r} contains whitespace")
    return label


class Graph:
    """Simple connected undirected graph, immutable after construction.

    labels:     vertex labels in first-appearance order
    edges:      index pairs (i, j) with i < j, sorted lexicographically;
                the position of a pair in this tuple is its edge ordinal
    adjacency:  label -> frozenset of neighbor labels
    """

    __slots__ = (
        "labels", "index", "edges", "adjacency",
        "_edge_lookup", "_adj_idx", "_space", "_hash", "__weakref__",
    )

    def __init__(self, labels: Iterable[str], edge_pairs: Iterable[tuple[str, str]]):
        labels = tuple(_check_label(v) for v in labels)
        if not labels:
            raise EmptyInputError("graph needs at least one vertex")
        index: dict[str, int] = {}
        for v in labels:
            if v in index:
                raise DuplicateEdgeError(f"vertex label {v!r} listed twice")
            index[v] = len(index)

        seen: set[tuple[int, int]] = set()
        edges: list[tuple[int, int]] = []
        for u, v in edge_pairs:
            if u not in index:
                raise UnknownVertexError(f"edge endpoint {u!r} not in vertex list")
            if v not in index:
                raise UnknownVertexError(f"edge endpoint {v!r} not in vertex list")
            if u == v:
                raise SelfLoopError(f"self loop at vertex {u!r}")
            key = (min(index[u], index[v]), max(index[u], index[v]))
            if key in seen:
                raise DuplicateEdgeError(f"duplicate edge {u!r} {v!r}")
            seen.add(key)
            edges.append(key)
        edges.sort()

        adj_idx: list[list[int]] = [[] for _ in labels]
        for i, j in edges:
            adj_idx[i].append(j)
            adj_idx[j].append(i)
        for row in adj_idx:
            row.sort()

        # connectivity; report one vertex from the unreached part
        reached = {0}
        frontier = [0]
        while frontier:
            x = frontier.pop()
            for y in adj_idx[x]:
                if y not in reached:
                    reached.add(y)
                    frontier.append(y)
        if len(reached) != len(labels):
            missing = min(set(range(len(labels))) - reached)
            raise DisconnectedError(
                f"graph is disconnected: vertex {labels[missing]!r} is not "
                f"reachable from {labels[0]!r}"
            )

        self.labels = labels
        self.index = index
        self.edges = tuple(edges)
        self.adjacency = {
            v: frozenset(labels[j] for j in adj_idx[index[v]]) for v in labels
        }
        self._edge_lookup = {pair: k for k, pair in enumerate(self.edges)}
        self._adj_idx = tuple(tuple(row) for row in adj_idx)
        self._space = None
        self._hash = hash(
            (frozenset(labels), frozenset(frozenset(p) for p in seen))
        )

    # -- identity is by labelled vertex/edge sets, not by index assignment,
    #    so parse(serialize(g)) == g even when appearance order differs.
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return set(self.labels) == set(other.labels) and {
            frozenset((self.labels[i], self.labels[j])) for i, j in self.edges
        } == {
            frozenset((other.labels[i], other.labels[j])) for i, j in other.edges
        }

    def __hash__(self) -> int:
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(|V|={self.n_vertices}, |E|={self.n_edges})"

    @property
    def n_vertices(self) -> int:
        return len(self.labels)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def edge_ordinal(self, u: str, v: str) -> int:
        """Ordinal of the edge {u, v}; raises if absent."""
        if u not in self.index:
            raise UnknownVertexError(f"vertex {u!r} not in graph")
        if v not in self.index:
            raise UnknownVertexError(f"vertex {v!r} not in graph")
        i, j = self.index[u], self.index[v]
        key = (min(i, j), max(i, j))
        try:
            return self._edge_lookup[key]
        except KeyError:
            raise UnknownEdgeError(f"no edge {u!r} {v!r}") from None

    def edge_endpoints(self, e: int) -> tuple[str, str]:
        """Endpoint labels of edge ordinal e, in index order."""
        if not 0 <= e < len(self.edges):
            raise UnknownEdgeError(f"edge ordinal {e} out of range")
        i, j = self.edges[e]
        return self.labels[i], self.labels[j]

    def edge_name(self, e: int) -> str:
        u, v = self.edge_endpoints(e)
        return f"{u}-{v}"


def vertex_degree(g: Graph, v: str) -> int:
    if v not in g.index:
        raise UnknownVertexError(f"vertex {v!r} not in graph")
    return len(g._adj_idx[g.index[v]])


def is_tree(g: Graph) -> bool:
    # connected is guaranteed by construction
    return g.n_edges == g.n_vertices - 1


class WeightedGraph:
    """A Graph plus positive vertex and edge weights (default 1.0).

    Weight maps are exposed as plain dicts but must be treated as read-only;
    the class keeps identity semantics so per-instance caches stay valid.
    """

    __slots__ = ("graph", "vertex_weight", "edge_weight", "_wspace", "__weakref__")

    def __init__(
        self,
        graph: Graph,
        vertex_weight: Mapping[str, float] | None = None,
        edge_weight: Mapping[tuple[str, str], float] | None = None,
    ):
        self.graph = graph
        vw = {v: 1.0 for v in graph.labels}
        for v, w in (vertex_weight or {}).items():
            if v not in graph.index:
                raise UnknownVertexError(f"vertex weight for unknown vertex {v!r}")
            vw[v] = _check_weight(w, f"vertex {v!r}")
        ew = {}
        for e in range(graph.n_edges):
            ew[graph.edge_endpoints(e)] = 1.0
        for (u, v), w in (edge_weight or {}).items():
            key = graph.edge_endpoints(graph.edge_ordinal(u, v))
            ew[key] = _check_weight(w, f"edge {u!r} {v!r}")
        self.vertex_weight = vw
        self.edge_weight = ew
        self._wspace = None

    def w_vertex(self, v: str) -> float:
        return self.vertex_weight[v]

    def w_edge(self, e: int) -> float:
        return self.edge_weight[self.graph.edge_endpoints(e)]

    def has_constant_vertex_weights(self, rel_tol: float = 1e-12) -> bool:
        vals = list(self.vertex_weight.values())
        return all(math.isclose(w, vals[0], rel_tol=rel_tol) for w in vals)

    def __repr__(self) -> str:
        return f"WeightedGraph({self.graph!r})"


def _check_weight(w: object, what: str) -> float:
    try:
        w = float(w)
    except (TypeError, ValueError):
        raise NonpositiveWeightError(f"weight for {what} is not a number: {w!r}")
    if not math.isfinite(w) or w <= 0.0:
        raise NonpositiveWeightError(f"weight for {what} must be positive and finite, got {w}")
    return w


# --------------------------------------------------------------- parsing

def parse_edgelist(text: str) -> Graph:
    """Parse edge-list text: one 'u v' pair per line, '#' starts a comment.

    Accepts \\n or \\r\\n endings.  Vertex order is first appearance.
    """
    labels: list[str] = []
    seen: set[str] = set()
    pairs: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.split("\n"), start=1):
        line = raw.rstrip("\r")
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        tokens = body.split()
        if len(tokens) != 2:
            raise FormatError(
                f"line {lineno}: expected 'u v', got {len(tokens)} tokens: {line!r}"
            )
        u, v = tokens
        if u == v:
            raise SelfLoopError(f"line {lineno}: self loop at vertex {u!r}")
        for x in (u, v):
            if x not in seen:
                seen.add(x)
                labels.append(x)
        pairs.append((u, v))
    if not pairs:
        raise EmptyInputError("no edges in input")
    try:
        return Graph(labels, pairs)
    except DuplicateEdgeError as exc:
        raise DuplicateEdgeError(str(exc)) from None


def serialize_edgelist(g: Graph) -> str:
    """Inverse of parse_edgelist up to vertex/edge set equality."""
    lines = [f"{u} {v}" for u, v in (g.edge_endpoints(e) for e in range(g.n_edges))]
    return "\n".join(lines) + "\n"


def _coerce_label(value: object) -> str:
    if isinstance(value, str):
        return _check_label(value)
    if isinstance(value, int) and not isinstance(value, bool):
        return str(value)
    raise FormatError(f"vertex label must be a string or integer, got {value!r}")


def parse_weighted(text: str) -> WeightedGraph:
    """Parse the weighted JSON document.

    {"edges": [[u, v, w], ...], "vertex_weights": {u: w, ...}}
    The third edge entry and the vertex_weights block are optional; missing
    weights default to 1.0.
    """
    if not text.strip():
        raise EmptyInputError("empty weighted-graph document")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or "edges" not in doc:
        raise FormatError('weighted document must be an object with an "edges" list')
    raw_edges = doc["edges"]
    if not isinstance(raw_edges, list) or not raw_edges:
        raise EmptyInputError('"edges" must be a nonempty list')

    labels: list[str] = []
    seen: set[str] = set()
    pairs: list[tuple[str, str]] = []
    ew: dict[tuple[str, str], float] = {}
    for k, entry in enumerate(raw_edges):
        if not isinstance(entry, list) or len(entry) not in (2, 3):
            raise FormatError(f"edges[{k}]: expected [u, v] or [u, v, w], got {entry!r}")
        u, v = _coerce_label(entry[0]), _coerce_label(entry[1])
        w = entry[2] if len(entry) == 3 else 1.0
        for x in (u, v):
            if x not in seen:
                seen.add(x)
                labels.append(x)
        pairs.append((u, v))
        ew[(u, v)] = _check_weight(w, f"edge {u!r} {v!r}")

    vw: dict[str, float] = {}
    for v, w in (doc.get("vertex_weights") or {}).items():
        vw[_coerce_label(v)] = _check_weight(w, f"vertex {v!r}")

    graph = Graph(labels, pairs)
    return WeightedGraph(graph, vertex_weight=vw, edge_weight=ew)


def serialize_weighted(wg: WeightedGraph) -> str:
    g = wg.graph
    doc = {
        "edges": [[u, v, wg.edge_weight[(u, v)]]
                  for u, v in (g.edge_endpoints(e) for e in range(g.n_edges))],
        "vertex_weights": {v: wg.vertex_weight[v] for v in g.labels},
    }
    return json.dumps(doc, sort_keys=False)


# --------------------------------------------------------------- families

@dataclass(frozen=True)
class GraphFamily:
    """A named family plus parameters, e.g. GraphFamily('cycle', (5,))."""
    kind: str
    params: tuple = ()
    seed: int = 0


_FAMILY_GRAMMAR = (
    "family spec is name[:p1[:p2]] with name in {complete, cycle, bipartite, "
    "star, path, tree, random, circulant, petersen}; e.g. complete:5, "
    "bipartite:2:3, random:8:0.4, circulant:9:1,2"
)


def parse_family(spec: str, seed: int = 0) -> GraphFamily:
    """Parse a CLI family spec like 'cycle:6' or 'circulant:9:1,2'."""
    parts = spec.split(":")
    name = parts[0]
    args = parts[1:]

    def _int(s: str, what: str) -> int:
        try:
            return int(s)
        except ValueError:
            raise InvalidParameterError(f"{what} must be an integer; {_FAMILY_GRAMMAR}")

    def _float(s: str, what: str) -> float:
        try:
            return float(s)
        except ValueError:
            raise InvalidParameterError(f"{what} must be a number; {_FAMILY_GRAMMAR}")

    if name == "complete" and len(args) == 1:
        return GraphFamily("complete", (_int(args[0], "n"),))
    if name == "cycle" and len(args) == 1:
        return GraphFamily("cycle", (_int(args[0], "n"),))
    if name == "bipartite" and len(args) == 2:
        return GraphFamily("complete_bipartite", (_int(args[0], "n"), _int(args[1], "m")))
    if name == "star" and len(args) == 1:
        return GraphFamily("star", (_int(args[0], "m"),))
    if name == "path" and len(args) == 1:
        return GraphFamily("path", (_int(args[0], "n"),))
    if name == "tree" and len(args) == 1:
        return GraphFamily("random_tree", (_int(args[0], "n"),), seed)
    if name == "random" and len(args) == 2:
        return GraphFamily("random_connected", (_int(args[0], "n"), _float(args[1], "p")), seed)
    if name == "circulant" and len(args) == 2:
        offsets = tuple(_int(s, "offset") for s in args[1].split(","))
        return GraphFamily("circulant", (_int(args[0], "n"), offsets))
    if name == "petersen" and not args:
        return GraphFamily("petersen", ())
    raise InvalidParameterError(f"unrecognized family spec {spec!r}; {_FAMILY_GRAMMAR}")


def generate(family: GraphFamily | str, seed: int | None = None) -> Graph:
    """Build the named family deterministically (seed feeds splitmix64)."""
    if isinstance(family, str):
        family = parse_family(family, seed=seed if seed is not None else 0)
    elif seed is not None:
        family = GraphFamily(family.kind, family.params, seed)
    kind, params = family.kind, family.params
    if kind == "complete":
        return _complete(*params)
    if kind == "cycle":
        return _cycle(*params)
    if kind == "complete_bipartite":
        return _complete_bipartite(*params)
    if kind == "star":
        (m,) = params
        return _complete_bipartite(1, m)
    if kind == "path":
        return _path(*params)
    if kind == "random_tree":
        (n,) = params
        return _random_tree(n, family.seed)
    if kind == "random_connected":
        n, p = params
        return _random_connected(n, p, family.seed)
    if kind == "circulant":
        n, offsets = params
        return _circulant(n, offsets)
    if kind == "petersen":
        return _petersen()
    raise InvalidParameterError(f"unknown family kind {kind!r}")


def _labels(n: int) -> list[str]:
    return [f"v{i}" for i in range(n)]


def _complete(n: int) -> Graph:
    if n < 2:
        raise InvalidParameterError(f"complete graph needs n >= 2, got {n}")
    vs = _labels(n)
    return Graph(vs, [(vs[i], vs[j]) for i in range(n) for j in range(i + 1, n)])


def _cycle(n: int) -> Graph:
    if n < 3:
        raise InvalidParameterError(f"cycle needs n >= 3, got {n}")
    vs = _labels(n)
    return Graph(vs, [(vs[i], vs[(i + 1) % n]) for i in range(n)])


def _complete_bipartite(n: int, m: int) -> Graph:
    if n < 1 or m < 1:
        raise InvalidParameterError(f"bipartite parts need n, m >= 1, got {n}, {m}")
    vs = _labels(n + m)
    return Graph(vs, [(vs[i], vs[n + j]) for i in range(n) for j in range(m)])


def _path(n: int) -> Graph:
    if n < 2:
        raise InvalidParameterError(f"path needs n >= 2, got {n}")
    vs = _labels(n)
    return Graph(vs, [(vs[i], vs[i + 1]) for i in range(n - 1)])


def _random_tree(n: int, seed: int) -> Graph:
    """Uniform labelled tree via a random Pruefer sequence."""
    if n < 2:
        raise InvalidParameterError(f"random tree needs n >= 2, got {n}")
    vs = _labels(n)
    return Graph(vs, [(vs[i], vs[j]) for i, j in _prufer_edges(n, SplitMix64(seed))])


def _prufer_edges(n: int, rng: SplitMix64) -> list[tuple[int, int]]:
    if n == 2:
        return [(0, 1)]
    seq = [rng.below(n) for _ in range(n - 2)]
    degree = [1] * n
    for v in seq:
        degree[v] += 1
    leaves = [v for v in range(n) if degree[v] == 1]
    heapq.heapify(leaves)
    edges = []
    for v in seq:
        leaf = heapq.heappop(leaves)
        edges.append((leaf, v))
        degree[v] -= 1
        if degree[v] == 1:
            heapq.heappush(leaves, v)
    edges.append((heapq.heappop(leaves), heapq.heappop(leaves)))
    return edges


def _random_connected(n: int, p: float, seed: int) -> Graph:
    """Random spanning tree plus independent extra edges with probability p.

    Connectivity is guaranteed by the tree skeleton; the remaining vertex
    pairs are scanned in lexicographic order so a seed pins the graph.
    """
    if n < 2:
        raise InvalidParameterError(f"random connected graph needs n >= 2, got {n}")
    if not (0.0 < p <= 1.0):
        raise InvalidParameterError(f"edge probability must be in (0, 1], got {p}")
    rng = SplitMix64(seed)
    tree = set(tuple(sorted(e)) for e in _prufer_edges(n, rng))
    extra = []
    for i in range(n):
        for j in range(i + 1, n):
            if (i, j) in tree:
                continue
            if rng.uniform() < p:
                extra.append((i, j))
    vs = _labels(n)
    return Graph(vs, [(vs[i], vs[j]) for i, j in sorted(tree) + extra])


def _circulant(n: int, offsets: Sequence[int]) -> Graph:
    if n < 3:
        raise InvalidParameterError(f"circulant needs n >= 3, got {n}")
    norm = set()
    for off in offsets:
        off = off % n
        if off == 0:
            raise InvalidParameterError("circulant offset 0 (mod n) gives self loops")
        norm.add(min(off, n - off))
    vs = _labels(n)
    pairs = sorted({tuple(sorted((i, (i + off) % n))) for i in range(n) for off in norm})
    return Graph(vs, [(vs[i], vs[j]) for i, j in pairs])


def _petersen() -> Graph:
    """Outer 5-cycle, inner pentagram, five spokes."""
    vs = _labels(10)
    pairs = [(i, (i + 1) % 5) for i in range(5)]
    pairs += [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    pairs += [(i, i + 5) for i in range(5)]
    return Graph(vs, [(vs[i], vs[j]) for i, j in pairs])
