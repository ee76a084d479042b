"""Incidence-based Laplacians on vertices (dim 0) and edges (dim 1).

Each edge {x, y} with x before y in vertex order is canonically oriented
x -> y; an orientation is a tuple of +-1 flips against that base, and the
boundary convention is d[x, y] = [y] - [x] (so the head carries +1).  With
D the signed edge-by-vertex incidence matrix and diagonal weights W0
(vertices) and W1 (edges), the two operators are

    vertex:  W0^-1 D^T W1 D      (n x n)
    edge:    D W0^-1 D^T W1      (m x m)

and a weighting scheme fixes the pair (W0, W1):

    unit     W0 = I, W1 = I: the combinatorial Laplacian and its edge
             companion
    walk     W0 = diag(vertex degree), W1 = I: the vertex operator is the
             random-walk normalized Laplacian
    degree   W0 = I, W1 = diag(1/d_e) with d_e the edge degree: the edge
             operator is the one whose spectral gap the curvature bounds;
             its diagonal is 2/d_e
    graph    W0, W1 from a WeightedGraph's vertex and edge weights

Because each scheme is one consistent pair, the vertex and edge operators
of a scheme share their nonzero spectra (they are AB and BA for
A = W0^-1 D^T W1, B = D).  Unweighted schemes produce exact Fraction
entries.  The operators are not symmetric in general but are similar to
symmetric positive-semidefinite matrices (conjugation by W1^1/2 resp.
W0^1/2); `symmetrized` returns that form for the eigensolver.  Eigenvalues
never depend on the orientation, which the test suite checks by explicit
reorientation.
"""

from __future__ import annotations

import hashlib
import math
from fractions import Fraction
from typing import Sequence

from .edge_geometry import edge_measure, edge_space, weighted_edge_degree
from .errors import (
    BadOrientationError,
    InvalidParameterError,
    IsolatedEdgeError,
    SingularWeightError,
)
from .graph_core import Graph, WeightedGraph

OPERATORS = ("vertex", "edge")
WEIGHTINGS = ("unit", "walk", "degree", "graph")


def _base(g) -> Graph:
    return g.graph if isinstance(g, WeightedGraph) else g


def canonical_orientation(g) -> tuple[int, ...]:
    """All edges run from their lower-index endpoint to the higher."""
    return (1,) * _base(g).n_edges


def check_orientation(g, orientation: Sequence[int]) -> tuple[int, ...]:
    base = _base(g)
    orientation = tuple(orientation)
    if len(orientation) != base.n_edges:
        raise BadOrientationError(
            f"orientation has {len(orientation)} signs for {base.n_edges} edges"
        )
    for e, s in enumerate(orientation):
        if s not in (1, -1):
            raise BadOrientationError(f"orientation[{e}] = {s!r}, need +1 or -1")
    return orientation


def reorient(orientation: Sequence[int], flips) -> tuple[int, ...]:
    """Flip the listed edge ordinals, returning a new orientation tuple."""
    out = list(orientation)
    for e in flips:
        if not 0 <= e < len(out):
            raise BadOrientationError(f"cannot flip unknown edge ordinal {e}")
        out[e] = -out[e]
    return tuple(out)


def orientation_hash(orientation: Sequence[int]) -> str:
    """Short stable digest of a sign pattern, for matrix dump headers."""
    text = "".join("+" if s == 1 else "-" for s in orientation)
    return hashlib.sha256(text.encode("ascii")).hexdigest()[:12]


def build_incidence(g, orientation: Sequence[int] | None = None) -> list[list[int]]:
    """Signed incidence matrix, one row per edge: -s at tail, +s at head."""
    base = _base(g)
    if orientation is None:
        orientation = canonical_orientation(base)
    orientation = check_orientation(base, orientation)
    rows = []
    for e, (i, j) in enumerate(base.edges):
        row = [0] * base.n_vertices
        row[i] = -orientation[e]
        row[j] = orientation[e]
        rows.append(row)
    return rows


def weight_pair(g, weighting: str):
    """The scheme's diagonals: w0 over vertices, w1 over edges."""
    base = _base(g)
    n, m = base.n_vertices, base.n_edges
    if weighting == "unit":
        return [Fraction(1)] * n, [Fraction(1)] * m
    if weighting == "walk":
        w0 = [Fraction(len(base._adj_idx[v])) for v in range(n)]
        return w0, [Fraction(1)] * m
    if weighting == "degree":
        space = edge_space(base)
        if any(d == 0 for d in space.degrees):
            raise IsolatedEdgeError(
                "degree weighting needs every edge to have a neighbor"
            )
        return [Fraction(1)] * n, [Fraction(1, space.degrees[e]) for e in range(m)]
    if weighting == "graph":
        if not isinstance(g, WeightedGraph):
            raise InvalidParameterError("weighting 'graph' needs a WeightedGraph")
        w0 = [g.w_vertex(lbl) for lbl in g.graph.labels]
        w1 = [g.w_edge(e) for e in range(m)]
        return w0, w1
    raise InvalidParameterError(
        f"weighting must be one of {WEIGHTINGS}, got {weighting!r}"
    )


def _check_positive(ws, what: str):
    for k, w in enumerate(ws):
        if not w > 0:
            raise SingularWeightError(f"{what} weight {k} is {w}; need > 0")


def assemble(
    g,
    operator: str = "edge",
    weighting: str = "degree",
    orientation: Sequence[int] | None = None,
    vertex_weights: Sequence | None = None,
    edge_weights: Sequence | None = None,
):
    """Operator matrix as a list of rows (Fractions when exact, else floats).

    Explicit vertex_weights / edge_weights override the scheme's diagonals;
    they must be positive and of length n resp. m.
    """
    base = _base(g)
    if operator not in OPERATORS:
        raise InvalidParameterError(f"operator must be one of {OPERATORS}, got {operator!r}")
    d0 = build_incidence(base, orientation)
    w0, w1 = weight_pair(g, weighting)
    if vertex_weights is not None:
        if len(vertex_weights) != base.n_vertices:
            raise SingularWeightError(
                f"{len(vertex_weights)} vertex weights for {base.n_vertices} vertices"
            )
        w0 = list(vertex_weights)
    if edge_weights is not None:
        if len(edge_weights) != base.n_edges:
            raise SingularWeightError(
                f"{len(edge_weights)} edge weights for {base.n_edges} edges"
            )
        w1 = list(edge_weights)
    _check_positive(w0, "vertex")
    _check_positive(w1, "edge")

    n, m = base.n_vertices, base.n_edges
    if operator == "vertex":
        # W0^-1 D^T W1 D
        out = [[w0[u] * 0 for _ in range(n)] for u in range(n)]
        for e in range(m):
            for u in range(n):
                if d0[e][u]:
                    for v in range(n):
                        if d0[e][v]:
                            out[u][v] += d0[e][u] * w1[e] * d0[e][v]
        for u in range(n):
            for v in range(n):
                out[u][v] = out[u][v] / w0[u]
        return out
    # D W0^-1 D^T W1
    out = [[w1[0] * 0 for _ in range(m)] for _ in range(m)]
    for e in range(m):
        for f in range(m):
            acc = None
            for v in range(n):
                if d0[e][v] and d0[f][v]:
                    term = d0[e][v] * d0[f][v] / w0[v]
                    acc = term if acc is None else acc + term
            if acc is not None:
                out[e][f] = acc * w1[f]
    return out


def symmetrized(
    g,
    operator: str = "edge",
    weighting: str = "degree",
    orientation: Sequence[int] | None = None,
):
    """Symmetric PSD matrix similar to the operator (same eigenvalues).

    Both forms are Gram matrices of B = W1^1/2 D W0^-1/2: the vertex
    operator is similar to B^T B and the edge operator to B B^T.  Entries
    are floats (the conjugation takes square roots).
    """
    base = _base(g)
    if operator not in OPERATORS:
        raise InvalidParameterError(f"operator must be one of {OPERATORS}, got {operator!r}")
    d0 = build_incidence(base, orientation)
    w0, w1 = weight_pair(g, weighting)
    _check_positive(w0, "vertex")
    _check_positive(w1, "edge")
    n, m = base.n_vertices, base.n_edges
    b = [
        [math.sqrt(w1[e]) * d0[e][v] / math.sqrt(w0[v]) for v in range(n)]
        for e in range(m)
    ]
    if operator == "vertex":
        return [
            [sum(b[e][u] * b[e][v] for e in range(m)) for v in range(n)]
            for u in range(n)
        ]
    return [
        [sum(b[e][v] * b[f][v] for v in range(n)) for f in range(m)]
        for e in range(m)
    ]


def apply_down_part(g, values: Sequence, orientation: Sequence[int] | None = None):
    """Off-diagonal part of the degree-weighted edge operator, measure route.

    For each edge e and every neighbor e' sharing vertex v,

        unweighted: sgn_e(v) sgn_e'(v) m_e(e') (d_e / d_e') u(e')
        weighted:   sgn_e(v) sgn_e'(v) m_e(e') (d_e / w0(v)) u(e')

    summed over e', where m_e is the neighborhood measure and d_e the
    (weighted) edge degree.  This is computed from measures and degrees,
    not from incidence products, so the tests can cross-check it against
    `assemble` minus its diagonal.
    """
    base = _base(g)
    if len(values) != base.n_edges:
        raise InvalidParameterError(f"{len(values)} values for {base.n_edges} edges")
    if orientation is None:
        orientation = canonical_orientation(base)
    orientation = check_orientation(base, orientation)
    space = edge_space(base)

    def sign_at(e: int, v: int) -> int:
        i, j = base.edges[e]
        s = orientation[e]
        return s if v == j else -s

    weighted = isinstance(g, WeightedGraph)
    out = []
    for e in range(base.n_edges):
        me = edge_measure(g, e).as_dict()
        if weighted:
            d_e = weighted_edge_degree(g, e)
        else:
            d_e = space.degrees[e]
        acc = None
        for f in space.neighbors[e]:
            v = space.shared_vertex[e][f]
            if weighted:
                scale = d_e / g.w_vertex(base.labels[v])
            else:
                scale = Fraction(d_e, space.degrees[f])
            term = sign_at(e, v) * sign_at(f, v) * me[f] * scale * values[f]
            acc = term if acc is None else acc + term
        out.append(acc if acc is not None else 0 * values[e])
    return out


def dump_matrix(matrix, label: str, orientation: Sequence[int]) -> str:
    """Text form: '# label rows cols orientation-hash' then one row per line."""
    rows = len(matrix)
    cols = len(matrix[0]) if rows else 0
    lines = [f"# {label} {rows} {cols} {orientation_hash(orientation)}"]
    for row in matrix:
        lines.append(" ".join(f"{float(x):.17g}" for x in row))
    return "\n".join(lines) + "\n"
