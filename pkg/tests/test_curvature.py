"""Curvature values frozen from hand derivations.

Each pinned constant is derived in the comment next to it; the transport
optimum behind each one is independently confirmed by the brute-force
enumeration in test_transport.py, so these constants double as regression
oracles for the whole measure -> cost -> solver pipeline.
"""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from edge_ricci.curvature import (
    edges_adjacent,
    kappa_min,
    lower_bound,
    ricci,
    ricci_all_adjacent,
    tree_curvature_formula,
    upper_bound,
)
from edge_ricci.errors import (
    InvalidParameterError,
    NonconstantVertexWeightsError,
    NotAdjacentError,
    NotATreeError,
    SamePairError,
)
from edge_ricci.graph_core import Graph, WeightedGraph, generate


def test_path3_is_flat():
    # both measures are point masses on the other edge; W = d = 1
    g = generate("path:3")
    cp = ricci(g, 0, 1)
    assert cp.kappa == 0 and cp.wasserstein == 1 and cp.distance == 1
    assert cp.exact


def test_path4_end_edges_have_curvature_one():
    # both end edges load everything on the middle edge: identical measures
    # at distance 2
    g = generate("path:4")
    e0 = g.edge_ordinal("v0", "v1")
    e2 = g.edge_ordinal("v2", "v3")
    assert not edges_adjacent(g, e0, e2)
    cp = ricci(g, e0, e2)
    assert cp.distance == 2 and cp.wasserstein == 0 and cp.kappa == 1


def test_cycle4_opposite_edges():
    g = generate("cycle:4")
    e = g.edge_ordinal("v0", "v1")
    f = g.edge_ordinal("v2", "v3")
    assert ricci(g, e, f).kappa == 1


def test_triangle_curvature_is_one_half():
    g = generate("complete:3")
    assert all(cp.kappa == Fraction(1, 2) for cp in ricci_all_adjacent(g).values())


@pytest.mark.parametrize("m,want", [(3, Fraction(1, 2)), (4, Fraction(2, 3)),
                                    (7, Fraction(5, 6))])
def test_star_curvature(m, want):
    g = generate(f"star:{m}")
    assert all(cp.kappa == want for cp in ricci_all_adjacent(g).values())


def test_bipartite_2_3_depends_on_shared_vertex():
    g = generate("bipartite:2:3")
    # v0, v1 have degree 3; v2, v3, v4 have degree 2
    via_left = ricci(g, g.edge_ordinal("v0", "v2"), g.edge_ordinal("v0", "v3"))
    via_right = ricci(g, g.edge_ordinal("v0", "v2"), g.edge_ordinal("v1", "v2"))
    assert via_left.kappa == Fraction(1, 3)   # (3 - 2)/(2 + 3 - 2)
    assert via_right.kappa == 0               # (2 - 2)/(2 + 3 - 2)


def test_pair_argument_validation():
    g = generate("path:4")
    with pytest.raises(SamePairError):
        ricci(g, 1, 1)
    with pytest.raises(NotAdjacentError):
        tree_curvature_formula(g, 0, 2)
    with pytest.raises(InvalidParameterError):
        kappa_min(g, "some")


# ------------------------------------------------------------------ bounds

def test_k4_bounds_bracket_the_value():
    g = generate("complete:4")
    k = ricci(g, 0, 1).kappa
    assert lower_bound(g, 0, 1) == -1              # -2 (1 - 1/4 - 1/4)
    assert upper_bound(g, 0, 1) == Fraction(3, 2)  # all 6 edges / 4
    assert upper_bound(g, 0, 1, "intersection") == Fraction(1, 2)
    assert lower_bound(g, 0, 1) <= k <= upper_bound(g, 0, 1)


def test_cycle_bounds_pin_the_value_to_zero():
    # both neighborhoods are single edges: the floor clamps at 0 and the
    # union ceiling counts the 4 edges {e, f, g, h} over max degree 2
    g = generate("cycle:4")
    e = g.edge_ordinal("v0", "v1")
    f = g.edge_ordinal("v1", "v2")
    assert lower_bound(g, e, f) == 0
    assert upper_bound(g, e, f) == 2
    assert upper_bound(g, e, f, "intersection") == 0
    assert ricci(g, e, f).kappa == 0


def test_weighted_bounds():
    base = generate("cycle:4")
    e = base.edge_ordinal("v0", "v1")
    f = base.edge_ordinal("v1", "v2")
    heavy = WeightedGraph(base, None, {("v0", "v3"): 5.0, ("v2", "v3"): 5.0})
    # floor: -2 (1 - w(f)/d_e - w(e)/d_f)+ with weighted degrees;
    # d_e = w(v0v3) + w(v1v2) = 6, d_f = w(v0v1) + w(v2v3) = 6
    assert lower_bound(heavy, e, f) == pytest.approx(-2 * (1 - 1 / 6 - 1 / 6))
    # when the bracket goes negative the positive part clamps the floor at 0
    clamped = WeightedGraph(base, None, {("v0", "v1"): 2.0})
    assert lower_bound(clamped, e, f) == 0.0
    assert upper_bound(heavy, e, f) == pytest.approx(0.0)  # disjoint neighborhoods
    lopsided = WeightedGraph(base, {"v0": 3.0})
    with pytest.raises(NonconstantVertexWeightsError):
        upper_bound(lopsided, e, f)


def test_upper_bound_variant_validation():
    with pytest.raises(InvalidParameterError):
        upper_bound(generate("complete:3"), 0, 1, "something")


# ------------------------------------------------------- tree formula

def _spider():
    return Graph(
        ["h", "a1", "b1", "a2", "b2", "a3", "b3"],
        [("h", "a1"), ("a1", "b1"), ("h", "a2"), ("a2", "b2"),
         ("h", "a3"), ("a3", "b3")],
    )


def test_tree_formula_matches_on_internal_pairs():
    # hub pair of the 3-leg spider: both non-shared endpoints are internal
    g = _spider()
    e = g.edge_ordinal("h", "a1")
    f = g.edge_ordinal("h", "a2")
    assert tree_curvature_formula(g, e, f) == Fraction(1, 3)
    assert ricci(g, e, f).kappa == Fraction(1, 3)


def test_tree_formula_overshoots_on_leaf_pairs():
    # leg pair: m_f is a point mass on e itself, so everything m_e holds is
    # one hop from home and kappa = 0; the formula still reports 2/3
    g = _spider()
    e = g.edge_ordinal("h", "a1")
    f = g.edge_ordinal("a1", "b1")
    assert tree_curvature_formula(g, e, f) == Fraction(2, 3)
    assert ricci(g, e, f).kappa == 0


def test_tree_formula_rejects_non_trees_and_weighted():
    with pytest.raises(NotATreeError):
        tree_curvature_formula(generate("cycle:5"), 0, 1)
    with pytest.raises(InvalidParameterError):
        tree_curvature_formula(WeightedGraph(generate("path:4")), 0, 1)


# -------------------------------------------------------- whole-graph ops

def test_kappa_min_modes():
    g = generate("complete:4")
    assert kappa_min(g, "adjacent") == Fraction(1, 2)
    assert kappa_min(g, "all") == Fraction(1, 2)
    c4 = generate("cycle:4")
    assert kappa_min(c4, "adjacent") == 0
    assert kappa_min(c4, "all") == 0  # opposite pairs sit at +1, min stays 0


def test_all_adjacent_table_is_complete_and_keyed_low_high():
    g = generate("star:4")
    table = ricci_all_adjacent(g)
    assert len(table) == 6  # C(4, 2) leg pairs
    assert all(e < f for e, f in table)


@given(st.integers(0, 150))
def test_bounds_bracket_everywhere(seed):
    g = generate("random:7:0.4", seed=seed)
    for (e, f), cp in ricci_all_adjacent(g).items():
        assert isinstance(cp.kappa, Fraction)
        assert cp.kappa <= 1
        assert lower_bound(g, e, f) <= cp.kappa <= upper_bound(g, e, f)
        assert cp.transport.gap == 0


@given(st.integers(0, 150))
def test_curvature_is_symmetric(seed):
    g = generate("random:6:0.4", seed=seed)
    for e in range(min(3, g.n_edges)):
        for f in range(e + 1, min(4, g.n_edges)):
            assert ricci(g, e, f).kappa == ricci(g, f, e).kappa
