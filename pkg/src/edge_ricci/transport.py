"""Exact 1-Wasserstein distance between edge measures.

The primal problem is the transportation LP over supp(mu) x supp(nu); it is
solved by successive shortest augmenting paths with node potentials.  When
both measures are exact rationals and the costs are integers (the unweighted
case) the masses are scaled by the LCM of their denominators and the whole
computation runs in integer arithmetic, so the distance, plan, and dual
certificate are exact.  Weighted instances run in binary64 with an
epsilon-complementary-slackness check.

The dual certificate is a single function f on the joint support with
|f(a) - f(b)| <= d(a, b), built from the final potentials by the envelope
f(a) = min_j (beta_j + d(a, j)); strong duality makes its objective equal
the primal cost, which is reverified after every solve.

brute_force_wasserstein enumerates every vertex of the transportation
polytope (spanning trees of the bipartite support graph) and is the
independent oracle used by the test suite; it shares no code with the
flow solver.
"""

from __future__ import annotations

import heapq
import math
from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping

from .edge_geometry import EdgeMeasure
from .errors import MassImbalanceError, MissingPotentialError, TransportError

_FLOAT_EPS_CS = 1e-10   # complementary slackness tolerance, float mode
_FLOAT_EPS_GAP = 1e-9   # accepted primal-dual gap, float mode
_FLOAT_DUST = 1e-15     # residual supply/demand/flow below this is rounding noise


@dataclass(frozen=True)
class TransportProblem:
    """Measures plus a cost table covering the joint support (both orders)."""

    mu: EdgeMeasure
    nu: EdgeMeasure
    cost: Mapping[tuple[int, int], object]

    def __post_init__(self):
        total_mu = sum(self.mu.masses)
        total_nu = sum(self.nu.masses)
        if isinstance(total_mu, Fraction) and isinstance(total_nu, Fraction):
            if total_mu != total_nu:
                raise MassImbalanceError(f"supply {total_mu} != demand {total_nu}")
        elif abs(float(total_mu) - float(total_nu)) > 1e-12:
            raise MassImbalanceError(f"supply {total_mu} != demand {total_nu}")
        joint = set(self.mu.atoms) | set(self.nu.atoms)
        for a in joint:
            for b in joint:
                c = self.cost.get((a, b))
                if c is None:
                    raise TransportError(f"cost table misses pair ({a}, {b})")
                if c < 0:
                    raise TransportError(f"negative cost {c} for pair ({a}, {b})")
                if a == b and c != 0:
                    raise TransportError(f"nonzero self cost {c} at atom {a}")

    @property
    def exact(self) -> bool:
        return (
            self.mu.exact
            and self.nu.exact
            and all(isinstance(c, int) for c in self.cost.values())
        )

    def joint_support(self) -> tuple[int, ...]:
        return tuple(sorted(set(self.mu.atoms) | set(self.nu.atoms)))


@dataclass(frozen=True)
class Coupling:
    """Transport plan entries (source atom, sink atom, mass), mass > 0."""

    entries: tuple[tuple[int, int, object], ...]


@dataclass(frozen=True)
class DualPotential:
    """Kantorovich potential f on the joint support (1-Lipschitz there)."""

    values: Mapping[int, object]


@dataclass(frozen=True)
class TransportResult:
    distance: object          # Fraction (exact mode) or float
    plan: Coupling
    dual: DualPotential
    gap: object               # primal cost minus dual objective

    @property
    def exact(self) -> bool:
        return isinstance(self.distance, Fraction)


@dataclass(frozen=True)
class CouplingCheck:
    ok: bool
    violations: tuple[str, ...]


def solve_wasserstein(problem: TransportProblem) -> TransportResult:
    """Minimum-cost transport with an exact (or certified float) optimum."""
    exact = problem.exact
    mu, nu = problem.mu, problem.nu
    sources = list(mu.atoms)
    sinks = list(nu.atoms)
    if exact:
        scale = 1
        for m in (*mu.masses, *nu.masses):
            scale = scale * m.denominator // math.gcd(scale, m.denominator)
        supply = [int(m * scale) for m in mu.masses]
        demand = [int(m * scale) for m in nu.masses]
        zero, inf = 0, None
    else:
        scale = None
        supply = [float(m) for m in mu.masses]
        demand = [float(m) for m in nu.masses]
        zero, inf = 0.0, None
        # The two float sums disagree by a few ulp; rescale demand so the
        # totals match exactly, otherwise the loop below chases the dust.
        fix = sum(supply) / sum(demand)
        demand = [d * fix for d in demand]

    S, T = len(sources), len(sinks)
    cost = [[problem.cost[(sources[i], sinks[j])] for j in range(T)] for i in range(S)]
    flow = [[zero] * T for _ in range(S)]
    phi = [zero] * (S + T)  # node potentials; reduced cost c + phi[u] - phi[v] >= 0

    def remaining_supply():
        return [i for i in range(S) if supply[i] > (0 if exact else _FLOAT_DUST)]

    def remaining_demand():
        return [j for j in range(T) if demand[j] > (0 if exact else _FLOAT_DUST)]

    # Exact runs drain in at most S + T augmentations.  Float runs normally
    # do too, but rounding can recycle residual arcs, so a hard cap turns a
    # pathological instance into an error instead of a spin.
    budget = (S + 2) * (T + 2) * 8
    active_sources = remaining_supply()
    while active_sources:
        budget -= 1
        if budget < 0:
            raise TransportError("augmentation budget exhausted; instance does not drain")
        # multi-source Dijkstra over reduced costs in the residual network
        dist = [None] * (S + T)
        parent: list[int | None] = [None] * (S + T)
        root = [None] * (S + T)
        pq = []
        for i in active_sources:
            dist[i] = zero
            root[i] = i
            heapq.heappush(pq, (zero, i))
        while pq:
            d, u = heapq.heappop(pq)
            if dist[u] is None or d > dist[u]:
                continue
            if u < S:
                for j in range(T):
                    rc = cost[u][j] + phi[u] - phi[S + j]
                    # Reduced costs are >= 0 by invariant; float rounding can
                    # leave a -1e-17 that Dijkstra would cycle on forever.
                    if not exact and rc < 0.0:
                        rc = 0.0
                    nd = d + rc
                    v = S + j
                    if dist[v] is None or nd < dist[v]:
                        dist[v] = nd
                        parent[v] = u
                        root[v] = root[u]
                        heapq.heappush(pq, (nd, v))
            else:
                j = u - S
                for i in range(S):
                    if flow[i][j] > (0 if exact else 0.0):
                        rc = -cost[i][j] + phi[u] - phi[i]
                        if not exact and rc < 0.0:
                            rc = 0.0
                        nd = d + rc
                        if dist[i] is None or nd < dist[i]:
                            dist[i] = nd
                            parent[i] = u
                            root[i] = root[u]
                            heapq.heappush(pq, (nd, i))
        targets = [j for j in remaining_demand() if dist[S + j] is not None]
        if not targets:
            if exact or remaining_demand():
                raise TransportError("flow network admits no augmenting path")
            break  # only sub-threshold float dust is left unshipped
        tgt = min(targets, key=lambda j: (dist[S + j], j))
        d_tgt = dist[S + tgt]

        # potentials stay dual-feasible after augmenting along tight arcs
        for v in range(S + T):
            phi[v] = phi[v] + (dist[v] if dist[v] is not None and dist[v] < d_tgt else d_tgt)

        # trace the augmenting path back to its root source
        path = []
        v = S + tgt
        while parent[v] is not None:
            path.append((parent[v], v))
            v = parent[v]
        src = v
        amt = min(supply[src], demand[tgt])
        for u, w in path:
            if u < S:  # forward arc u -> w
                pass
            else:      # residual arc, capacity = current flow
                amt = min(amt, flow[w][u - S])
        for u, w in path:
            if u < S:
                flow[u][w - S] += amt
            else:
                flow[w][u - S] -= amt
                if not exact and flow[w][u - S] < _FLOAT_DUST:
                    flow[w][u - S] = 0.0
        supply[src] -= amt
        demand[tgt] -= amt
        if not exact:
            if supply[src] < _FLOAT_DUST:
                supply[src] = 0.0
            if demand[tgt] < _FLOAT_DUST:
                demand[tgt] = 0.0
        active_sources = remaining_supply()

    total = zero
    entries = []
    for i in range(S):
        for j in range(T):
            x = flow[i][j]
            if x > (0 if exact else 0.0):
                mass = Fraction(x, scale) if exact else x
                entries.append((sources[i], sinks[j], mass))
                total += x * cost[i][j]
    distance = Fraction(total, scale) if exact else total
    entries.sort(key=lambda t: (t[0], t[1]))
    plan = Coupling(tuple(entries))

    if not exact:
        _check_complementary_slackness(cost, flow, phi, S, T)

    # envelope dual certificate: f(a) = min_j (beta_j + d(a, sink_j))
    beta = {sinks[j]: -phi[S + j] for j in range(T)}
    f = {}
    for a in problem.joint_support():
        f[a] = min(beta[b] + problem.cost[(a, b)] for b in sinks)
    dual = DualPotential(f)

    gap = distance - dual_objective(problem, dual)
    if exact:
        if gap != 0:
            raise TransportError(f"exact solve left a nonzero duality gap {gap}")
    elif abs(gap) > _FLOAT_EPS_GAP:
        raise TransportError(f"duality gap {gap} exceeds {_FLOAT_EPS_GAP}")
    return TransportResult(distance, plan, dual, gap)


def _check_complementary_slackness(cost, flow, phi, S, T):
    for i in range(S):
        for j in range(T):
            if flow[i][j] > 0.0:
                rc = cost[i][j] + phi[i] - phi[S + j]
                if abs(rc) > _FLOAT_EPS_CS * max(1.0, abs(cost[i][j])):
                    raise TransportError(
                        f"complementary slackness violated on arc ({i},{j}): {rc}"
                    )


def verify_coupling(problem: TransportProblem, plan: Coupling) -> CouplingCheck:
    """Recheck both marginals; names the first offending row/column."""
    row = {a: None for a in problem.mu.atoms}
    col = {b: None for b in problem.nu.atoms}
    violations = []
    for a, b, mass in plan.entries:
        if a not in row:
            violations.append(f"plan row {a} is outside supp(mu)")
            continue
        if b not in col:
            violations.append(f"plan column {b} is outside supp(nu)")
            continue
        row[a] = mass if row[a] is None else row[a] + mass
        col[b] = mass if col[b] is None else col[b] + mass

    def _bad(total, want) -> bool:
        total = total if total is not None else (want - want)  # typed zero
        if isinstance(want, Fraction) and isinstance(total, (int, Fraction)):
            return total != want
        return abs(float(total) - float(want)) > 1e-12

    for a, want in zip(problem.mu.atoms, problem.mu.masses):
        if _bad(row[a], want):
            violations.append(f"row {a}: mass {row[a]} != mu {want}")
            break
    for b, want in zip(problem.nu.atoms, problem.nu.masses):
        if _bad(col[b], want):
            violations.append(f"column {b}: mass {col[b]} != nu {want}")
            break
    return CouplingCheck(not violations, tuple(violations))


def dual_objective(problem: TransportProblem, dual: DualPotential) -> object:
    """sum f(a) (mu(a) - nu(a)) over the joint support."""
    mu = problem.mu.as_dict()
    nu = problem.nu.as_dict()
    total = None
    for a in problem.joint_support():
        if a not in dual.values:
            raise MissingPotentialError(f"potential undefined on atom {a}")
        term = dual.values[a] * (mu.get(a, 0) - nu.get(a, 0))
        total = term if total is None else total + term
    return total


def lipschitz_excess(problem: TransportProblem, dual: DualPotential) -> object:
    """max over joint pairs of |f(a) - f(b)| - d(a, b); feasible iff <= 0."""
    joint = problem.joint_support()
    worst = None
    for a in joint:
        for b in joint:
            if a == b:
                continue
            if a not in dual.values or b not in dual.values:
                raise MissingPotentialError(f"potential undefined on atom {a} or {b}")
            excess = abs(dual.values[a] - dual.values[b]) - problem.cost[(a, b)]
            if worst is None or excess > worst:
                worst = excess
    return worst if worst is not None else 0


# ------------------------------------------------------------------ oracle

_MAX_ORACLE_SIDE = 6
_tree_plans: dict[tuple[int, int], list] = {}


def _elimination_plans(s: int, t: int) -> list[list[tuple[int, int, int, int]]]:
    """All spanning trees of K_{s,t} as leaf-elimination schedules.

    Each schedule entry is (leaf_node, source, sink, other_node); nodes are
    0..s-1 for sources and s..s+t-1 for sinks.
    """
    key = (s, t)
    if key in _tree_plans:
        return _tree_plans[key]
    arcs = [(i, s + j) for i in range(s) for j in range(t)]
    n = s + t
    plans = []
    for chosen in combinations(range(len(arcs)), n - 1):
        # spanning tree test by union-find
        parent = list(range(n))

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        ok = True
        for k in chosen:
            u, v = arcs[k]
            ru, rv = find(u), find(v)
            if ru == rv:
                ok = False
                break
            parent[ru] = rv
        if not ok:
            continue
        adj = {v: [] for v in range(n)}
        for k in chosen:
            u, v = arcs[k]
            adj[u].append((k, v))
            adj[v].append((k, u))
        degree = {v: len(adj[v]) for v in range(n)}
        removed = set()
        leaves = [v for v in range(n) if degree[v] == 1]
        schedule = []
        while leaves:
            leaf = leaves.pop()
            if degree[leaf] != 1:
                continue
            arc_k = next(k for k, w in adj[leaf] if k not in removed)
            other = next(w for k, w in adj[leaf] if k == arc_k)
            removed.add(arc_k)
            u, v = arcs[arc_k]
            schedule.append((leaf, u, v - s, other))
            degree[other] -= 1
            degree[leaf] = 0
            if degree[other] == 1:
                leaves.append(other)
        plans.append(schedule)
    _tree_plans[key] = plans
    return plans


def brute_force_wasserstein(problem: TransportProblem) -> object:
    """Optimal cost by enumerating transportation-polytope vertices.

    Exact for rational measures with integer costs.  Intended for supports
    with at most four atoms per side (the oracle bound in the test suite);
    refuses anything wider than six to keep enumeration honest.
    """
    s, t = len(problem.mu.atoms), len(problem.nu.atoms)
    if s > _MAX_ORACLE_SIDE or t > _MAX_ORACLE_SIDE:
        raise TransportError(f"oracle limited to {_MAX_ORACLE_SIDE} atoms per side")
    sources = list(problem.mu.atoms)
    sinks = list(problem.nu.atoms)
    cost = [[problem.cost[(a, b)] for b in sinks] for a in sources]
    best = None
    for schedule in _elimination_plans(s, t):
        balance = list(problem.mu.masses) + [-m for m in problem.nu.masses]
        total = None
        feasible = True
        for leaf, i, j, other in schedule:
            x = balance[leaf] if leaf < s else -balance[leaf]
            if x < 0:
                feasible = False
                break
            balance[other] += balance[leaf]
            term = x * cost[i][j]
            total = term if total is None else total + term
        if feasible and (best is None or total < best):
            best = total
    if best is None:
        raise TransportError("no feasible basic solution found")
    return best
