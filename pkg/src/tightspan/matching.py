"""LP-optimal fractional matchings and what they say about the subdivision."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from . import exactlp
from .core import (
    Certificate,
    ComponentKind,
    FractionalMatching,
    Metric,
    Subgraph,
    Weights,
    all_edges,
    classify_components,
    edge,
    is_spanning,
    is_star,
)
from .errors import InfeasibleWeights, NonGenericDetected, OddN


@dataclass(frozen=True)
class MatchingLpResult:
    matching: FractionalMatching
    objective: Fraction
    unique: bool
    alternate: FractionalMatching | None = None


def matching_lp(d: Metric, omega: Weights) -> exactlp.LinearProgram:
    """``max c.d`` over fractional omega-matchings; columns follow ``all_edges``."""
    edges = all_edges(d.n)
    rows = []
    for v in range(d.n):
        coeffs = tuple(Fraction(1) if v in e else Fraction(0) for e in edges)
        rows.append((coeffs, omega.omega[v]))
    return exactlp.LinearProgram(len(edges), tuple(rows), d.distances)


def _as_matching(n: int, point) -> FractionalMatching:
    return FractionalMatching(n, {e: w for e, w in zip(all_edges(n), point) if w})


def optimal_matching(d: Metric, omega: Weights) -> MatchingLpResult:
    if omega.n != d.n:
        raise ValueError("weight vector length does not match the metric")
    sol = exactlp.solve(matching_lp(d, omega))
    if not sol.optimal:
        raise InfeasibleWeights(f"no fractional matching with vertex sums {list(map(str, omega.omega))}")
    alt = _as_matching(d.n, sol.alternate) if sol.alternate is not None else None
    return MatchingLpResult(_as_matching(d.n, sol.point), sol.objective_value,
                            bool(sol.unique_optimum), alt)


def non_unique_certificate(d: Metric, res: MatchingLpResult) -> Certificate:
    """Two distinct optima differ by a kernel vector whose support has an even tour."""
    if res.alternate is None:
        return Certificate("non_unique_lp", res.matching.support(), detail="optimal face unbounded")
    diff = Subgraph(d.n, frozenset(
        e for e in all_edges(d.n) if res.matching.weight(*e) != res.alternate.weight(*e)))
    return Certificate.with_tour("non_unique_lp", diff, d,
                                 detail="two distinct LP-optimal matchings")


def point_cell(d: Metric, omega: Weights) -> Subgraph:
    """Support of the LP-optimal omega-matching: the cell holding omega/|omega| in its interior."""
    res = optimal_matching(d, omega)
    if not res.unique:
        raise NonGenericDetected(non_unique_certificate(d, res))
    return res.matching.support()


def _one_matching(d: Metric) -> MatchingLpResult:
    res = optimal_matching(d, Weights(tuple(Fraction(1) for _ in range(d.n))))
    if not res.unique:
        raise NonGenericDetected(non_unique_certificate(d, res))
    return res


def one_matching_integral(d: Metric) -> bool:
    if d.n % 2:
        raise OddN(f"integrality of the 1-matching needs even n, got {d.n}")
    res = _one_matching(d)
    return all(w == 1 for w in res.matching.c.values())


def one_matching_structure(d: Metric) -> list[ComponentKind]:
    """Components of the 1-matching support; each must be an odd cycle or an edge."""
    res = _one_matching(d)
    comps = classify_components(res.matching.support())
    for comp in comps:
        if not (comp.is_edge or comp.is_pure_odd_cycle):
            raise NonGenericDetected(Certificate.with_tour(
                "even_tour", res.matching.support(), d,
                detail=f"1-matching component {comp} is not an odd cycle or an edge"))
    return comps


def cycle_order(comp: ComponentKind) -> list[int]:
    adj: dict[int, list[int]] = {v: [] for v in comp.vertices}
    for i, j in comp.edges:
        adj[i].append(j)
        adj[j].append(i)
    start = min(comp.vertices)
    order = [start]
    prev, cur = None, start
    while len(order) < len(comp.vertices):
        nxt = min(w for w in adj[cur] if w != prev)
        order.append(nxt)
        prev, cur = cur, nxt
    return order


def lower_bound_witness(d: Metric) -> Subgraph:
    """Spanning non-star sub-cell of the 1-matching support with at most floor(2n/3) edges.

    Keeps every isolated edge and, on each cycle v1..vk, the edges
    v1v2, v3v4, ..., v(k-2)v(k-1), vkv1.
    """
    if d.n < 4:
        raise ValueError("a non-star spanning witness needs n >= 4")
    picked = []
    for comp in one_matching_structure(d):
        if comp.is_edge:
            picked.extend(comp.edges)
            continue
        cyc = cycle_order(comp)
        k = len(cyc)
        picked.extend(edge(cyc[a], cyc[a + 1]) for a in range(0, k - 1, 2))
        picked.append(edge(cyc[k - 1], cyc[0]))
    G = Subgraph(d.n, frozenset(picked))
    assert is_spanning(G) and not is_star(G)
    assert len(G) <= (2 * d.n) // 3
    return G


def support_is_lp_optimal(d: Metric, G: Subgraph) -> bool:
    """Is the 0/1 indicator of G an optimal matching for its own degree vector?"""
    omega = Weights(tuple(Fraction(k) for k in G.degrees()))
    sol = exactlp.solve(matching_lp(d, omega), check_unique=False)
    value = sum((d[e] for e in G.edges), Fraction(0))
    return sol.objective_value == value
