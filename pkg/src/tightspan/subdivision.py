"""The regular subdivision of the second hypersimplex induced by a metric.

Vertex ``e_i + e_j`` is lifted to height ``d_ij``; a cell is an edge set G
for which some ``x`` satisfies ``x_i + x_j = d_ij`` on G and ``> d_ij`` off G.
Maximal cells are found by walking the dual graph: across each interior
ridge the neighbouring simplex is reached by rotating the supporting
hyperplane until the next lifted vertex touches it.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations

from . import exactlp
from .core import (
    Certificate,
    Metric,
    Subgraph,
    Weights,
    all_edges,
    connected_components,
    has_nontrivial_even_tour,
    is_spanning,
    is_star,
)
from .errors import NonGenericDetected
from .matching import non_unique_certificate, optimal_matching

INITIAL_RETRIES = 16


@dataclass(frozen=True)
class Cell:
    graph: Subgraph
    dimension: int
    interior: bool

    @classmethod
    def of(cls, G: Subgraph) -> "Cell":
        return cls(G, len(G) - 1, is_spanning(G) and not is_star(G))

    @property
    def codimension(self) -> int:
        return self.graph.n - len(self.graph)


@dataclass(frozen=True)
class Subdivision:
    metric: Metric
    maximal_cells: frozenset[Subgraph]
    generic: bool
    certificate: Certificate | None = None
    # exact supporting-hyperplane heights for each maximal cell
    heights: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def sorted_cells(self) -> list[Subgraph]:
        return sorted(self.maximal_cells, key=lambda G: G.sorted_edges())

    def total_volume(self) -> int:
        return sum(normalized_volume(G) for G in self.maximal_cells)


@dataclass(frozen=True)
class TightSpanReport:
    n: int
    dimension: int
    min_interior_edges: int
    interior_f_vector: dict[int, int]
    witness: Subgraph
    lower_bound: int
    upper_bound: int
    note: str | None = None

    @property
    def within_bounds(self) -> bool:
        return self.lower_bound <= self.dimension <= self.upper_bound


def hypersimplex_volume(n: int) -> int:
    """Normalized volume of the second hypersimplex in R^n (an Eulerian number)."""
    return 2 ** (n - 1) - n


def normalized_volume(G: Subgraph) -> int:
    """Normalized volume of the simplex spanned by a maximal cell.

    The incidence matrix of a spanning graph whose c components are odd
    unicyclic has determinant +-2^c; the simplex sits on the hyperplane
    ``sum x = 2``, which divides that by two.
    """
    comps = connected_components(G)
    return 2 ** (len(comps) - 1)


def _incidence_row(n: int, e) -> list[Fraction]:
    row = [Fraction(0)] * n
    row[e[0]] = row[e[1]] = Fraction(1)
    return row


def lift_heights(d: Metric, G: Subgraph) -> list[Fraction] | None:
    """The unique x with ``x_i + x_j = d_ij`` on the n edges of G, or None if singular."""
    es = G.sorted_edges()
    if len(es) != d.n:
        raise ValueError("lift_heights needs exactly n edges")
    return exactlp.solve_square([_incidence_row(d.n, e) for e in es], [d[e] for e in es])


def slacks(d: Metric, x) -> dict:
    return {e: x[e[0]] + x[e[1]] - d[e] for e in all_edges(d.n)}


def is_cell(d: Metric, G: Subgraph) -> bool:
    if not G.edges:
        raise ValueError("a cell needs at least one edge")
    return cell_witness(d, G) is not None


def cell_witness(d: Metric, G: Subgraph) -> tuple[Fraction, ...] | None:
    eqs, strict = [], []
    for e in all_edges(d.n):
        (eqs if e in G.edges else strict).append((_incidence_row(d.n, e), d[e]))
    ok, x = exactlp.feasible_with_margin(eqs, strict, cap=1)
    return x if ok else None


def initial_maximal_cell(d: Metric) -> Subgraph:
    """Point-locate a perturbed all-ones weight until it lands in a maximal cell.

    The first try is ``omega_i = 1 + i*delta`` (1-based i). That line through
    the barycenter can sit inside a lower-dimensional cell for every delta, so
    retries use the curve ``omega_i = 1 + delta**i`` with delta halved each time.
    """
    delta = Fraction(1, 10 * d.n * d.n)
    for attempt in range(INITIAL_RETRIES + 1):
        if attempt == 0:
            omega = Weights(tuple(1 + (i + 1) * delta for i in range(d.n)))
        else:
            omega = Weights(tuple(1 + delta ** (i + 1) for i in range(d.n)))
        res = optimal_matching(d, omega)
        if not res.unique:
            raise NonGenericDetected(non_unique_certificate(d, res))
        G = res.matching.support()
        if len(G) == d.n:
            return G
        delta /= 2
    raise NonGenericDetected(Certificate(
        "non_unique_lp", G, detail=f"no maximal cell located after {INITIAL_RETRIES} halvings"))


def _check_simplex(d: Metric, C: Subgraph) -> list[Fraction]:
    """Heights for a candidate maximal cell; raises unless it is a simplex with witness."""
    x = lift_heights(d, C)
    if x is None:
        raise NonGenericDetected(Certificate.with_tour(
            "singular_cell", C, d, detail="cell edges are linearly dependent"))
    s = slacks(d, x)
    extra = [e for e, v in s.items() if e not in C.edges and v <= 0]
    if any(s[e] < 0 for e in extra):
        raise AssertionError(f"heights for [{C}] do not support the lift")
    if extra:
        bigger = Subgraph(d.n, C.edges | frozenset(extra))
        raise NonGenericDetected(Certificate.with_tour(
            "tied_pivot", bigger, d, detail=f"{len(bigger)} lifted vertices on one facet"))
    if has_nontrivial_even_tour(C):
        raise NonGenericDetected(Certificate.with_tour("even_tour", C, d))
    return x


def pivot_across(d: Metric, C: Subgraph, x, removed) -> tuple[Subgraph, list[Fraction]] | None:
    """Neighbour of maximal cell C across the ridge ``C - {removed}``.

    Rotates the supporting hyperplane about the ridge (moving x along the
    kernel of the ridge equations, away from ``removed``) and stops at the
    first lifted vertex that becomes tight. None for a boundary ridge.
    """
    n = d.n
    ridge = [e for e in C.sorted_edges() if e != removed]
    ker = exactlp.nullspace([_incidence_row(n, e) for e in ridge], n)
    if len(ker) != 1:
        raise NonGenericDetected(Certificate.with_tour(
            "singular_cell", C, d, detail="ridge equations are dependent"))
    y = ker[0]
    if y[removed[0]] + y[removed[1]] < 0:
        y = [-v for v in y]
    best, hits = None, []
    for e in all_edges(n):
        if e in C.edges:
            continue
        rate = y[e[0]] + y[e[1]]
        if rate >= 0:
            continue
        step = (x[e[0]] + x[e[1]] - d[e]) / -rate
        if best is None or step < best:
            best, hits = step, [e]
        elif step == best:
            hits.append(e)
    if best is None:
        return None
    if len(hits) > 1:
        bigger = Subgraph(n, frozenset(ridge) | frozenset(hits))
        raise NonGenericDetected(Certificate.with_tour(
            "tied_pivot", bigger, d, detail=f"{len(hits)} vertices tie across a ridge"))
    new = Subgraph(n, frozenset(ridge) | {hits[0]})
    return new, [xi + best * yi for xi, yi in zip(x, y)]


def probe_across(d: Metric, C: Subgraph, removed) -> Subgraph | None:
    """Same as :func:`pivot_across` by brute force: test every ``ridge + f`` with the margin LP."""
    ridge = C.edges - {removed}
    found = [Subgraph(d.n, ridge | {f}) for f in all_edges(d.n)
             if f not in C.edges and is_cell(d, Subgraph(d.n, ridge | {f}))]
    if len(found) > 1:
        bigger = Subgraph(d.n, frozenset().union(*(G.edges for G in found)))
        raise NonGenericDetected(Certificate.with_tour(
            "tied_pivot", bigger, d, detail="several cells across one ridge"))
    return found[0] if found else None


def _is_interior_graph(G: Subgraph) -> bool:
    return is_spanning(G) and not is_star(G)


def _traverse(d: Metric, start: Subgraph | None = None, method: str = "pivot") -> Subdivision:
    if start is None:
        start = initial_maximal_cell(d)
    heights = {start: _check_simplex(d, start)}
    queue = deque([start])
    while queue:
        C = queue.popleft()
        for e in C.sorted_edges():
            ridge = Subgraph(d.n, C.edges - {e})
            if method == "pivot":
                step = pivot_across(d, C, heights[C], e)
                nbr = step[0] if step else None
            else:
                nbr = probe_across(d, C, e)
            if (nbr is not None) != _is_interior_graph(ridge):
                raise AssertionError(f"ridge [{ridge}] neighbour/interior mismatch")
            if nbr is None or nbr in heights:
                continue
            heights[nbr] = _check_simplex(d, nbr)
            queue.append(nbr)
    return Subdivision(d, frozenset(heights), True, None, heights)


@lru_cache(maxsize=512)
def enumerate_maximal_cells(d: Metric, method: str = "pivot") -> Subdivision:
    """All maximal cells; raises :class:`NonGenericDetected` with a certificate otherwise.

    ``method="probe"`` finds each neighbour with margin-LP probes instead of
    the hyperplane pivot (slow, used for cross-checking).
    """
    return _traverse(d, method=method)


def enumerate_from(d: Metric, start: Subgraph, method: str = "pivot") -> Subdivision:
    """Traverse from a given maximal cell instead of the default point location."""
    return _traverse(d, start=start, method=method)


def check_genericity(d: Metric) -> tuple[bool, Certificate | None]:
    try:
        sub = enumerate_maximal_cells(d)
    except NonGenericDetected as exc:
        return False, exc.certificate
    # cross-check with the even-tour criterion on every maximal cell
    for G in sub.maximal_cells:
        if has_nontrivial_even_tour(G) or len(G) != d.n:
            return False, Certificate.with_tour("even_tour", G, d)
    return True, None


def is_generic(d: Metric) -> bool:
    return check_genericity(d)[0]


def _edge_masks(d: Metric):
    edges = all_edges(d.n)
    index = {e: k for k, e in enumerate(edges)}
    return edges, index


def interior_face_masks(s: Subdivision) -> set[int]:
    """Interior faces as bitmasks over ``all_edges`` indices."""
    n = s.metric.n
    edges, index = _edge_masks(s.metric)
    full = (1 << n) - 1
    star_masks = set()
    for v in range(n):
        m = 0
        for k, e in enumerate(edges):
            if v in e:
                m |= 1 << k
        star_masks.add(m)
    out: set[int] = set()
    for G in s.maximal_cells:
        es = G.sorted_edges()
        bits = [1 << index[e] for e in es]
        cover = [(1 << e[0]) | (1 << e[1]) for e in es]
        for sub in range(1, 1 << len(es)):
            mask = cov = 0
            for k in range(len(es)):
                if sub >> k & 1:
                    mask |= bits[k]
                    cov |= cover[k]
            if cov == full and mask not in star_masks:
                out.add(mask)
    return out


def _mask_graph(d: Metric, mask: int) -> Subgraph:
    edges = all_edges(d.n)
    return Subgraph(d.n, frozenset(e for k, e in enumerate(edges) if mask >> k & 1))


def interior_faces(s: Subdivision) -> set[Cell]:
    if not s.generic:
        raise ValueError("interior faces are only enumerated for generic subdivisions")
    return {Cell(_mask_graph(s.metric, m), m.bit_count() - 1, True) for m in interior_face_masks(s)}


def dimension_bounds(n: int) -> tuple[int, int]:
    return -(-n // 3), n // 2


def tight_span_dimension(d: Metric) -> TightSpanReport:
    """Maximal codimension ``n - |E|`` over interior faces."""
    if d.n < 3:
        raise ValueError("no interior faces for n < 3")
    s = enumerate_maximal_cells(d)
    masks = interior_face_masks(s)
    fvec: dict[int, int] = {}
    for m in masks:
        c = d.n - m.bit_count()
        fvec[c] = fvec.get(c, 0) + 1
    least = min(m.bit_count() for m in masks)
    witness_mask = min((m for m in masks if m.bit_count() == least),
                       key=lambda m: _mask_graph(d, m).sorted_edges())
    lo, hi = dimension_bounds(d.n)
    note = None
    if d.n == 3:
        note = ("n=3: every 2-edge spanning graph is a star, so the only interior face is "
                "the triangle; the bounded-face complex of P_d has dimension 1")
    return TightSpanReport(d.n, d.n - least, least, dict(sorted(fvec.items())),
                           _mask_graph(d, witness_mask), lo, hi, note)


def ridges_by_owner(s: Subdivision) -> dict[frozenset, list[Subgraph]]:
    """Map each ridge (n-1 edges) to the maximal cells containing it."""
    out: dict[frozenset, list[Subgraph]] = {}
    for G in s.sorted_cells():
        for es in combinations(G.sorted_edges(), len(G) - 1):
            out.setdefault(frozenset(es), []).append(G)
    return out
