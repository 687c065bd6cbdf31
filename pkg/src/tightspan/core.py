"""Domain types and graph predicates.

Points are 0-based internally; every string rendering and file format uses
1-based labels. All numbers are :class:`fractions.Fraction`.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from typing import Iterable, Mapping

from .errors import MissingEntry, NonPositiveDistance, TriangleViolation

Edge = tuple[int, int]


def as_fraction(value) -> Fraction:
    if isinstance(value, Fraction):
        return value
    if isinstance(value, float):
        raise TypeError("floats are not accepted; pass int, Fraction or 'p/q' string")
    return Fraction(value)


def edge(i: int, j: int) -> Edge:
    if i == j:
        raise ValueError(f"loop at vertex {i}")
    return (i, j) if i < j else (j, i)


def all_edges(n: int) -> list[Edge]:
    """Edges of K_n in lexicographic order; this order indexes LP columns."""
    return list(combinations(range(n), 2))


def format_edge(e: Edge) -> str:
    return f"{e[0] + 1}-{e[1] + 1}"


@dataclass(frozen=True)
class Metric:
    """A validated finite metric; ``distances`` follows :func:`all_edges` order."""

    n: int
    distances: tuple[Fraction, ...]

    @cached_property
    def _index(self) -> dict[Edge, int]:
        return {e: k for k, e in enumerate(all_edges(self.n))}

    def d(self, i: int, j: int) -> Fraction:
        return self.distances[self._index[edge(i, j)]]

    def __getitem__(self, e: Edge) -> Fraction:
        return self.distances[self._index[edge(*e)]]

    def edges(self) -> list[Edge]:
        return all_edges(self.n)

    def as_dict(self) -> dict[Edge, Fraction]:
        return dict(zip(all_edges(self.n), self.distances))


def validate_metric(raw: Mapping[Edge, object], n: int) -> Metric:
    """Build a :class:`Metric` from 0-based pairs, checking positivity and triangles.

    Errors carry 1-based labels.
    """
    if n < 2:
        raise ValueError("a metric needs at least two points")
    norm: dict[Edge, Fraction] = {}
    for (i, j), v in raw.items():
        norm[edge(i, j)] = as_fraction(v)
    values = []
    for i, j in all_edges(n):
        if (i, j) not in norm:
            raise MissingEntry(i + 1, j + 1)
        v = norm[(i, j)]
        if v <= 0:
            raise NonPositiveDistance(i + 1, j + 1, v)
        values.append(v)
    metric = Metric(n, tuple(values))
    for i, j, k in combinations(range(n), 3):
        # each of the three points in the middle
        for a, b, c in ((i, j, k), (j, i, k), (i, k, j)):
            if metric.d(a, b) + metric.d(b, c) < metric.d(a, c):
                raise TriangleViolation(a + 1, b + 1, c + 1)
    return metric


@dataclass(frozen=True)
class Subgraph:
    n: int
    edges: frozenset[Edge]

    def __post_init__(self):
        for i, j in self.edges:
            if not (0 <= i < j < self.n):
                raise ValueError(f"bad edge {(i, j)} for n={self.n}")

    @classmethod
    def of(cls, n: int, edges: Iterable[tuple[int, int]]) -> "Subgraph":
        return cls(n, frozenset(edge(i, j) for i, j in edges))

    @classmethod
    def from_labels(cls, n: int, text: str) -> "Subgraph":
        """Parse ``"1-2 3-4"`` (1-based) into a subgraph."""
        pairs = []
        for tok in text.replace(",", " ").split():
            a, b = tok.split("-")
            pairs.append((int(a) - 1, int(b) - 1))
        return cls.of(n, pairs)

    def sorted_edges(self) -> list[Edge]:
        return sorted(self.edges)

    def degrees(self) -> list[int]:
        deg = [0] * self.n
        for i, j in self.edges:
            deg[i] += 1
            deg[j] += 1
        return deg

    def adjacency(self) -> list[list[int]]:
        adj: list[list[int]] = [[] for _ in range(self.n)]
        for i, j in sorted(self.edges):
            adj[i].append(j)
            adj[j].append(i)
        return adj

    def __len__(self) -> int:
        return len(self.edges)

    def __str__(self) -> str:
        return " ".join(format_edge(e) for e in self.sorted_edges())


@dataclass(frozen=True)
class Weights:
    omega: tuple[Fraction, ...]

    def __post_init__(self):
        if any(w < 0 for w in self.omega):
            raise ValueError("weights must be nonnegative")

    @classmethod
    def of(cls, values: Iterable) -> "Weights":
        return cls(tuple(as_fraction(v) for v in values))

    @property
    def n(self) -> int:
        return len(self.omega)

    @property
    def half_norm(self) -> Fraction:
        return sum(self.omega, Fraction(0)) / 2


@dataclass(frozen=True)
class FractionalMatching:
    n: int
    c: Mapping[Edge, Fraction] = field(hash=False)

    def __post_init__(self):
        for e, w in self.c.items():
            if w < 0:
                raise ValueError(f"negative weight on {format_edge(e)}")

    def weight(self, i: int, j: int) -> Fraction:
        return self.c.get(edge(i, j), Fraction(0))

    def support(self) -> Subgraph:
        return Subgraph(self.n, frozenset(e for e, w in self.c.items() if w > 0))

    def value(self, metric: Metric) -> Fraction:
        return sum((w * metric[e] for e, w in self.c.items()), Fraction(0))


def matching_weights(c: FractionalMatching) -> Weights:
    omega = [Fraction(0)] * c.n
    for (i, j), w in c.c.items():
        omega[i] += w
        omega[j] += w
    return Weights(tuple(omega))


def is_spanning(G: Subgraph) -> bool:
    return all(deg > 0 for deg in G.degrees())


def is_star(G: Subgraph) -> bool:
    """True iff G is exactly K_{1,n-1}."""
    if G.n < 2 or len(G.edges) != G.n - 1:
        return False
    common = set.intersection(*(set(e) for e in G.edges))
    return len(common) >= 1


def star_center(G: Subgraph) -> int | None:
    if not is_star(G):
        return None
    deg = G.degrees()
    # K_{1,1}: either endpoint works; pick the smaller label
    return max(range(G.n), key=lambda v: (deg[v], -v))


@dataclass(frozen=True)
class ComponentKind:
    """Classification of one connected component.

    ``kind`` is ``"tree"``, ``"odd_unicyclic"`` or ``"other"``.
    """

    kind: str
    vertices: tuple[int, ...]
    edges: tuple[Edge, ...]
    cycle_length: int | None = None
    reason: str | None = None

    @property
    def is_edge(self) -> bool:
        return self.kind == "tree" and len(self.edges) == 1

    @property
    def is_pure_odd_cycle(self) -> bool:
        return self.kind == "odd_unicyclic" and self.cycle_length == len(self.vertices)

    def __str__(self) -> str:
        body = " ".join(format_edge(e) for e in self.edges) or f"{self.vertices[0] + 1}"
        if self.kind == "tree":
            return f"tree[{body}]"
        if self.kind == "odd_unicyclic":
            return f"odd_unicyclic({self.cycle_length})[{body}]"
        return f"other({self.reason})[{body}]"


def connected_components(G: Subgraph) -> list[tuple[list[int], list[Edge]]]:
    adj = G.adjacency()
    seen = [False] * G.n
    out = []
    for s in range(G.n):
        if seen[s]:
            continue
        seen[s] = True
        verts = [s]
        queue = deque([s])
        while queue:
            v = queue.popleft()
            for w in adj[v]:
                if not seen[w]:
                    seen[w] = True
                    verts.append(w)
                    queue.append(w)
        vs = set(verts)
        es = sorted(e for e in G.edges if e[0] in vs)
        out.append((sorted(verts), es))
    return out


def _find_cycle(vertices: list[int], edges: list[Edge]) -> list[int]:
    """Vertices of the unique cycle of a unicyclic component, in cycle order."""
    adj: dict[int, list[int]] = {v: [] for v in vertices}
    for i, j in edges:
        adj[i].append(j)
        adj[j].append(i)
    # strip leaves until only the cycle remains
    deg = {v: len(adj[v]) for v in vertices}
    alive = set(vertices)
    leaves = deque(v for v in vertices if deg[v] == 1)
    while leaves:
        v = leaves.popleft()
        alive.discard(v)
        for w in adj[v]:
            if w in alive:
                deg[w] -= 1
                if deg[w] == 1:
                    leaves.append(w)
    start = min(alive)
    cycle = [start]
    prev, cur = None, start
    while True:
        nxt = min(w for w in adj[cur] if w in alive and w != prev)
        if nxt == start:
            break
        cycle.append(nxt)
        prev, cur = cur, nxt
        if len(cycle) > len(alive):
            raise AssertionError("component is not unicyclic")
    return cycle


def classify_components(G: Subgraph) -> list[ComponentKind]:
    out = []
    for verts, es in connected_components(G):
        nv, ne = len(verts), len(es)
        if ne == nv - 1:
            out.append(ComponentKind("tree", tuple(verts), tuple(es)))
        elif ne == nv:
            k = len(_find_cycle(verts, es))
            if k % 2:
                out.append(ComponentKind("odd_unicyclic", tuple(verts), tuple(es), k))
            else:
                out.append(ComponentKind("other", tuple(verts), tuple(es), k, "even cycle"))
        else:
            out.append(ComponentKind("other", tuple(verts), tuple(es), None, "extra cycle"))
    return out


def has_nontrivial_even_tour(G: Subgraph) -> bool:
    return any(c.kind == "other" for c in classify_components(G))


def simple_cycles(G: Subgraph) -> list[list[int]]:
    """All simple cycles (each once), as vertex lists starting at their minimum."""
    adj = G.adjacency()
    cycles = []
    for s in range(G.n):
        stack = [(s, [s])]
        while stack:
            v, path = stack.pop()
            for w in adj[v]:
                if w == s and len(path) >= 3 and path[1] < path[-1]:
                    cycles.append(path[:])
                elif w > s and w not in path:
                    stack.append((w, path + [w]))
    return cycles


def _shortest_path(adj: list[list[int]], src: set[int], dst: set[int]) -> list[int]:
    prev = {v: None for v in src}
    queue = deque(sorted(src))
    while queue:
        v = queue.popleft()
        if v in dst:
            path = [v]
            while prev[path[-1]] is not None:
                path.append(prev[path[-1]])
            return path[::-1]
        for w in adj[v]:
            if w not in prev:
                prev[w] = v
                queue.append(w)
    raise ValueError("no path")


def find_even_tour(G: Subgraph) -> list[int] | None:
    """An explicit nontrivial even closed walk as a vertex sequence (first == last).

    Returns an even cycle if one exists; otherwise two odd cycles in the same
    component joined by a path walked there and back. None if no such tour.
    """
    cycles = simple_cycles(G)
    for cyc in sorted(cycles, key=len):
        if len(cyc) % 2 == 0:
            return cyc + [cyc[0]]
    adj = G.adjacency()
    comp_of = {}
    for idx, (verts, _) in enumerate(connected_components(G)):
        for v in verts:
            comp_of[v] = idx
    for a in range(len(cycles)):
        for b in range(a + 1, len(cycles)):
            c1, c2 = cycles[a], cycles[b]
            if comp_of[c1[0]] != comp_of[c2[0]]:
                continue
            e1 = {edge(c1[k], c1[(k + 1) % len(c1)]) for k in range(len(c1))}
            e2 = {edge(c2[k], c2[(k + 1) % len(c2)]) for k in range(len(c2))}
            if e1 & e2:
                continue
            path = _shortest_path(adj, set(c1), set(c2))
            u, v = path[0], path[-1]
            r1 = c1[c1.index(u):] + c1[: c1.index(u)]
            r2 = c2[c2.index(v):] + c2[: c2.index(v)]
            walk = r1 + [u] + path[1:] + r2[1:] + [v] + path[-2::-1]
            return walk
    return None


def tour_edges(walk: list[int]) -> list[Edge]:
    return [edge(walk[k], walk[k + 1]) for k in range(len(walk) - 1)]


@dataclass(frozen=True)
class Certificate:
    """Evidence that a metric is not generic.

    ``kind`` is one of ``"non_unique_lp"``, ``"tied_pivot"``,
    ``"singular_cell"``, ``"even_tour"``. ``tour`` is a closed walk whose
    alternating edge sums ``odd_sum`` and ``even_sum`` are reported when a
    metric is attached.
    """

    kind: str
    cell: Subgraph | None = None
    tour: tuple[int, ...] | None = None
    odd_sum: Fraction | None = None
    even_sum: Fraction | None = None
    detail: str = ""

    @classmethod
    def with_tour(cls, kind: str, G: Subgraph, metric: Metric | None, detail: str = ""):
        walk = find_even_tour(G)
        if walk is None:
            return cls(kind, G, None, None, None, detail)
        es = tour_edges(walk)
        odd = even = None
        if metric is not None:
            odd = sum((metric[e] for e in es[0::2]), Fraction(0))
            even = sum((metric[e] for e in es[1::2]), Fraction(0))
        return cls(kind, G, tuple(walk), odd, even, detail)

    def to_dict(self) -> dict:
        out: dict = {"kind": self.kind, "detail": self.detail}
        if self.cell is not None:
            out["cell"] = str(self.cell)
        if self.tour is not None:
            out["tour"] = [v + 1 for v in self.tour]
        if self.odd_sum is not None:
            out["odd_sum"] = str(self.odd_sum)
            out["even_sum"] = str(self.even_sum)
        return out

    def __str__(self) -> str:
        parts = [self.kind]
        if self.detail:
            parts.append(self.detail)
        if self.cell is not None:
            parts.append(f"cell [{self.cell}]")
        if self.tour is not None:
            parts.append("even tour " + "-".join(str(v + 1) for v in self.tour))
        if self.odd_sum is not None:
            parts.append(f"alternating sums {self.odd_sum} vs {self.even_sum}")
        return "; ".join(parts)
