"""Vertices and bounded faces of ``P_d = {x >= 0 : x_i + x_j >= d_ij}``.

Oracle-grade enumeration, independent of the subdivision code: vertices come
from every n-subset of constraint rows, faces from intersecting vertex
tight sets. Rows ``0..n-1`` are ``x_i >= 0``; row ``n + k`` is the metric row
for the k-th edge of :func:`~tightspan.core.all_edges`.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from math import gcd

from . import exactlp
from .core import Metric, Subgraph, all_edges, is_star
from .errors import ScaleLimit
from .oracle import scale_limit
from .subdivision import tight_span_dimension

POLAR_LIMIT = 6


@dataclass(frozen=True)
class PolyhedronPd:
    metric: Metric

    @property
    def n(self) -> int:
        return self.metric.n

    def rows(self) -> list[tuple[list[Fraction], Fraction]]:
        n = self.n
        out = []
        for i in range(n):
            a = [Fraction(0)] * n
            a[i] = Fraction(1)
            out.append((a, Fraction(0)))
        for e in all_edges(n):
            a = [Fraction(0)] * n
            a[e[0]] = a[e[1]] = Fraction(1)
            out.append((a, self.metric[e]))
        return out

    def row_support(self, r: int) -> tuple[int, ...]:
        if r < self.n:
            return (r,)
        return all_edges(self.n)[r - self.n]

    def tight_rows(self, x) -> frozenset[int]:
        return frozenset(r for r, (a, b) in enumerate(self.rows())
                         if sum(ai * xi for ai, xi in zip(a, x)) == b)

    def contains(self, x) -> bool:
        return all(sum(ai * xi for ai, xi in zip(a, x)) >= b for a, b in self.rows())


@dataclass(frozen=True)
class Face:
    vertices: frozenset[int]
    active_rows: frozenset[int]
    dimension: int

    def metric_only(self, n: int) -> bool:
        return all(r >= n for r in self.active_rows)

    def graph(self, n: int) -> Subgraph:
        edges = all_edges(n)
        return Subgraph(n, frozenset(edges[r - n] for r in self.active_rows if r >= n))


@dataclass(frozen=True)
class BoundedFaceComplex:
    vertices: list[tuple[Fraction, ...]]
    faces: list[Face] = field(repr=False)
    max_dim: int

    def f_vector(self, metric_only: bool = False, n: int | None = None) -> dict[int, int]:
        out: dict[int, int] = {}
        for f in self.faces:
            if metric_only and not f.metric_only(n):
                continue
            out[f.dimension] = out.get(f.dimension, 0) + 1
        return dict(sorted(out.items()))


@dataclass(frozen=True)
class CrosscheckReport:
    polar_dim: int
    subdivision_dim: int
    agree: bool
    full_max_dim: int
    polar_f_vector: dict[int, int]
    interior_f_vector: dict[int, int]
    star_faces: int


def _check_scale(n: int) -> None:
    if n > scale_limit(POLAR_LIMIT):
        raise ScaleLimit(f"polar enumeration is capped at n={scale_limit(POLAR_LIMIT)}")


@lru_cache(maxsize=8)
def _row_patterns(n: int) -> tuple[list[tuple[int, ...]], list[tuple[tuple[int, ...], list[list[int]], int]]]:
    """Integer rows of P_d and, for each nonsingular n-subset, its adjugate and determinant.

    Depends only on n, so it is shared by every metric of that size.
    """
    rows = [tuple(1 if k == i else 0 for k in range(n)) for i in range(n)]
    rows += [tuple(1 if k in e else 0 for k in range(n)) for e in all_edges(n)]
    full = (1 << n) - 1
    cover = [sum(1 << k for k in range(n) if row[k]) for row in rows]
    systems = []
    for combo in combinations(range(len(rows)), n):
        m = 0
        for r in combo:
            m |= cover[r]
        if m != full:
            continue
        inv = _int_adjugate([list(rows[r]) for r in combo])
        if inv is None:
            continue
        adj, det = inv
        systems.append((combo, adj, det))
    return rows, systems


def _int_adjugate(A: list[list[int]]) -> tuple[list[list[int]], int] | None:
    """Fraction-free Gauss-Jordan on ``[A | I]``: returns ``(D * A^-1, D)`` or None if singular."""
    n = len(A)
    M = [A[i][:] + [1 if k == i else 0 for k in range(n)] for i in range(n)]
    prev = 1
    for k in range(n):
        p = next((i for i in range(k, n) if M[i][k] != 0), None)
        if p is None:
            return None
        M[k], M[p] = M[p], M[k]
        pk = M[k]
        piv = pk[k]
        for i in range(n):
            if i == k:
                continue
            Mi = M[i]
            f = Mi[k]
            M[i] = [(piv * a - f * b) // prev for a, b in zip(Mi, pk)]
        prev = piv
    D = M[0][0]
    return [row[n:] for row in M], D


def _vertices_with_tight_sets(d: Metric) -> list[tuple[tuple[Fraction, ...], frozenset[int]]]:
    """Solve every nonsingular n-row subsystem and keep the feasible solutions."""
    n = d.n
    rows, systems = _row_patterns(n)
    scale = 1
    for v in d.distances:
        scale = scale * v.denominator // gcd(scale, v.denominator)
    rhs = [0] * n + [int(v * scale) for v in d.distances]
    found: dict[tuple, frozenset[int]] = {}
    for combo, adj, det in systems:
        sgn = 1 if det > 0 else -1
        num = [sgn * sum(a * rhs[r] for a, r in zip(adj_row, combo)) for adj_row in adj]
        bound = abs(det)
        tight = []
        for r, row in enumerate(rows):
            lhs = sum(num[k] for k in range(n) if row[k])
            if lhs < rhs[r] * bound:
                break
            if lhs == rhs[r] * bound:
                tight.append(r)
        else:
            x = tuple(Fraction(v, bound * scale) for v in num)
            found.setdefault(x, frozenset(tight))
    return sorted(found.items())


def pd_vertices(d: Metric) -> list[tuple[Fraction, ...]]:
    _check_scale(d.n)
    return [x for x, _ in _vertices_with_tight_sets(d)]


def is_bounded(n: int, active_rows) -> bool:
    """Combinatorial test: the active rows must touch every coordinate."""
    touched = set()
    for r in active_rows:
        touched.update((r,) if r < n else all_edges(n)[r - n])
    return len(touched) == n


def has_recession_ray(n: int, active_rows) -> bool:
    """LP test: is there ``r >= 0``, ``r != 0``, keeping every active row tight?"""
    edges = all_edges(n)
    cons = []
    for row in active_rows:
        a = [Fraction(0)] * n
        if row < n:
            a[row] = Fraction(1)
        else:
            i, j = edges[row - n]
            a[i] = a[j] = Fraction(1)
        cons.append((tuple(a), Fraction(0)))
    cons.append((tuple(Fraction(1) for _ in range(n)), Fraction(1)))
    sol = exactlp.solve(exactlp.LinearProgram(n, tuple(cons), tuple(Fraction(0) for _ in range(n))),
                        check_unique=False)
    return sol.optimal


def bounded_face_complex(d: Metric) -> BoundedFaceComplex:
    """Bounded faces as closures of vertex tight sets under intersection."""
    _check_scale(d.n)
    n = d.n
    P = PolyhedronPd(d)
    rows = P.rows()
    verts = _vertices_with_tight_sets(d)
    tight = [t for _, t in verts]
    seen: set[frozenset[int]] = set()
    frontier = [t for t in tight if is_bounded(n, t)]
    seen.update(frontier)
    while frontier:
        nxt = []
        for S in frontier:
            for t in tight:
                inter = S & t
                if inter not in seen and is_bounded(n, inter):
                    seen.add(inter)
                    nxt.append(inter)
        frontier = nxt
    faces = []
    for S in seen:
        members = frozenset(k for k, t in enumerate(tight) if S <= t)
        dim = n - exactlp.rank([rows[r][0] for r in S], n)
        faces.append(Face(members, S, dim))
    faces.sort(key=lambda f: (f.dimension, sorted(f.vertices)))
    return BoundedFaceComplex([x for x, _ in verts], faces, max(f.dimension for f in faces))


def crosscheck_dimension(d: Metric) -> CrosscheckReport:
    """Compare the bounded-face dimension of P_d with the interior-cell dimension."""
    _check_scale(d.n)
    if d.n < 4:
        raise ValueError("cross-check is defined for n >= 4")
    report = tight_span_dimension(d)
    cx = bounded_face_complex(d)
    metric_faces = [f for f in cx.faces if f.metric_only(d.n)]
    polar_dim = max(f.dimension for f in metric_faces)
    stars = sum(1 for f in metric_faces if is_star(f.graph(d.n)))
    return CrosscheckReport(polar_dim, report.dimension, polar_dim == report.dimension,
                            cx.max_dim, cx.f_vector(metric_only=True, n=d.n),
                            report.interior_f_vector, stars)
