"""Brute-force ground truth for tiny instances."""

from __future__ import annotations

import os
from collections import deque

from .core import Metric, Subgraph, all_edges
from .errors import ScaleLimit
from .subdivision import is_cell

CELL_LIMIT = 5
TOUR_LIMIT = 6


def scale_limit(default: int) -> int:
    """``TIGHTSPAN_SCALE_LIMIT`` raises the oracle/polar caps when set."""
    raw = os.environ.get("TIGHTSPAN_SCALE_LIMIT")
    return max(default, int(raw)) if raw else default


def brute_force_cells(d: Metric) -> set[Subgraph]:
    """Every nonempty subgraph of K_n tested with the margin LP."""
    if d.n > scale_limit(CELL_LIMIT):
        raise ScaleLimit(f"brute_force_cells is capped at n={scale_limit(CELL_LIMIT)}")
    edges = all_edges(d.n)
    cells = set()
    for mask in range(1, 1 << len(edges)):
        G = Subgraph(d.n, frozenset(e for k, e in enumerate(edges) if mask >> k & 1))
        if is_cell(d, G):
            cells.add(G)
    return cells


def brute_force_even_tour(G: Subgraph) -> bool:
    """Search closed walks of even length <= 4n using some edge exactly once.

    Rotate such a walk to start on the once-used edge ``uv``: the rest is a
    walk from v back to u of odd length that never uses ``uv``. So it suffices
    to search, for each edge, all walks in ``G - uv`` tracked by (vertex,
    length parity), up to length ``4n - 1``.
    """
    n_vertices = len({v for e in G.edges for v in e})
    if n_vertices > scale_limit(TOUR_LIMIT):
        raise ScaleLimit(f"brute_force_even_tour is capped at {scale_limit(TOUR_LIMIT)} vertices")
    cap = 4 * G.n
    for u, v in sorted(G.edges):
        adj: dict[int, list[int]] = {}
        for a, b in G.edges:
            if (a, b) != (u, v):
                adj.setdefault(a, []).append(b)
                adj.setdefault(b, []).append(a)
        seen = {(v, 0): 0}
        queue = deque([(v, 0)])
        while queue:
            w, parity = queue.popleft()
            steps = seen[(w, parity)]
            if w == u and parity == 1:
                if steps + 1 <= cap:
                    return True
                break
            if steps + 1 >= cap:
                continue
            for x in adj.get(w, ()):
                state = (x, 1 - parity)
                if state not in seen:
                    seen[state] = steps + 1
                    queue.append(state)
    return False


def enumerate_walks_even_tour(G: Subgraph, max_len: int) -> bool:
    """Literal enumeration of closed walks up to ``max_len``; only for very small graphs."""
    adj: dict[int, list[int]] = {}
    for a, b in G.edges:
        adj.setdefault(a, []).append(b)
        adj.setdefault(b, []).append(a)

    def walk(start, cur, used, length):
        if length and length % 2 == 0 and cur == start and 1 in used.values():
            return True
        if length == max_len:
            return False
        for nxt in adj.get(cur, ()):
            e = (min(cur, nxt), max(cur, nxt))
            used[e] = used.get(e, 0) + 1
            if walk(start, nxt, used, length + 1):
                return True
            used[e] -= 1
            if not used[e]:
                del used[e]
        return False

    return any(walk(s, s, {}, 0) for s in adj)
