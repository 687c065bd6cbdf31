"""Exact rational simplex for ``max c.y  s.t.  A y = b, y >= 0``.

Two-phase tableau simplex on :class:`~fractions.Fraction` entries with
Bland's rule, so runs are deterministic and cannot cycle. A handful of dense
linear-algebra helpers (rank, square solve, null space) live here too since
the subdivision and polar code need them on tiny exact systems.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Sequence

ZERO = Fraction(0)
ONE = Fraction(1)

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass(frozen=True)
class LinearProgram:
    num_vars: int
    constraints: tuple[tuple[tuple[Fraction, ...], Fraction], ...]
    objective: tuple[Fraction, ...]

    @classmethod
    def build(cls, num_vars: int, constraints, objective) -> "LinearProgram":
        rows = []
        for coeffs, rhs in constraints:
            coeffs = tuple(Fraction(v) for v in coeffs)
            if len(coeffs) != num_vars:
                raise ValueError("row length does not match num_vars")
            rows.append((coeffs, Fraction(rhs)))
        obj = tuple(Fraction(v) for v in objective)
        if len(obj) != num_vars:
            raise ValueError("objective length does not match num_vars")
        return cls(num_vars, tuple(rows), obj)


@dataclass
class LpSolution:
    status: str
    point: tuple[Fraction, ...] | None = None
    objective_value: Fraction | None = None
    unique_optimum: bool | None = None
    # a second optimal point, present when unique_optimum is False
    alternate: tuple[Fraction, ...] | None = field(default=None, repr=False)
    basis: tuple[int, ...] | None = field(default=None, repr=False)

    @property
    def optimal(self) -> bool:
        return self.status == OPTIMAL


class _Tableau:
    """Dense tableau: rows ``A y = b`` with ``basis[r]`` basic in row r."""

    def __init__(self, A: list[list[Fraction]], b: list[Fraction], basis: list[int]):
        self.A = A
        self.b = b
        self.basis = basis
        self.ncols = len(A[0]) if A else 0

    def pivot(self, r: int, j: int) -> None:
        A, b = self.A, self.b
        row = A[r]
        p = row[j]
        if p != 1:
            inv = 1 / p
            A[r] = row = [v * inv if v else v for v in row]
            b[r] = b[r] * inv
        nz = [k for k, v in enumerate(row) if v]
        for i in range(len(A)):
            if i == r:
                continue
            f = A[i][j]
            if f:
                Ai = A[i]
                for k in nz:
                    Ai[k] -= f * row[k]
                b[i] -= f * b[r]
        self.basis[r] = j

    def reduced_costs(self, c: Sequence[Fraction]) -> list[Fraction]:
        red = list(c)
        for r, bv in enumerate(self.basis):
            cb = c[bv]
            if cb:
                row = self.A[r]
                for k, v in enumerate(row):
                    if v:
                        red[k] -= cb * v
        return red

    def run(self, c: Sequence[Fraction], allowed: int) -> str:
        """Maximize c over columns ``< allowed`` with Bland's rule."""
        while True:
            red = self.reduced_costs(c)
            enter = next((j for j in range(allowed) if red[j] > 0), None)
            if enter is None:
                return OPTIMAL
            best = None
            for r, row in enumerate(self.A):
                a = row[enter]
                if a > 0:
                    ratio = self.b[r] / a
                    key = (ratio, self.basis[r])
                    if best is None or key < best[0]:
                        best = (key, r)
            if best is None:
                return UNBOUNDED
            self.pivot(best[1], enter)

    def point(self, nvars: int) -> list[Fraction]:
        y = [ZERO] * nvars
        for r, bv in enumerate(self.basis):
            if bv < nvars:
                y[bv] = self.b[r]
        return y


def _phase_one(lp: LinearProgram) -> _Tableau | None:
    n = lp.num_vars
    m = len(lp.constraints)
    A, b = [], []
    for r, (coeffs, rhs) in enumerate(lp.constraints):
        sign = -1 if rhs < 0 else 1
        row = [sign * v for v in coeffs] + [ZERO] * m
        row[n + r] = ONE
        A.append(row)
        b.append(sign * rhs)
    tab = _Tableau(A, b, [n + r for r in range(m)])
    if m == 0:
        return tab
    c1 = [ZERO] * n + [-ONE] * m
    tab.run(c1, n + m)
    if any(tab.b[r] != 0 for r, bv in enumerate(tab.basis) if bv >= n):
        return None
    # drive zero-level artificials out; drop rows that are redundant
    r = 0
    while r < len(tab.A):
        if tab.basis[r] >= n:
            j = next((k for k in range(n) if tab.A[r][k] != 0), None)
            if j is None:
                del tab.A[r], tab.b[r], tab.basis[r]
                continue
            tab.pivot(r, j)
        r += 1
    tab.A = [row[:n] for row in tab.A]
    tab.ncols = n
    return tab


def solve(lp: LinearProgram, check_unique: bool = True) -> LpSolution:
    """Exact optimum of ``max objective.y`` over ``{A y = b, y >= 0}``."""
    n = lp.num_vars
    tab = _phase_one(lp)
    if tab is None:
        return LpSolution(INFEASIBLE)
    status = tab.run(lp.objective, n)
    if status == UNBOUNDED:
        return LpSolution(UNBOUNDED)
    y = tab.point(n)
    value = sum((ci * yi for ci, yi in zip(lp.objective, y)), ZERO)
    sol = LpSolution(OPTIMAL, tuple(y), value, None, None, tuple(tab.basis))
    if not check_unique:
        return sol
    red = tab.reduced_costs(lp.objective)
    basic = set(tab.basis)
    if all(red[j] < 0 for j in range(n) if j not in basic):
        sol.unique_optimum = True
        return sol
    # Zero reduced cost may still be a degenerate tie: look for another
    # optimal point off the support of y (a vertex is the only feasible point
    # supported inside its own support).
    off = [j for j in range(n) if y[j] == 0]
    rows = list(lp.constraints) + [(lp.objective, value)]
    probe = LinearProgram(n, tuple(rows), tuple(ONE if j in off else ZERO for j in range(n)))
    alt = solve(probe, check_unique=False)
    if alt.status == UNBOUNDED or (alt.optimal and alt.objective_value > 0):
        sol.unique_optimum = False
        sol.alternate = alt.point
    else:
        sol.unique_optimum = True
    return sol


def feasible_with_margin(
    equalities: Sequence[tuple[Sequence, object]],
    strict_rows: Sequence[tuple[Sequence, object]],
    cap=1,
) -> tuple[bool, tuple[Fraction, ...] | None]:
    """Is there a free-signed x with ``a.x = b`` on equalities and ``a.x > b`` on strict rows?

    Solved as ``max t`` with ``a.x - b >= t`` on strict rows and ``t <= cap``.
    Returns ``(feasible, witness)``; the witness has slack >= the optimal t.
    """
    cap = Fraction(cap)
    if cap <= 0:
        raise ValueError("cap must be positive")
    rows_in = list(equalities) + list(strict_rows)
    if not rows_in:
        raise ValueError("no rows given")
    nx = len(rows_in[0][0])
    ns = len(strict_rows)
    # columns: x+ (nx), x- (nx), t, slacks (ns), cap slack
    t_col = 2 * nx
    u_col = 2 * nx + 1 + ns
    nv = u_col + 1
    cons = []
    for coeffs, rhs in equalities:
        row = [ZERO] * nv
        for k, a in enumerate(coeffs):
            a = Fraction(a)
            row[k] = a
            row[nx + k] = -a
        cons.append((row, Fraction(rhs)))
    for s, (coeffs, rhs) in enumerate(strict_rows):
        row = [ZERO] * nv
        for k, a in enumerate(coeffs):
            a = Fraction(a)
            row[k] = a
            row[nx + k] = -a
        row[t_col] = -ONE
        row[t_col + 1 + s] = -ONE
        cons.append((row, Fraction(rhs)))
    row = [ZERO] * nv
    row[t_col] = ONE
    row[u_col] = ONE
    cons.append((row, cap))
    obj = [ZERO] * nv
    obj[t_col] = ONE
    sol = solve(LinearProgram(nv, tuple((tuple(r), b) for r, b in cons), tuple(obj)),
                check_unique=False)
    if not sol.optimal:
        return False, None
    if ns and sol.objective_value <= 0:
        return False, None
    y = sol.point
    return True, tuple(y[k] - y[nx + k] for k in range(nx))


# ---------------------------------------------------------------------------
# dense exact linear algebra


def rref(rows: Sequence[Sequence], ncols: int) -> tuple[list[list[Fraction]], list[int]]:
    M = [[Fraction(v) for v in row] for row in rows]
    pivots = []
    r = 0
    for c in range(ncols):
        p = next((i for i in range(r, len(M)) if M[i][c] != 0), None)
        if p is None:
            continue
        M[r], M[p] = M[p], M[r]
        inv = 1 / M[r][c]
        M[r] = [v * inv for v in M[r]]
        for i in range(len(M)):
            if i != r and M[i][c] != 0:
                f = M[i][c]
                M[i] = [a - f * b for a, b in zip(M[i], M[r])]
        pivots.append(c)
        r += 1
        if r == len(M):
            break
    return M[:r], pivots


def rank(rows: Sequence[Sequence], ncols: int) -> int:
    return len(rref(rows, ncols)[1]) if rows else 0


def solve_square(rows: Sequence[Sequence], rhs: Sequence) -> list[Fraction] | None:
    """Unique solution of a square system, or None if singular."""
    n = len(rows)
    aug = [list(r) + [v] for r, v in zip(rows, rhs)]
    R, piv = rref(aug, n)
    if piv != list(range(n)):
        return None
    return [R[i][n] for i in range(n)]


def nullspace(rows: Sequence[Sequence], ncols: int) -> list[list[Fraction]]:
    R, piv = rref(rows, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in piv]
    basis = []
    for f in free:
        v = [ZERO] * ncols
        v[f] = ONE
        for i, p in enumerate(piv):
            v[p] = -R[i][f]
        basis.append(v)
    return basis
