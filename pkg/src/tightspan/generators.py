"""Metric families: perfect-matching type, triangle type, mixtures, random.

Exact rational perturbations stand in for algebraically independent ones:
``alpha_k = epsilon * B**-k`` with ``B = 2n^2`` and ``epsilon = 1/(2n^2)``.
Two integer combinations of these with coefficients in ``[0, B)`` agree only
if the coefficients agree. Every generator that promises genericity checks
it on the emitted metric.

Seed derivation (stable across versions): a seed is a 64-bit unsigned
integer feeding a SplitMix64 stream. Edge perturbations are assigned by a
Fisher-Yates shuffle of ``alpha_1..alpha_m`` over the non-special edges in
lexicographic order, drawing ``j = next() % (i + 1)`` for ``i = m-1 .. 1``.
Retry ``r >= 1`` of a seeded generator uses the seed
``SplitMix64(seed ^ (r * 0xD1B54A32D192ED03)).next()``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb

from .core import Metric, all_edges, validate_metric
from .errors import ConstructionFailed, DimOutOfRange
from .subdivision import is_generic, tight_span_dimension

MASK64 = (1 << 64) - 1
MAX_RETRIES = 8
Q_BITS = 20


class SplitMix64:
    def __init__(self, seed: int):
        self.state = seed & MASK64

    def next(self) -> int:
        self.state = (self.state + 0x9E3779B97F4A7C15) & MASK64
        z = self.state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & MASK64
        return z ^ (z >> 31)

    def below(self, bound: int) -> int:
        return self.next() % bound


def derive_seed(seed: int, attempt: int) -> int:
    if attempt == 0:
        return seed & MASK64
    return SplitMix64(seed ^ ((attempt * 0xD1B54A32D192ED03) & MASK64)).next()


@dataclass(frozen=True)
class PerturbationScheme:
    n: int

    @property
    def base(self) -> int:
        return 2 * self.n * self.n

    @property
    def epsilon(self) -> Fraction:
        return Fraction(1, 2 * self.n * self.n)

    @property
    def values(self) -> list[Fraction]:
        eps, B = self.epsilon, self.base
        return [eps / Fraction(B) ** k for k in range(1, comb(self.n, 2) + 1)]

    def combination(self, multiplicities: list[int]) -> Fraction:
        return sum((m * a for m, a in zip(multiplicities, self.values)), Fraction(0))


def _shuffled(values: list, rng: SplitMix64) -> list:
    out = list(values)
    for i in range(len(out) - 1, 0, -1):
        j = rng.below(i + 1)
        out[i], out[j] = out[j], out[i]
    return out


def grouped_metric(n: int, groups: list[list[int]], seed: int) -> Metric:
    """Distance 2 inside each group, ``1 + alpha`` across groups (0-based labels)."""
    group_of = {v: g for g, members in enumerate(groups) for v in members}
    return _two_level_metric(n, lambda i, j: group_of[i] == group_of[j], seed)


def _two_level_metric(n: int, is_far, seed: int) -> Metric:
    near = [e for e in all_edges(n) if not is_far(*e)]
    alphas = _shuffled(PerturbationScheme(n).values[: len(near)], SplitMix64(seed))
    raw = {e: Fraction(2) for e in all_edges(n) if is_far(*e)}
    raw.update({e: 1 + a for e, a in zip(near, alphas)})
    return validate_metric(raw, n)


def gen_matchex(n: int, seed: int = 0) -> Metric:
    """``d_ij = 2`` when ``|i-j| = floor(n/2)``, else ``1 + alpha_ij``."""
    if n < 2:
        raise ValueError("n must be at least 2")
    return _two_level_metric(n, lambda i, j: j - i == n // 2, seed)


def gen_triangex(k: int, seed: int = 0) -> Metric:
    """n = 3k points in consecutive triples; distance 2 within a triple."""
    if k < 1:
        raise ValueError("k must be at least 1")
    return grouped_metric(3 * k, [[3 * r, 3 * r + 1, 3 * r + 2] for r in range(k)], seed)


def titration_groups(n: int, target_dim: int) -> list[list[int]]:
    """``n - 2D`` triples followed by ``3D - n`` pairs, consecutive labels."""
    lo, hi = -(-n // 3), n // 2
    if not lo <= target_dim <= hi:
        raise DimOutOfRange(f"dimension {target_dim} outside [{lo}, {hi}] for n={n}")
    triples, pairs = n - 2 * target_dim, 3 * target_dim - n
    groups, v = [], 0
    for size, count in ((3, triples), (2, pairs)):
        for _ in range(count):
            groups.append(list(range(v, v + size)))
            v += size
    return groups


def gen_titrated(n: int, target_dim: int, seed: int = 0) -> Metric:
    """Triples-and-pairs mixture, accepted only once its dimension is verified."""
    groups = titration_groups(n, target_dim)
    for attempt in range(MAX_RETRIES + 1):
        d = grouped_metric(n, groups, derive_seed(seed, attempt))
        if is_generic(d) and tight_span_dimension(d).dimension == target_dim:
            return d
    raise ConstructionFailed(f"titrated n={n} dim={target_dim} failed after {MAX_RETRIES} retries")


def gen_random(n: int, seed: int = 0) -> Metric:
    """``d_ij = 1 + q_ij + alpha_ij`` with ``q_ij = m / 2^20 in (0, 1 - 1/n)``; retried until generic."""
    if n < 3:
        raise ValueError("n must be at least 3")
    scale = 1 << Q_BITS
    top = -(-(n - 1) * scale // n) - 1  # largest m with m/scale < (n-1)/n
    alphas = PerturbationScheme(n).values
    for attempt in range(MAX_RETRIES + 1):
        rng = SplitMix64(derive_seed(seed, attempt))
        qs = [Fraction(1 + rng.below(top), scale) for _ in all_edges(n)]
        shuffled = _shuffled(alphas, rng)
        raw = {e: 1 + q + a for e, q, a in zip(all_edges(n), qs, shuffled)}
        d = validate_metric(raw, n)
        if is_generic(d):
            return d
    raise ConstructionFailed(f"no generic random metric for n={n} after {MAX_RETRIES} retries")
