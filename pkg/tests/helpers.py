"""Cached metric instances shared across test modules."""

from functools import lru_cache

from tightspan.generators import gen_matchex, gen_random, gen_titrated, gen_triangex

# one line per acceptance criterion, printed in the terminal summary
ACCEPTANCE_LINES: list[str] = []


@lru_cache(maxsize=None)
def random_metric(n, seed):
    return gen_random(n, seed)


@lru_cache(maxsize=None)
def matchex(n, seed=1):
    return gen_matchex(n, seed)


@lru_cache(maxsize=None)
def triangex(k, seed=1):
    return gen_triangex(k, seed)


@lru_cache(maxsize=None)
def titrated(n, dim, seed=1):
    return gen_titrated(n, dim, seed)
