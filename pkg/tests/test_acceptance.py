"""Acceptance criteria, one test each; every test records a PASS/FAIL summary line."""

from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from tightspan.core import (
    FractionalMatching,
    Subgraph,
    Weights,
    has_nontrivial_even_tour,
    matching_weights,
    validate_metric,
)
from tightspan.errors import InfeasibleWeights
from tightspan.matching import one_matching_integral, one_matching_structure, optimal_matching
from tightspan.oracle import brute_force_cells
from tightspan.polar import crosscheck_dimension
from tightspan.subdivision import (
    Cell,
    check_genericity,
    dimension_bounds,
    enumerate_maximal_cells,
    hypersimplex_volume,
    tight_span_dimension,
)
from tests.helpers import ACCEPTANCE_LINES, matchex, random_metric, titrated, triangex

SAMPLES = {4: 100, 5: 100, 6: 100, 7: 100, 8: 20}


def record(number, ok, detail):
    ACCEPTANCE_LINES.append(f"[{'PASS' if ok else 'FAIL'}] criterion {number}: {detail}")
    assert ok, detail


def sample(n):
    return [random_metric(n, s) for s in range(SAMPLES[n])]


def dims(n):
    return [tight_span_dimension(d).dimension for d in sample(n)]


def test_criterion_1_dimension_bounds():
    bad = []
    total = 0
    for n in SAMPLES:
        lo, hi = dimension_bounds(n)
        for seed, dim in enumerate(dims(n)):
            total += 1
            if not lo <= dim <= hi:
                bad.append((n, seed, dim))
    record(1, not bad, f"{total} random generic metrics, n=4..8, all within [ceil(n/3), floor(n/2)]"
           if not bad else f"out of bounds: {bad}")


def test_criterion_2_small_n_classification():
    d4, d5 = set(dims(4)), set(dims(5))
    d6 = set(dims(6))
    realized = {tight_span_dimension(titrated(6, k)).dimension for k in (2, 3)}
    ok = d4 == {2} and d5 == {2} and d6 <= {2, 3} and realized == {2, 3}
    record(2, ok, f"n=4 dims {sorted(d4)}, n=5 dims {sorted(d5)}, n=6 dims {sorted(d6)}, "
           f"titrated n=6 realizes {sorted(realized)}")


def test_criterion_3_tightness():
    got = {n: tight_span_dimension(matchex(n)).dimension for n in range(4, 9)}
    upper_ok = all(got[n] == n // 2 for n in got)
    tri = tight_span_dimension(triangex(2)).dimension
    hits = {}
    for n in (6, 7, 8):
        lo, hi = dimension_bounds(n)
        hits[n] = sorted(tight_span_dimension(titrated(n, k)).dimension for k in range(lo, hi + 1))
    titr_ok = all(hits[n] == list(range(dimension_bounds(n)[0], dimension_bounds(n)[1] + 1))
                  for n in hits)
    record(3, upper_ok and tri == 2 and titr_ok,
           f"matchex dims {got}, triangex(2) dim {tri}, titrated hits {hits}")


def _interior(G):
    return Cell.of(G).interior


def test_criterion_4_oracle_equivalence():
    mismatches = []
    for n in (4, 5):
        for s in range(10):
            d = random_metric(n, s)
            brute = brute_force_cells(d)
            if {G for G in brute if len(G) == n} != set(enumerate_maximal_cells(d).maximal_cells):
                mismatches.append((n, s, "cells"))
            brute_dim = n - min(len(G) for G in brute if _interior(G))
            if brute_dim != tight_span_dimension(d).dimension:
                mismatches.append((n, s, "dimension"))
    record(4, not mismatches, "20 metrics (n=4,5): maximal cells and dimension equal the brute force"
           if not mismatches else f"mismatches {mismatches}")


# --- criterion 5: four properties, 250 checks each -------------------------------------

METRICS5 = [(n, s) for n in (4, 5, 6) for s in range(4)]
PROPERTY_CHECKS = {"unique": 0, "noeventours": 0, "suppenough": 0, "interior": 0}
weights = st.lists(st.integers(min_value=1, max_value=60), min_size=6, max_size=6)


def _feasible_optimum(d, ws):
    try:
        return optimal_matching(d, Weights(tuple(Fraction(w, 12) for w in ws[: d.n])))
    except InfeasibleWeights:
        # weights violating w_i <= sum of the others; shrink the largest
        ws = sorted(ws[: d.n])
        ws[-1] = min(ws[-1], sum(ws[:-1]))
        return optimal_matching(d, Weights(tuple(Fraction(w, 12) for w in ws)))


@settings(max_examples=250)
@given(st.sampled_from(METRICS5), weights)
def _check_unique_optimum(ns, ws):
    res = _feasible_optimum(random_metric(*ns), ws)
    assert res.unique
    PROPERTY_CHECKS["unique"] += 1


@settings(max_examples=250)
@given(st.sampled_from(METRICS5), weights)
def _check_no_even_tours(ns, ws):
    res = _feasible_optimum(random_metric(*ns), ws)
    assert not has_nontrivial_even_tour(res.matching.support())
    PROPERTY_CHECKS["noeventours"] += 1


@settings(max_examples=250)
@given(st.sampled_from(METRICS5), st.data())
def _check_cell_supports_are_optimal(ns, data):
    d = random_metric(*ns)
    G = data.draw(st.sampled_from(enumerate_maximal_cells(d).sorted_cells()))
    c = {e: Fraction(data.draw(st.integers(min_value=1, max_value=20)), 4) for e in G.sorted_edges()
         if data.draw(st.booleans())}
    if not c:
        c = {G.sorted_edges()[0]: Fraction(1)}
    m = FractionalMatching(d.n, c)
    assert optimal_matching(d, matching_weights(m)).objective == m.value(d)
    PROPERTY_CHECKS["suppenough"] += 1


@settings(max_examples=250)
@given(st.sampled_from(METRICS5), st.data())
def _check_interior_verdict(ns, data):
    d = random_metric(*ns)
    G = data.draw(st.sampled_from(enumerate_maximal_cells(d).sorted_cells()))
    es = data.draw(st.sets(st.sampled_from(G.sorted_edges()), min_size=1))
    F = Subgraph(d.n, frozenset(es))
    points = [tuple(1 if k in e else 0 for k in range(d.n)) for e in es]
    on_facet = any(all(p[i] == 0 for p in points) or all(p[i] == 1 for p in points)
                   for i in range(d.n))
    assert Cell.of(F).interior == (not on_facet)
    PROPERTY_CHECKS["interior"] += 1


def test_criterion_5_property_suite():
    for key in PROPERTY_CHECKS:
        PROPERTY_CHECKS[key] = 0
    for check in (_check_unique_optimum, _check_no_even_tours,
                  _check_cell_supports_are_optimal, _check_interior_verdict):
        check()
    total = sum(PROPERTY_CHECKS.values())
    ok = total >= 1000 and all(v >= 250 for v in PROPERTY_CHECKS.values())
    record(5, ok, f"{total} property checks {PROPERTY_CHECKS}")


def test_criterion_6_one_matching():
    tested = 0
    for n in (4, 5, 6, 7):
        for d in sample(n)[:40] + [matchex(n)]:
            comps = one_matching_structure(d)
            assert all(c.is_edge or c.is_pure_odd_cycle for c in comps)
            tested += 1
    wrong, checked = [], 0
    for n in (4, 6):
        extra = [matchex(n)] + ([triangex(2), titrated(6, 2), titrated(6, 3)] if n == 6 else [])
        for d in sample(n) + extra:
            checked += 1
            if one_matching_integral(d) != (tight_span_dimension(d).dimension == n // 2):
                wrong.append(d)
    record(6, not wrong, f"1-matching is edges and odd cycles on {tested} metrics; "
           f"integral iff dimension n/2 on {checked} metrics at n=4,6"
           if not wrong else f"integrality mismatch on {len(wrong)} metrics")


def test_criterion_7_polar_crosscheck():
    per_n = {
        4: [random_metric(4, s) for s in range(4)] + [matchex(4)],
        5: [random_metric(5, s) for s in range(4)] + [matchex(5)],
        6: [random_metric(6, s) for s in range(2)] + [matchex(6), triangex(2), titrated(6, 3)],
    }
    results = {n: [crosscheck_dimension(d).agree for d in ds] for n, ds in per_n.items()}
    ok = all(all(v) and len(v) == 5 for v in results.values())
    record(7, ok, "polar metric-row-only bounded-face dimension equals subdivision dimension "
           f"on 5 metrics per n=4,5,6: {results}")


def test_criterion_8_non_generic_detection():
    ones = validate_metric({(i, j): 1 for i in range(4) for j in range(i + 1, 4)}, 4)
    w = [1, 2, 3, 4]
    star = validate_metric({(i, j): w[i] + w[j] for i in range(4) for j in range(i + 1, 4)}, 4)
    verdicts = [check_genericity(m) for m in (ones, star)]
    rejected = all(not ok and cert is not None and cert.tour for ok, cert in verdicts)
    generated = ([matchex(n) for n in range(4, 9)] + [triangex(2), triangex(3)]
                 + [titrated(n, k) for n in (6, 7, 8) for k in range(*_closed(n))]
                 + [random_metric(n, s) for n in (4, 5, 6, 7) for s in range(10)])
    accepted = all(check_genericity(d)[0] for d in generated)
    record(8, rejected and accepted,
           f"all-ones: {verdicts[0][1]}; star tree: {verdicts[1][1]}; "
           f"{len(generated)} generated metrics accepted")


def _closed(n):
    lo, hi = dimension_bounds(n)
    return lo, hi + 1


def test_criterion_9_maximal_cell_count():
    small = {}
    for n in (4, 5):
        small[n] = {sum(len(G) == n for G in brute_force_cells(random_metric(n, s))) for s in range(3)}
    small_ok = small == {4: {4}, 5: {11}}
    regression = {n: len(enumerate_maximal_cells(matchex(n)).maximal_cells) for n in (6, 7)}
    reg_ok = regression == {6: hypersimplex_volume(6), 7: hypersimplex_volume(7)} == {6: 26, 7: 57}
    # volume-weighted count: every maximal cell weighted by 2^(components-1)
    pool = [d for n in (6, 7) for d in sample(n)[:20]] + [triangex(2)]
    volume_ok = all(enumerate_maximal_cells(d).total_volume() == hypersimplex_volume(d.n)
                    for d in pool)
    raw6 = sorted(len(enumerate_maximal_cells(d).maximal_cells) for d in sample(6)[:20])
    record(9, small_ok and reg_ok and volume_ok,
           f"oracle counts {small}; matchex regression {regression}; "
           f"volume-weighted count holds on {len(pool)} n=6,7 metrics "
           f"(raw counts on random n=6: {dict((k, raw6.count(k)) for k in sorted(set(raw6)))}, "
           f"triangex(2): {len(enumerate_maximal_cells(triangex(2)).maximal_cells)})")
