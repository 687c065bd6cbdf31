from fractions import Fraction

import pytest

from tightspan.core import Subgraph, all_edges, is_star, validate_metric
from tightspan.errors import ScaleLimit
from tightspan.polar import (
    PolyhedronPd,
    _int_adjugate,
    _row_patterns,
    bounded_face_complex,
    crosscheck_dimension,
    has_recession_ray,
    is_bounded,
    pd_vertices,
)
from tightspan.subdivision import cell_witness, enumerate_maximal_cells, interior_faces
from tests.helpers import matchex, random_metric, triangex

F = Fraction
SMALL = [matchex(4), matchex(5), matchex(6), triangex(2)] + [
    random_metric(n, s) for n in (4, 5, 6) for s in range(2)]


def equilateral(v):
    return validate_metric({(0, 1): v, (0, 2): v, (1, 2): v}, 3)


class TestVertices:
    def test_tripod_vertices(self):
        h = F(3, 2)
        assert set(pd_vertices(equilateral(h))) == {
            (F(3, 4),) * 3, (0, h, h), (h, 0, h), (h, h, 0)}

    def test_n2(self):
        assert pd_vertices(validate_metric({(0, 1): 1}, 2)) == [(0, 1), (1, 0)]

    def test_matchex4_has_matching_vertex(self, matchex4):
        P = PolyhedronPd(matchex4)
        rows = {all_edges(4).index(e) + 4 for e in [(0, 2), (1, 3)]}
        assert any(rows <= P.tight_rows(x) for x in pd_vertices(matchex4))

    @pytest.mark.parametrize("d", SMALL)
    def test_vertices_are_feasible(self, d):
        P = PolyhedronPd(d)
        for x in pd_vertices(d):
            assert P.contains(x)
            assert len(P.tight_rows(x)) >= d.n

    def test_scale_limit(self, monkeypatch):
        monkeypatch.delenv("TIGHTSPAN_SCALE_LIMIT", raising=False)
        with pytest.raises(ScaleLimit):
            pd_vertices(matchex(7))


class TestComplex:
    def test_tripod(self):
        cx = bounded_face_complex(equilateral(1))
        assert cx.max_dim == 1 and cx.f_vector() == {0: 4, 1: 3}

    def test_n2_single_edge(self):
        cx = bounded_face_complex(validate_metric({(0, 1): 1}, 2))
        assert cx.max_dim == 1 and cx.f_vector() == {0: 2, 1: 1}

    def test_matchex4(self, matchex4):
        assert bounded_face_complex(matchex4).max_dim == 2

    @pytest.mark.parametrize("d", SMALL)
    def test_coverage_test_matches_ray_test(self, d):
        cx = bounded_face_complex(d)
        for f in cx.faces:
            assert not has_recession_ray(d.n, f.active_rows)
        # unbounded faces: single vertex tight sets minus one coordinate row
        P = PolyhedronPd(d)
        for x in pd_vertices(d):
            tight = P.tight_rows(x)
            for r in tight:
                sub = tight - {r}
                assert is_bounded(d.n, sub) != has_recession_ray(d.n, sub)


@pytest.mark.parametrize("d,expected", [
    (matchex(4), 2), (triangex(2), 2), (matchex(6), 3), (matchex(5), 2)])
def test_crosscheck_examples(d, expected):
    rep = crosscheck_dimension(d)
    assert (rep.polar_dim, rep.subdivision_dim, rep.agree) == (expected, expected, True)


@pytest.mark.parametrize("d", SMALL)
def test_face_counts_match_after_removing_stars(d):
    rep = crosscheck_dimension(d)
    polar = dict(rep.polar_f_vector)
    assert rep.star_faces == d.n
    polar[1] -= d.n
    assert polar == rep.interior_f_vector


@pytest.mark.parametrize("d", SMALL)
def test_face_graphs_are_interior_cells_or_stars(d):
    cx = bounded_face_complex(d)
    metric_graphs = {f.graph(d.n) for f in cx.faces if f.metric_only(d.n)}
    cells = {c.graph for c in interior_faces(enumerate_maximal_cells(d))}
    stars = {g for g in metric_graphs if is_star(g)}
    assert metric_graphs == cells | stars
    assert len(stars) == d.n


@pytest.mark.parametrize("d", SMALL)
def test_cell_witnesses_lie_on_their_faces(d):
    P = PolyhedronPd(d)
    for c in interior_faces(enumerate_maximal_cells(d)):
        x = cell_witness(d, c.graph)
        assert P.contains(x)
        tight = {all_edges(d.n)[r - d.n] for r in P.tight_rows(x) if r >= d.n}
        assert Subgraph(d.n, frozenset(tight)) == c.graph


def test_crosscheck_needs_n4():
    with pytest.raises(ValueError):
        crosscheck_dimension(equilateral(1))


@pytest.mark.parametrize("n", [4, 5, 6])
def test_adjugate_identity(n):
    rows, systems = _row_patterns(n)
    for combo, adj, det in systems[:: max(1, len(systems) // 200)]:
        A = [rows[r] for r in combo]
        for i in range(n):
            for j in range(n):
                assert sum(A[i][k] * adj[k][j] for k in range(n)) == (det if i == j else 0)
    assert _int_adjugate([[1, 1], [2, 2]]) is None
