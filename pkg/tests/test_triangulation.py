import itertools
import json

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from hypgluing.equations import gluing_system
from hypgluing.fixtures import NAMES, fixture_text
from hypgluing.shapes import cross_ratio
from hypgluing.triangulation import (
    EDGE_SLOTS,
    TriangulationError,
    barycentric_subdivide,
    gluing_matrix,
    parse_triangulation,
    perm_is_even,
    quad_classes_and_tau,
    quad_of_edge,
    relabel,
    tau_for_orientation,
    validate,
)

from conftest import fixture, subdivided

LENS = fixture_text("lens_4_1")


def _doc(gluings, tets=None):
    return json.dumps({"tets": len(gluings) if tets is None else tets, "gluings": gluings})


@pytest.mark.parametrize(
    "text, message",
    [
        ("not json", "malformed"),
        ('{"tets": 1}', "malformed"),
        (_doc([[{"tet": 0, "perm": [0, 0, 1, 2]}] * 4]), "bijection"),
        (_doc([[{"tet": 3, "perm": [3, 2, 0, 1]}] * 4]), "out of range"),
        (_doc([[{"tet": 0, "perm": [3, 2, 0, 1]}] * 3]), "4 face records"),
        (_doc([[{"tet": 0, "perm": [1, 0, 2, 3]}] * 4]), "glued to itself"),
        (_doc([[{"tet": 0, "perm": [3, 2, 0, 1]}, None, {"tet": 0, "perm": [0, 1, 3, 2]}, None]]), "multiply glued"),
        (_doc([[{"tet": 0, "perm": [3, 2, 0, True]}] * 4]), "integers"),
    ],
)
def test_parse_errors(text, message):
    with pytest.raises(TriangulationError, match=message):
        parse_triangulation(text)


def test_round_trip(fixture_name):
    T = fixture(fixture_name)
    assert parse_triangulation(T.to_json()) == T


def test_unglued_face_is_open():
    doc = json.loads(LENS)
    doc["gluings"][0][3] = None
    report = validate(parse_triangulation(json.dumps(doc)))
    assert not report.closed and not report.ok


def test_empty_triangulation():
    T = parse_triangulation('{"tets": 0, "gluings": []}')
    assert T.is_closed and not T.edges and validate(T).ok


def test_lens_edges():
    T = fixture("lens_4_1")
    assert [e.valence for e in T.edges] == [2, 4]
    assert T.vertex_count == 1
    assert all(e.crossings for e in T.edges)


@pytest.mark.parametrize("sub", [False, True])
def test_counts_and_links(fixture_name, sub):
    T = subdivided(fixture_name) if sub else fixture(fixture_name)
    report = validate(T)
    assert report.ok
    assert report.edge_count == report.vertex_count + report.tet_count
    assert all(x == 2 for x in report.links)


def test_gluing_involution(fixture_name):
    T = fixture(fixture_name)
    for t, faces in enumerate(T.gluings):
        for f, (t2, p) in enumerate(faces):
            back_t, back_p = T.gluings[t2][p[f]]
            assert back_t == t
            assert all(back_p[p[a]] == a for a in range(4))
            assert not perm_is_even(p)


@pytest.mark.parametrize("sub", [False, True])
def test_gluing_matrix_sums(fixture_name, sub):
    T = subdivided(fixture_name) if sub else fixture(fixture_name)
    M = gluing_matrix(T)
    assert np.all(M.sum(axis=0) == 2)
    assert list(M.sum(axis=1)) == [e.valence for e in T.edges]


def test_subdivision_size():
    T = fixture("lens_5_2")
    B = subdivided("lens_5_2")
    assert B.tet_count == 24 * T.tet_count
    assert B.is_oriented and B.is_closed
    assert validate(B).vertex_count == T.vertex_count + len(T.edges) + 2 * T.tet_count + T.tet_count


def test_quad_of_edge():
    for s, (a, b) in enumerate(EDGE_SLOTS):
        c, d = (x for x in range(4) if x not in (a, b))
        assert quad_of_edge(a, b) == quad_of_edge(c, d) == min(s, 5 - s)


def test_tau_orientation():
    assert tau_for_orientation(1) == (1, 2, 0)
    assert tau_for_orientation(-1) == (2, 0, 1)


def test_unoriented_rejected():
    T = relabel(fixture("poincare"), 2, (1, 0, 2, 3))
    assert not T.is_oriented
    with pytest.raises(TriangulationError):
        quad_classes_and_tau(T)
    assert not validate(T).ok


@given(st.permutations(range(4)), st.integers(0, 4))
@settings(max_examples=40, deadline=None)
def test_relabel_preserves_invariants(sigma, tet):
    T = fixture("poincare")
    R = relabel(T, tet, sigma)
    assert R.is_closed
    assert R.is_oriented == perm_is_even(sigma)
    assert len(R.edges) == len(T.edges)
    assert sorted(e.valence for e in R.edges) == sorted(e.valence for e in T.edges)


@given(st.permutations(range(4)))
@settings(max_examples=24, deadline=None)
def test_even_relabel_keeps_system(sigma):
    # an even relabelling moves z to one of z, 1/(1-z), (z-1)/z; the solution set maps accordingly
    if not perm_is_even(sigma):
        sigma = (sigma[1], sigma[0], sigma[2], sigma[3])
    T = fixture("lens_4_1")
    S = gluing_system(relabel(T, 0, sigma))
    assert sorted(S.matrix.sum(axis=1)) == sorted(gluing_system(T).matrix.sum(axis=1))


def test_tau_matches_cross_ratio():
    # positions of a positively oriented tet: quad shapes z, 1/(1-z), (z-1)/z on q0, q1, q2
    z = 0.3 + 0.8j
    P = [0j, 1 + 0j, z, 2 + 3j]
    for i, j, k, l in itertools.permutations(range(4)):
        if not perm_is_even((i, j, k, l)):
            continue
        w = cross_ratio(P[i], P[j], P[k], P[l])
        q = quad_of_edge(i, j)
        w01 = cross_ratio(*P)
        expected = [w01, 1 / (1 - w01), (w01 - 1) / w01][q]
        assert abs(w - expected) < 1e-12
