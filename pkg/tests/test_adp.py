import dataclasses

import pytest
from hypothesis import given
from hypothesis import strategies as st

from toricvf import cone
from toricvf.adp import (
    BAD_PAIR,
    E3_NOT_INTERIOR,
    NO_SPAN,
    NOT_A_RAY,
    WITNESS_IN_Y,
    AdpCertificate,
    all_subvarieties,
    build_certificate,
    decide_adp,
    enumerate_roots,
    find_root_for_face,
    haar_violating_field,
    invariant_subvariety,
    orbit_dimension,
    orbit_ideal_contains,
    vanishes_by_ideal,
    verify_certificate,
)
from toricvf.errors import (
    InvalidSubvarietyError,
    NotSmoothError,
    PreconditionError,
    UnsupportedError,
)
from toricvf.fields import TYPE_I, HomogeneousField, classify, vanishes_on_orbit_closure
from toricvf.lattice import INTERIOR, dual_membership, semigroup_points

from .conftest import A1, CORPUS, OCTANT, QUADRANT, SIMPLEX_112
from .oracles import dot, frac_rank


def ray_face(sigma, *rays):
    return sigma.face([sigma.ray_index(r) for r in rays])


def test_orbit_ideal_examples():
    s = cone(A1)
    t = ray_face(s, (1, 0))
    assert not orbit_ideal_contains(s, t, (0, 1))
    assert orbit_ideal_contains(s, t, (2, -1))
    assert not orbit_ideal_contains(s, s.face([]), (2, -1))
    with pytest.raises(ValueError):
        orbit_ideal_contains(s, t, (-1, 0))


def test_root_examples():
    q, s = cone(QUADRANT), cone(A1)
    assert find_root_for_face(q, ray_face(q, (1, 0))) == (-1, 1)
    assert find_root_for_face(s, ray_face(s, (1, 0))) == (-1, 1)
    assert find_root_for_face(s, ray_face(s, (1, 2))) == (1, -1)


def test_root_for_higher_face_frozen():
    o = cone(OCTANT)
    tau = ray_face(o, (0, 1, 0), (1, 0, 0))
    e = find_root_for_face(o, tau, 0)
    assert [dot(e, r) for r in tau.rays] == [-1, 0]
    assert dot(e, (0, 0, 1)) > 0
    assert e == (0, -1, 1)


def test_root_errors():
    s = cone(A1)
    with pytest.raises(NotSmoothError):
        find_root_for_face(s, s.face([0, 1]))
    with pytest.raises(PreconditionError):
        find_root_for_face(s, s.face([]))


def test_enumerate_roots_examples():
    q = cone(QUADRANT)
    assert enumerate_roots(q, 1) == [((-1, 0), (1, 0)), ((-1, 1), (1, 0)), ((0, -1), (0, 1)), ((1, -1), (0, 1))]
    got = enumerate_roots(cone(A1), 1)
    assert ((-1, 1), (1, 0)) in got and ((1, -1), (1, 2)) in got
    assert enumerate_roots(q, 0) == []


def test_decide_examples():
    s = cone(A1)
    assert decide_adp(s, invariant_subvariety(s, [s.face([0, 1])]))
    assert not decide_adp(s, invariant_subvariety(s, [[0], [1]]))
    q = cone(QUADRANT)
    assert decide_adp(q, invariant_subvariety(q, [[0, 1], [q.ray_index((1, 0))]]))


def test_subvariety_closure_and_flag():
    s = cone(A1)
    y = invariant_subvariety(s, [])
    assert y.faces == {(0, 1)} and y.inserted_singular
    y = invariant_subvariety(s, [[0]])
    assert y.faces == {(0,), (0, 1)}
    with pytest.raises(InvalidSubvarietyError):
        invariant_subvariety(s, [[]])


def test_rank_one_unsupported():
    line = cone([(1,)])
    with pytest.raises(UnsupportedError):
        decide_adp(line, invariant_subvariety(line, []))


def test_certificate_examples():
    s = cone(A1)
    y = invariant_subvariety(s, [s.face([0, 1])])
    cert = build_certificate(s, y)
    assert cert.witness_ray == (1, 0) and cert.root_e1 == (-1, 1)
    assert verify_certificate(s, y, cert) == (True, [])
    q = cone(QUADRANT)
    y = invariant_subvariety(q, [[0, 1], [q.ray_index((1, 0))]])
    cert = build_certificate(q, y)
    assert cert.witness_ray == (0, 1)
    assert verify_certificate(q, y, cert)[0]
    y = invariant_subvariety(s, [[0], [1]])
    with pytest.raises(PreconditionError):
        build_certificate(s, y)


def test_certificate_frozen_json():
    s = cone(A1)
    y = invariant_subvariety(s, [s.face([0, 1])])
    assert build_certificate(s, y).to_json() == {
        "witness_ray": [1, 0],
        "root_e1": [-1, 1],
        "e2": [2, 0],
        "e3": [1, 1],
        "sample_bracket": {"e4": [2, 0], "p4": [0, -1], "field": {"e": [1, 1], "p": [1, -2]}},
        "spanning_degrees": [[1, 1], [1, 2]],
        "spanning_directions": [[-1, 1], [-2, 1]],
        "ell": "unknown",
    }


def test_certificate_json_round_trip():
    o = cone(OCTANT)
    y = invariant_subvariety(o, [[0, 1], [1, 2]])
    cert = build_certificate(o, y)
    again = AdpCertificate.from_json(cert.to_json())
    assert again == cert and verify_certificate(o, y, again)[0]


def test_mutations_rejected():
    s = cone(SIMPLEX_112)
    y = invariant_subvariety(s, [s.face([0, 1])])
    cert = build_certificate(s, y)
    boundary = dataclasses.replace(cert, e3=s.facet_normals[0])
    assert E3_NOT_INTERIOR in verify_certificate(s, y, boundary)[1]
    i = next(i for i, x in enumerate(cert.e4) if x)
    bumped = tuple(x + (j == i) for j, x in enumerate(cert.p4))
    assert BAD_PAIR in verify_certificate(s, y, dataclasses.replace(cert, p4=bumped))[1]
    flat = dataclasses.replace(cert, spanning_directions=(cert.spanning_directions[0],) * 3)
    assert NO_SPAN in verify_certificate(s, y, flat)[1]
    y = invariant_subvariety(s, [[0]])
    cert = build_certificate(s, y)
    assert cert.witness_ray != s.rays[0]
    assert WITNESS_IN_Y in verify_certificate(s, y, dataclasses.replace(cert, witness_ray=s.rays[0]))[1]
    assert verify_certificate(s, y, dataclasses.replace(cert, witness_ray=(7, 7, 7))) == (False, [NOT_A_RAY])


def test_decide_iff_certificate_on_corpus(corpus_cone):
    for y in all_subvarieties(corpus_cone):
        if decide_adp(corpus_cone, y):
            ok, reasons = verify_certificate(corpus_cone, y, build_certificate(corpus_cone, y))
            assert ok, reasons
        else:
            with pytest.raises(PreconditionError):
                build_certificate(corpus_cone, y)


def test_subvariety_counts_frozen():
    assert len(all_subvarieties(cone(QUADRANT))) == 5
    assert len(all_subvarieties(cone(A1))) == 4
    assert len(all_subvarieties(cone(OCTANT))) == 19


def test_orbit_dimension(corpus_cone):
    for f in corpus_cone.faces():
        assert orbit_dimension(corpus_cone, f) == corpus_cone.rank - frac_rank(list(f.rays) or [(0,) * corpus_cone.rank])


def test_certificate_root_vanishing_matches_oracle(corpus_cone):
    pts = semigroup_points(corpus_cone, 8)
    for y in all_subvarieties(corpus_cone):
        if not decide_adp(corpus_cone, y):
            continue
        cert = build_certificate(corpus_cone, y)
        root = HomogeneousField(cert.root_e1, cert.witness_ray)
        for f in corpus_cone.faces():
            if f.indices in y.faces:
                assert vanishes_by_ideal(corpus_cone, root, f, pts)


@pytest.mark.parametrize("name", ["quadrant", "A1", "octant", "square"])
def test_haar_violating_fields(name):
    s = cone(CORPUS[name])
    for ell in range(4):
        f, m, p = haar_violating_field(s, ell)
        rec = classify(s, f)
        assert rec.kind == TYPE_I and not rec.preserves_haar
        assert dual_membership(s, m, INTERIOR)
        assert f.e == tuple((ell + 1) * x for x in m)
        for face in s.faces():
            if face.indices:
                assert vanishes_on_orbit_closure(s, HomogeneousField(m, p), face)


@given(st.sampled_from(sorted(CORPUS)), st.data())
def test_face_roots_satisfy_pairings(name, data):
    s = cone(CORPUS[name])
    smooth = [f for f in s.faces() if f.indices and f.smooth]
    tau = data.draw(st.sampled_from(smooth))
    k = data.draw(st.integers(0, len(tau.indices) - 1))
    e = find_root_for_face(s, tau, k)
    for j, r in enumerate(tau.rays):
        assert dot(e, r) == (-1 if j == k else 0)
    assert all(dot(e, r) > 0 for i, r in enumerate(s.rays) if i not in tau.indices)
