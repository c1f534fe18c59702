import itertools

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from toricvf.errors import DimensionError, PointednessError, RankLimitError
from toricvf.lattice import (
    BOUNDARY,
    INTERIOR,
    LatticeVector,
    cone,
    cone_membership,
    det,
    dual_cone,
    dual_membership,
    faces,
    hermite_basis,
    is_pointed,
    maximal_minor_gcd,
    pairing,
    primitive,
    semigroup_points,
    solve_integer,
)

from .conftest import A1, CORPUS, OCTANT, QUADRANT
from .oracles import brute_extreme_rays, brute_facet_normals, det as brute_det, dot, is_unimodular_extendable


def test_pairing_examples():
    assert pairing((1, 0), (0, 1)) == 0
    assert pairing((2, 1), (0, 1)) == 1
    assert pairing((-1, 1), (1, 2)) == 1


def test_pairing_rank_mismatch():
    with pytest.raises(DimensionError):
        pairing((1, 0), (1, 0, 0))


def test_pairing_rejects_same_ambient():
    m = LatticeVector((1, 2), "M")
    with pytest.raises(DimensionError):
        pairing(m, LatticeVector((0, 1), "M"))
    assert pairing(m, LatticeVector((3, -1), "N")) == 1


def test_lattice_vector_primitive():
    assert LatticeVector((2, 3), "N").is_primitive
    assert not LatticeVector((2, 4), "N").is_primitive
    assert not LatticeVector((0, 0), "N").is_primitive


def test_dual_examples():
    assert dual_cone(cone(QUADRANT)).rays == ((0, 1), (1, 0))
    assert set(dual_cone(cone(A1)).rays) == {(0, 1), (2, -1)}
    assert set(cone([(1, 0), (0, 1), (1, 1)]).rays) == {(1, 0), (0, 1)}


def test_dual_facet_normals_are_input_rays():
    sigma = cone(A1)
    assert set(dual_cone(sigma).facet_normals) == set(sigma.rays)


def test_face_examples():
    q = faces(cone(QUADRANT))
    assert len(q) == 4 and all(f.smooth for f in q)
    a = faces(cone(A1))
    assert len(a) == 4
    assert [f.smooth for f in a] == [True, True, True, False]
    assert len(faces(cone(OCTANT))) == 8


def test_face_order_is_dimension_then_indices():
    fs = faces(cone(OCTANT))
    keys = [(f.dim, f.indices) for f in fs]
    assert keys == sorted(keys)
    assert fs[0].indices == () and fs[-1].dim == 3


def test_membership_examples():
    q = dual_cone(cone(QUADRANT))
    assert cone_membership(q, (1, 1), INTERIOR)
    d = dual_cone(cone(A1))
    assert not cone_membership(d, (2, -1), INTERIOR)
    assert cone_membership(d, (2, -1), BOUNDARY)
    assert not cone_membership(d, (0, 0), INTERIOR)
    assert cone_membership(d, (0, 0), BOUNDARY)


def test_membership_rank_mismatch():
    with pytest.raises(DimensionError):
        cone_membership(cone(QUADRANT), (1, 1, 1))


def test_pointed_examples():
    assert is_pointed(cone(QUADRANT))
    assert not is_pointed([(1, 0), (-1, 0)])
    assert is_pointed(cone(A1))


def test_faces_of_non_pointed_cone_rejected():
    with pytest.raises(PointednessError):
        faces(cone([(1, 0), (-1, 0), (0, 1)]))


def test_rank_guard():
    with pytest.raises(RankLimitError):
        cone([tuple(int(i == j) for j in range(9)) for i in range(9)])
    assert cone([tuple(int(i == j) for j in range(9)) for i in range(9)], max_rank=9).rank == 9


def test_lower_dimensional_cone():
    c = cone([(1, 0, 0), (1, 1, 0)])
    assert c.dim == 2 and c.pointed and not c.full_dimensional
    assert [f.indices for f in c.faces()] == [(), (0,), (1,), (0, 1)]
    assert dual_membership(c, (0, 0, 5), INTERIOR) is False
    assert dual_membership(c, (1, 0, -3), BOUNDARY)


def test_involution_on_corpus():
    for rays in CORPUS.values():
        c = cone(rays)
        assert dual_cone(dual_cone(c)).rays == c.rays


def test_hermite_basis_frozen():
    assert hermite_basis([(5, 0), (0, 5), (-2, 1)]) == [(1, 2), (0, 5)]
    assert hermite_basis([(2, 4), (3, 6)]) == [(1, 2)]


def test_det_and_minors():
    assert det([[1, 0], [1, 2]]) == 2
    assert maximal_minor_gcd([(1, 0), (1, 2)]) == 2
    assert maximal_minor_gcd([(1, 0, 0), (0, 1, 0)]) == 1


def test_solve_integer_frozen():
    x0, ker = solve_integer([(1, 2)], [-1], 2)
    assert 1 * x0[0] + 2 * x0[1] == -1
    assert len(ker) == 1 and dot(ker[0], (1, 2)) == 0
    assert solve_integer([(2, 4)], [1], 2) is None


def test_semigroup_points_sample():
    pts = semigroup_points(cone(QUADRANT), 2)
    assert set(pts) == {(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)}


# --- properties -----------------------------------------------------------------------

vec2 = st.tuples(st.integers(-6, 6), st.integers(-6, 6))
vec3 = st.tuples(st.integers(-4, 4), st.integers(-4, 4), st.integers(-4, 4))


def _random_cone(gens):
    gens = [g for g in gens if any(g)]
    assume(len(gens) >= len(gens[0]) if gens else False)
    assume(is_pointed(gens))
    c = cone(gens)
    assume(c.full_dimensional)
    return c


@given(st.lists(st.one_of(vec2), min_size=2, max_size=5))
def test_involution_rank2(gens):
    c = _random_cone(gens)
    assert dual_cone(dual_cone(c)).rays == c.rays


@given(st.lists(vec3, min_size=3, max_size=6))
def test_involution_and_facets_rank3(gens):
    c = _random_cone(gens)
    assert set(c.rays) == brute_extreme_rays(c.rays)
    assert set(dual_cone(c).rays) == brute_facet_normals(c.rays)
    assert dual_cone(dual_cone(c)).rays == c.rays


@given(st.lists(vec3, min_size=3, max_size=6), vec3)
def test_membership_matches_direct_loop(gens, m):
    c = _random_cone(gens)
    direct = all(dot(m, r) >= 0 for r in c.rays)
    assert cone_membership(dual_cone(c), m, BOUNDARY) == direct
    assert dual_membership(c, m, BOUNDARY) == direct


@given(st.lists(vec3, min_size=3, max_size=5))
def test_face_normals_support_exactly(gens):
    c = _random_cone(gens)
    for f in c.faces():
        tight = [w for w in c.facet_normals if all(dot(w, r) == 0 for r in f.rays)]
        on_face = [i for i, r in enumerate(c.rays) if all(dot(w, r) == 0 for w in tight)]
        assert tuple(on_face) == f.indices


@given(st.lists(vec3, min_size=3, max_size=5))
def test_smoothness_matches_unimodular_search(gens):
    c = _random_cone(gens)
    for f in c.faces():
        assert f.smooth == is_unimodular_extendable(list(f.rays))


@given(st.lists(vec3, min_size=1, max_size=4))
def test_primitive_divides(vs):
    for v in vs:
        if not any(v):
            with pytest.raises(ValueError):
                primitive(v)
            continue
        p = primitive(v)
        k = next(a // b for a, b in zip(v, p) if b)
        assert tuple(k * x for x in p) == tuple(v) and k > 0


@given(st.lists(st.lists(st.integers(-5, 5), min_size=3, max_size=3), min_size=3, max_size=3))
def test_det_matches_laplace(rows):
    assert det(rows) == brute_det(rows)


@given(st.lists(vec3, min_size=1, max_size=4), vec3)
def test_solve_integer_solutions(rows, rhs_seed):
    rows = [r for r in rows]
    rhs = [dot(r, rhs_seed) for r in rows]
    sol = solve_integer(rows, rhs, 3)
    assert sol is not None
    x0, ker = sol
    assert [dot(r, x0) for r in rows] == rhs
    for k in ker:
        assert all(dot(r, k) == 0 for r in rows)


def test_semigroup_points_match_box_scan():
    c = cone(A1)
    pts = set(semigroup_points(c, 6))
    box = {
        m for m in itertools.product(range(-10, 11), repeat=2)
        if all(dot(m, r) >= 0 for r in c.rays) and sum(dot(m, r) for r in c.rays) <= 6
    }
    assert pts == box
