import random

import pytest

from toricvf.errors import ParameterError
from toricvf.laurent import LaurentPolynomial, LaurentVectorField
from toricvf.surfaces import CVF, LND_U, LND_V, components, j_set
from toricvf.templates import CASES, invariance_failures, univariate, validate_complete_template

from .template_draws import draw

P = LaurentPolynomial


def test_worked_1a():
    r = validate_complete_template(3, 2, "1a", a=1, A=[1, 1], B=[0, 1])
    assert r.accepted
    du, dv = r.field.to_partials()
    assert du == P.monomial((1, 0))
    assert dv == P.monomial((0, 1)) + P.monomial((3, 1)) + P.monomial((2, 0))


def test_worked_3a_accept_and_reject():
    r = validate_complete_template(3, 2, "3a", l=1, m=3, n=1, p=[1], A=[1], a=3)
    assert r.accepted
    assert r.field == LaurentVectorField({(0, 0): (1, -1)}, 2)
    r = validate_complete_template(3, 2, "3a", l=1, m=3, n=1, p=[1], A=[1], a=1)
    assert not r.accepted and "divisibility" in r.reasons[0]


def test_2b_rejects_wrong_modulus():
    r = validate_complete_template(6, 5, "2b", a=1, A=[1])
    assert not r.accepted and r.reasons == ["d is not of the form 4d'"]


def test_worked_2b_in_diagonal_coordinates():
    r = validate_complete_template(4, 3, "2b", a=0, A=[0, 1])
    assert r.accepted and not r.reasons
    assert r.field == LaurentVectorField({(2, 2): (1, -1)}, 2)
    du, dv = r.field.to_partials()
    assert du == P.monomial((3, 2)) and dv == -P.monomial((2, 3))


def test_2b_parts_lie_on_the_diagonal():
    # every homogeneous part is complete and sits at bidegree (2d'k, 2d'k)
    r = validate_complete_template(8, 5, "2b", a=2, A=[1, 0, 3])
    assert r.accepted
    assert r.field == LaurentVectorField({(0, 0): (5, -1), (8, 8): (3, -3)}, 2)
    kinds = {c.bidegree: c.kind for c in components(8, 5, r.field)}
    assert kinds[(8, 8)] == CVF


def test_2b_can_meet_j():
    # the linear coefficient of A produces a complete part at (2d', 2d'), which lies in J
    r = validate_complete_template(4, 3, "2b", a=0, A=[0, 1])
    assert (2, 2) in j_set(4, 3)
    assert [c.bidegree for c in components(4, 3, r.field)] == [(2, 2)]


def test_side_condition_reasons():
    assert validate_complete_template(5, 2, "2a", m=2, n=4).reasons == ["gcd(m, n) is not 1"]
    assert validate_complete_template(5, 2, "2a", m=1, n=1).reasons == ["class of m + e n is not [0]"]
    r = validate_complete_template(5, 2, "3a", l=2, m=4, n=1, p=[0, 1], A=[1])
    assert r.reasons == ["class of l + e is not [0]", "class of m is not [0]", "p is not invariant", "p(0) is zero"]
    r = validate_complete_template(5, 2, "3b", l=3, m=5, n=1, p={0: 1, 5: 1}, A=[1])
    assert "class of 1 + l e is not [0]" in r.reasons and "deg p is not below l" in r.reasons
    assert "missing integer parameter m" in validate_complete_template(5, 2, "3a", l=3, n=1, p=[1]).reasons


def test_unknown_case():
    with pytest.raises(ParameterError):
        validate_complete_template(5, 2, "4c")


def test_polynomial_parameter_forms():
    assert univariate([[0, 1], [3, "2/3"]]) == univariate({0: 1, 3: "2/3"})
    assert univariate([1, 0, 2]) == {0: 1, 2: 2}
    assert univariate(5) == {0: 5}
    with pytest.raises(ParameterError):
        univariate([[-1, 1]])


def test_1a_with_higher_b_is_rejected():
    r = validate_complete_template(5, 2, "1a", a=1, A=[1], B=[0, 0, 1])
    assert not r.accepted and r.reasons == ["d/dv coefficient is not in class [2]"]


def test_3b_frozen():
    r = validate_complete_template(5, 3, "3b", l=3, m=5, n=1, p=[1], A=[1], a=5)
    assert r.accepted and r.field == LaurentVectorField({(0, 0): (-3, 1)}, 2)


def _complete_pieces(d, e, v):
    for c in components(d, e, v):
        if c.kind not in (CVF, LND_U, LND_V) and c.bidegree != (0, 0):
            return False
    return True


@pytest.mark.parametrize("case", CASES)
def test_random_draws_keep_structure(case):
    rng = random.Random(hash(case) & 0xFFFF)
    for _ in range(60):
        d, e, kw = draw(case, rng)
        r = validate_complete_template(d, e, case, **kw)
        if not r.accepted:
            assert r.reasons
            continue
        assert r.field.is_polynomial() and not invariance_failures(d, e, r.field)
        if case in ("1a", "1b", "2a", "2b"):
            assert _complete_pieces(d, e, r.field)
        else:
            J = set(j_set(d, e))
            assert not [c for c in components(d, e, r.field) if c.bidegree in J]
