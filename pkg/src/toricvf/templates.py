"""Normal forms of complete Z_d-invariant vector fields on C^2, built and checked.

Each case builds the candidate field with exact Laurent arithmetic, then
confirms that all divisions cancel and that the d/du and d/dv coefficients
lie in the classes [1] and [e].
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field as dc_field
from fractions import Fraction

from .errors import ParameterError
from .laurent import LaurentPolynomial, LaurentVectorField, compose, fraction_to_json, to_fraction
from .surfaces import surface_params

CASES = ("1a", "1b", "2a", "2b", "3a", "3b")

U = LaurentPolynomial.monomial((1, 0))
V = LaurentPolynomial.monomial((0, 1))


def univariate(value) -> dict[int, Fraction]:
    """Coefficients {k: c} from a dict, sparse [[k, c], ...] pairs, a dense list, or a scalar."""
    if value is None:
        return {}
    if isinstance(value, dict):
        items = [(int(k), v) for k, v in value.items()]
    elif isinstance(value, (list, tuple)):
        if value and all(isinstance(x, (list, tuple)) and len(x) == 2 for x in value):
            items = [(int(k), v) for k, v in value]
        else:
            items = list(enumerate(value))
    else:
        items = [(0, value)]
    out: dict[int, Fraction] = {}
    for k, v in items:
        if k < 0:
            raise ParameterError(f"negative exponent {k} in a polynomial parameter")
        c = to_fraction(v)
        if c:
            out[k] = out.get(k, 0) + c
    return {k: c for k, c in sorted(out.items()) if c}


def poly_to_json(coeffs: dict[int, Fraction]):
    return [[k, fraction_to_json(c)] for k, c in sorted(coeffs.items())]


def _derivative(p: dict[int, Fraction]) -> dict[int, Fraction]:
    return {k - 1: k * c for k, c in p.items() if k}


def _in_var(p: dict[int, Fraction], var: LaurentPolynomial) -> LaurentPolynomial:
    return compose(p, var)


@dataclass
class TemplateResult:
    case: str
    accepted: bool
    field: LaurentVectorField | None = None
    reasons: list[str] = dc_field(default_factory=list)

    def to_json(self):
        out = {"case": self.case, "accepted": self.accepted, "reasons": list(self.reasons)}
        if self.field is not None:
            du, dv = self.field.to_partials()
            out["field"] = self.field.to_json()
            out["du_coefficient"] = du.to_json()
            out["dv_coefficient"] = dv.to_json()
        return out


def _class_ok(poly: LaurentPolynomial, d: int, e: int, target: int) -> bool:
    return all((i + e * j - target) % d == 0 for (i, j) in poly.terms)


def invariance_failures(d: int, e: int, v: LaurentVectorField) -> list[str]:
    du, dv = v.to_partials()
    out = []
    if not _class_ok(du, d, e, 1):
        out.append("d/du coefficient is not in class [1]")
    if not _class_ok(dv, d, e, e):
        out.append(f"d/dv coefficient is not in class [{e % d}]")
    return out


def _finish(case, d, e, du: LaurentPolynomial, dv: LaurentPolynomial) -> TemplateResult:
    v = LaurentVectorField.from_partials([du, dv])
    reasons = []
    if not v.is_polynomial():
        reasons.append("expanded field is not polynomial")
    reasons += invariance_failures(d, e, v)
    return TemplateResult(case, not reasons, v if not reasons else None, reasons)


def _case3_condition(A, p, a, l, m, n) -> LaurentPolynomial:
    """A(x^m (x^l y + p(x))^n) (m p(x) + n x p'(x)) - a p(x), with x = u and y = v."""
    x, y = U, V
    px = _in_var(p, x)
    inner = x ** m * (x ** l * y + px) ** n
    return _in_var(A, inner) * (px * m + x * _in_var(_derivative(p), x) * n) - px * a


def validate_complete_template(d: int, e: int, case: str, *, a=0, A=None, B=None, p=None,
                               m: int | None = None, n: int | None = None,
                               l: int | None = None) -> TemplateResult:
    """Check a normal-form case's side conditions, then build and verify the field."""
    params = surface_params(d, e)
    ep = params.e_prime
    if case not in CASES:
        raise ParameterError(f"unknown template case {case!r}; expected one of {', '.join(CASES)}")
    a = to_fraction(a)
    A, B, p = univariate(A), univariate(B), univariate(p)

    if case == "1a":
        du = U * a
        dv = _in_var(A, U ** d) * V + _in_var(B, U ** e)
        return _finish(case, d, e, du, dv)
    if case == "1b":
        dv = V * a
        du = _in_var(A, V ** d) * U + _in_var(B, V ** ep)
        return _finish(case, d, e, du, dv)

    if case == "2a":
        reasons = _need_ints(m=m, n=n)
        if not reasons:
            if (m + e * n) % d:
                reasons.append("class of m + e n is not [0]")
            if math.gcd(m, n) != 1:
                reasons.append("gcd(m, n) is not 1")
        if reasons:
            return TemplateResult(case, False, None, reasons)
        inner = _in_var(A, U ** m * V ** n)
        return _finish(case, d, e, inner * U * n, V * a - inner * V * m)

    if case == "2b":
        reasons = []
        if d % 4:
            reasons.append("d is not of the form 4d'")
        elif e != d // 2 + 1:
            reasons.append(f"e is not 2d'+1 = {d // 2 + 1}")
        if reasons:
            return TemplateResult(case, False, None, reasons)
        # The normal form lives in coordinates (x, y) that the group swaps, zeta.(x, y) = (zeta y, zeta x).
        # The diagonal coordinates are u = x + y and v = x - y, so substitute x, y and push the field forward.
        dq = d // 4
        half = Fraction(1, 2)
        x, y = (U + V) * half, (U - V) * half
        inner = _in_var(A, (x * x - y * y) ** (2 * dq))
        base = (x + y) * a
        fx, fy = base + inner * y, base + inner * x
        return _finish(case, d, e, fx + fy, fx - fy)

    # cases 3a and 3b share their algebra; 3b is 3a with the roles of u and v swapped
    reasons = _need_ints(l=l, m=m, n=n, positive=True)
    if reasons:
        return TemplateResult(case, False, None, reasons)
    if case == "3a" and (l + e) % d:
        reasons.append("class of l + e is not [0]")
    if case == "3b" and (1 + l * e) % d:
        reasons.append("class of 1 + l e is not [0]")
    if m % d:
        reasons.append("class of m is not [0]")
    if any(k % d for k in p):
        reasons.append("p is not invariant")
    if p and max(p) >= l:
        reasons.append("deg p is not below l")
    if not p.get(0):
        reasons.append("p(0) is zero")
    if reasons:
        return TemplateResult(case, False, None, reasons)
    cond = _case3_condition(A, p, a, l, m, n)
    low = {exp: c for exp, c in cond.terms.items() if exp[0] < l}
    if low:
        rem = LaurentPolynomial(low, 2)
        return TemplateResult(case, False, None, [f"divisibility condition fails: remainder {rem!r} not in x^{l} C[x,y]"])
    x, y = U, V
    px = _in_var(p, x)
    xl = LaurentPolynomial.monomial((-l, 0))
    flow = _in_var(A, x ** m * (x ** l * y + px) ** n)
    tail = (px * m + x * _in_var(_derivative(p), x) * n) * xl
    dx = flow * x * n
    dy = (y + px * xl) * a - flow * (y * (m + n * l) + tail)
    if case == "3a":
        return _finish(case, d, e, dx, dy)
    return _finish(case, d, e, _swap(dy), _swap(dx))


def _swap(poly: LaurentPolynomial) -> LaurentPolynomial:
    return LaurentPolynomial({(j, i): c for (i, j), c in poly.terms.items()}, 2)


def _need_ints(positive=False, **vals) -> list[str]:
    out = []
    for name, val in vals.items():
        if val is None:
            out.append(f"missing integer parameter {name}")
        elif not isinstance(val, int) or val < (1 if positive else 0):
            out.append(f"{name} must be a {'positive' if positive else 'nonnegative'} integer")
    return out
