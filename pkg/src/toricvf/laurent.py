"""Brute-force oracle: Laurent polynomials and vector fields with rational coefficients.

A vector field is stored in torus form: a map from an exponent E in M to a
rational direction P in N_Q, meaning the derivation
chi^m -> <m, P> chi^(m + E). Directions at equal exponents add, so this is
a canonical form. The partial-derivative form sum_i f_i d/dx_i converts in
both directions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Mapping, Sequence

from .errors import DimensionError
from .lattice import Vector, add, clear_denominators, first_nonzero_positive, sub


def to_fraction(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x.strip())
    raise TypeError(f"cannot read an exact rational from {x!r}")


def fraction_to_json(x: Fraction):
    x = Fraction(x)
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def _unit(n, i) -> Vector:
    return tuple(int(j == i) for j in range(n))


class LaurentPolynomial:
    __slots__ = ("terms", "rank")

    def __init__(self, terms: Mapping[Sequence[int], object] | None = None, rank: int | None = None):
        clean: dict[Vector, Fraction] = {}
        for exp, c in (terms or {}).items():
            exp = tuple(int(x) for x in exp)
            c = to_fraction(c)
            if c:
                clean[exp] = clean.get(exp, Fraction(0)) + c
                if not clean[exp]:
                    del clean[exp]
        if rank is None:
            if not clean:
                raise DimensionError("rank is required for the zero polynomial")
            rank = len(next(iter(clean)))
        if any(len(exp) != rank for exp in clean):
            raise DimensionError("exponent lengths disagree with the rank")
        self.terms = clean
        self.rank = rank

    @classmethod
    def monomial(cls, exp, coeff=1):
        exp = tuple(exp)
        return cls({exp: coeff}, rank=len(exp))

    @classmethod
    def constant(cls, c, rank):
        return cls({(0,) * rank: c}, rank=rank)

    @classmethod
    def zero(cls, rank):
        return cls({}, rank=rank)

    def _check(self, other):
        if self.rank != other.rank:
            raise DimensionError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other):
        if not isinstance(other, LaurentPolynomial):
            other = LaurentPolynomial.constant(other, self.rank)
        self._check(other)
        out = dict(self.terms)
        for exp, c in other.terms.items():
            out[exp] = out.get(exp, Fraction(0)) + c
        return LaurentPolynomial(out, self.rank)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPolynomial({e: -c for e, c in self.terms.items()}, self.rank)

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPolynomial):
            c = to_fraction(other)
            return LaurentPolynomial({e: c * v for e, v in self.terms.items()}, self.rank)
        self._check(other)
        out: dict[Vector, Fraction] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = add(e1, e2)
                out[e] = out.get(e, Fraction(0)) + c1 * c2
        return LaurentPolynomial(out, self.rank)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            raise ValueError("negative powers are not supported")
        out = LaurentPolynomial.constant(1, self.rank)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, LaurentPolynomial):
            return self.rank == other.rank and self.terms == other.terms
        if isinstance(other, (int, Fraction)):
            return self == LaurentPolynomial.constant(other, self.rank)
        return NotImplemented

    def __hash__(self):
        return hash((self.rank, frozenset(self.terms.items())))

    def __bool__(self):
        return bool(self.terms)

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{c}*x^{list(e)}" for e, c in sorted(self.terms.items()))

    def shift(self, exp):
        """Multiply by the monomial x^exp."""
        return LaurentPolynomial({add(e, exp): c for e, c in self.terms.items()}, self.rank)

    def partial(self, i: int):
        out = {}
        for e, c in self.terms.items():
            if e[i]:
                out[sub(e, _unit(self.rank, i))] = c * e[i]
        return LaurentPolynomial(out, self.rank)

    def is_polynomial(self) -> bool:
        return all(min(e) >= 0 for e in self.terms)

    def total_degree(self) -> int:
        return max((sum(e) for e in self.terms), default=0)

    def to_json(self):
        return [{"coeff": fraction_to_json(c), "exp": list(e)} for e, c in sorted(self.terms.items())]


def compose(coeffs: Mapping[int, Fraction], arg: LaurentPolynomial) -> LaurentPolynomial:
    """Evaluate the univariate polynomial sum_k coeffs[k] t^k at ``arg``."""
    out = LaurentPolynomial.zero(arg.rank)
    if not coeffs:
        return out
    for k in range(max(coeffs), -1, -1):
        out = out * arg + coeffs.get(k, Fraction(0))
    return out


class LaurentVectorField:
    __slots__ = ("components", "rank")

    def __init__(self, components: Mapping[Sequence[int], Sequence] | None = None, rank: int | None = None):
        clean: dict[Vector, tuple[Fraction, ...]] = {}
        for exp, d in (components or {}).items():
            exp = tuple(int(x) for x in exp)
            d = tuple(to_fraction(x) for x in d)
            if len(d) != len(exp):
                raise DimensionError("exponent and direction ranks differ")
            if exp in clean:
                d = tuple(a + b for a, b in zip(clean[exp], d))
            clean[exp] = d
        clean = {e: d for e, d in clean.items() if any(d)}
        if rank is None:
            if not clean:
                raise DimensionError("rank is required for the zero field")
            rank = len(next(iter(clean)))
        if any(len(e) != rank for e in clean):
            raise DimensionError("exponent lengths disagree with the rank")
        self.components = clean
        self.rank = rank

    @classmethod
    def zero(cls, rank):
        return cls({}, rank)

    @classmethod
    def from_terms(cls, terms: Iterable[tuple], rank: int | None = None):
        """Build from (coefficient, exponent, direction) triples."""
        comps: dict[Vector, list[Fraction]] = {}
        for coeff, exp, direction in terms:
            exp = tuple(exp)
            c = to_fraction(coeff)
            cur = comps.setdefault(exp, [Fraction(0)] * len(exp))
            for i, x in enumerate(direction):
                cur[i] += c * x
            rank = len(exp)
        return cls(comps, rank)

    @classmethod
    def homogeneous(cls, e, p, coeff=1):
        c = to_fraction(coeff)
        return cls({tuple(e): tuple(c * x for x in p)}, len(e))

    @classmethod
    def from_partials(cls, coeffs: Sequence[LaurentPolynomial]):
        """sum_i coeffs[i] d/dx_i; the term c x^a d/dx_i becomes exponent a - e_i, direction c e_i."""
        n = len(coeffs)
        comps: dict[Vector, list[Fraction]] = {}
        for i, f in enumerate(coeffs):
            if f.rank != n:
                raise DimensionError("need one coefficient per coordinate")
            for a, c in f.terms.items():
                cur = comps.setdefault(sub(a, _unit(n, i)), [Fraction(0)] * n)
                cur[i] += c
        return cls(comps, n)

    def to_partials(self) -> list[LaurentPolynomial]:
        n = self.rank
        parts = [dict() for _ in range(n)]
        for exp, d in self.components.items():
            for i, c in enumerate(d):
                if c:
                    a = add(exp, _unit(n, i))
                    parts[i][a] = parts[i].get(a, Fraction(0)) + c
        return [LaurentPolynomial(p, n) for p in parts]

    def is_polynomial(self) -> bool:
        return all(f.is_polynomial() for f in self.to_partials())

    def terms(self) -> list[tuple[Fraction, Vector, Vector]]:
        """Canonical (coefficient, exponent, primitive direction) triples, sorted by exponent."""
        out = []
        for exp in sorted(self.components):
            d = self.components[exp]
            prim = first_nonzero_positive(clear_denominators(d))
            k = next(i for i, x in enumerate(prim) if x)
            out.append((d[k] / prim[k], exp, prim))
        return out

    def _check(self, other):
        if self.rank != other.rank:
            raise DimensionError(f"rank mismatch: {self.rank} vs {other.rank}")

    def __add__(self, other):
        self._check(other)
        comps = dict(self.components)
        for e, d in other.components.items():
            comps[e] = tuple(a + b for a, b in zip(comps[e], d)) if e in comps else d
        return LaurentVectorField(comps, self.rank)

    def __neg__(self):
        return LaurentVectorField({e: tuple(-x for x in d) for e, d in self.components.items()}, self.rank)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, c):
        c = to_fraction(c)
        return LaurentVectorField({e: tuple(c * x for x in d) for e, d in self.components.items()}, self.rank)

    __rmul__ = __mul__

    def __eq__(self, other):
        if not isinstance(other, LaurentVectorField):
            return NotImplemented
        return self.rank == other.rank and self.components == other.components

    def __hash__(self):
        return hash((self.rank, frozenset(self.components.items())))

    def __bool__(self):
        return bool(self.components)

    def __repr__(self):
        if not self.components:
            return "LaurentVectorField(0)"
        body = " + ".join(f"{c}*d[{list(e)},{list(p)}]" for c, e, p in self.terms())
        return f"LaurentVectorField({body})"

    def to_json(self):
        return {
            "terms": [
                {"coeff": fraction_to_json(c), "exp": list(e), "dir": list(p)} for c, e, p in self.terms()
            ]
        }

    @classmethod
    def from_json(cls, doc, rank: int | None = None):
        terms = [(t["coeff"], t["exp"], t["dir"]) for t in doc["terms"]]
        if not terms and rank is None:
            rank = doc.get("rank")
        return cls.from_terms(terms, rank)


def derive(v: LaurentVectorField, f: LaurentPolynomial) -> LaurentPolynomial:
    if v.rank != f.rank:
        raise DimensionError(f"rank mismatch: {v.rank} vs {f.rank}")
    out: dict[Vector, Fraction] = {}
    for exp, d in v.components.items():
        for m, c in f.terms.items():
            k = sum(x * y for x, y in zip(m, d))
            if k:
                t = add(m, exp)
                out[t] = out.get(t, Fraction(0)) + c * k
    return LaurentPolynomial(out, f.rank)


def bracket_oracle(v1: LaurentVectorField, v2: LaurentVectorField) -> LaurentVectorField:
    """Commutator computed by composing the derivations on the coordinate characters.

    A derivation of the Laurent ring is determined by its values on x_1..x_n,
    so w(x_i) = v1(v2(x_i)) - v2(v1(x_i)) recovers w completely.
    """
    v1._check(v2)
    n = v1.rank
    comps: dict[Vector, list[Fraction]] = {}
    for i in range(n):
        xi = LaurentPolynomial.monomial(_unit(n, i))
        w = derive(v1, derive(v2, xi)) - derive(v2, derive(v1, xi))
        for a, c in w.terms.items():
            comps.setdefault(sub(a, _unit(n, i)), [Fraction(0)] * n)[i] += c
    return LaurentVectorField(comps, n)


def haar_divergence(v: LaurentVectorField) -> LaurentPolynomial:
    """Divergence against dx_1/x_1 ^ ... ^ dx_n/x_n: sum_i x_i d/dx_i (X_i / x_i)."""
    n = v.rank
    out = LaurentPolynomial.zero(n)
    for i, xi in enumerate(v.to_partials()):
        unit = _unit(n, i)
        out = out + xi.shift(tuple(-x for x in unit)).partial(i).shift(unit)
    return out


BIDEGREE = "bidegree"


@dataclass(frozen=True)
class ZdClass:
    d: int
    e: int


def decompose(v: LaurentVectorField, grading=BIDEGREE) -> dict:
    """Split a field into graded parts.

    ``BIDEGREE`` groups by exponent E (the u^i v^j factor in front of an Euler
    combination a u d/du + b v d/dv); ``ZdClass(d, e)`` groups rank-2 fields by
    the class [E_1 + e E_2] in Z_d, where class 0 is the invariant part.
    """
    if grading == BIDEGREE:
        return {exp: LaurentVectorField({exp: d}, v.rank) for exp, d in sorted(v.components.items())}
    if isinstance(grading, ZdClass):
        if v.rank != 2:
            raise DimensionError("Z_d grading is defined on rank-2 fields")
        parts: dict[int, dict] = {}
        for exp, d in sorted(v.components.items()):
            cls = (exp[0] + grading.e * exp[1]) % grading.d
            parts.setdefault(cls, {})[exp] = d
        return {k: LaurentVectorField(c, 2) for k, c in sorted(parts.items())}
    raise ValueError(f"unknown grading {grading!r}")
