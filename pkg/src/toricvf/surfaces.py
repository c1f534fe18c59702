"""Invariant vector fields on C^2 under zeta.(u, v) = (zeta u, zeta^e v), i.e. on V_{d,e}.

Graded pieces are indexed by the exponent E of the torus form: a component
u^i v^j (a u d/du + b v d/dv) has E = (i, j) and direction (a, b). The
locally nilpotent lines v^j d/du and u^i d/dv have E = (-1, j) and (i, -1).
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction

from .errors import BoundError, NotInvariantError, NotPolynomialError, ParameterError, ToricError
from .fields import HomogeneousField, bracket
from .lattice import (
    BOUNDARY,
    RationalCone,
    cone,
    cone_membership,
    dual_cone,
    hermite_basis,
    primitive,
    rank,
)
from .laurent import BIDEGREE, LaurentVectorField, decompose, fraction_to_json

VF = "VF"
CVF = "CVF"
LND_U = "LNDu"
LND_V = "LNDv"
NOT_INVARIANT = "NotInvariant"

FULL = "full"
CVF_LINE = "cvf"
OTHER_LINE = "line"
ZERO = "zero"


@dataclass(frozen=True)
class SurfaceParams:
    d: int
    e: int
    e_prime: int


def surface_params(d: int, e: int) -> SurfaceParams:
    if d < 2 or not 0 < e < d:
        raise ParameterError(f"need d >= 2 and 0 < e < d, got d={d}, e={e}", code="OUT_OF_RANGE")
    if math.gcd(d, e) != 1:
        raise ParameterError(f"d={d} and e={e} are not coprime", code="NON_COPRIME")
    return SurfaceParams(d, e, pow(e, -1, d))


def in_I(d: int, e: int, i: int, j: int) -> bool:
    return i >= 0 and j >= 0 and (i + e * j) % d == 0


def j_set(d: int, e: int) -> list[tuple[int, int]]:
    """Nonzero (i, j) with i < e, j < e' and d | i + e j, by enumeration."""
    ep = surface_params(d, e).e_prime
    return [(i, j) for j in range(ep) for i in range(e) if (i, j) != (0, 0) and (i + e * j) % d == 0]


def exempt_bidegree(d: int, e: int):
    """The J point whose full graded piece is reached anyway (only when e != e')."""
    ep = surface_params(d, e).e_prime
    return (e - 1, ep - 1) if e != ep else None


@dataclass(frozen=True)
class SurfaceProfile:
    params: SurfaceParams
    J: tuple[tuple[int, int], ...]
    strong_adp: bool
    codim: int
    ell_bound: int
    e_equals_eprime: bool

    def to_json(self):
        return {
            "d": self.params.d,
            "e": self.params.e,
            "e_prime": self.params.e_prime,
            "J": [list(x) for x in self.J],
            "strong_adp": self.strong_adp,
            "codim": self.codim,
            "ell_bound": self.ell_bound,
        }

    def csv_row(self):
        p = self.params
        return [p.d, p.e, p.e_prime, len(self.J), str(self.strong_adp).lower(), self.codim, self.ell_bound]


CSV_HEADER = ["d", "e", "e_prime", "|J|", "strong_adp", "codim", "ell_bound"]


def surface_profile(d: int, e: int) -> SurfaceProfile:
    params = surface_params(d, e)
    ep = params.e_prime
    J = tuple(j_set(d, e))
    same = e == ep
    codim = len(J) if same else len(J) - 1
    closed_form = (d + 1) % e == 0 and e * e != d + 1
    if closed_form != (codim == 0):
        raise ToricError(
            f"internal inconsistency for (d, e) = ({d}, {e}): closed form {closed_form}, codim {codim}",
            code="INTERNAL_INCONSISTENCY",
        )
    if ((d + 1) % e == 0) != (len(J) <= 1):
        raise ToricError(f"|J| lemma fails for ({d}, {e})", code="INTERNAL_INCONSISTENCY")
    return SurfaceProfile(params, J, closed_form, codim, e + ep - 2, same)


# --- V_{d,e} as an affine toric surface -------------------------------------------------


@dataclass(frozen=True)
class SurfaceCone:
    cone: RationalCone
    basis: tuple[tuple[int, int], tuple[int, int]]  # rows: lattice basis of the invariant exponents

    def to_plane(self, c):
        b = self.basis
        return (c[0] * b[0][0] + c[1] * b[1][0], c[0] * b[0][1] + c[1] * b[1][1])


def surface_cone(d: int, e: int) -> SurfaceCone:
    """Cone of V_{d,e} in coordinates of a basis of {(i, j) : d | i + e j}.

    In that basis the quadrant {i >= 0, j >= 0} is the dual cone, so the rays
    are the two coordinate functionals written in the new basis.
    """
    surface_params(d, e)
    b = hermite_basis([(d, 0), (0, d), (-e, 1)])
    if len(b) != 2:
        raise ToricError("invariant exponent lattice is not of rank 2", code="INTERNAL_INCONSISTENCY")
    rays = [primitive((b[0][0], b[1][0])), primitive((b[0][1], b[1][1]))]
    return SurfaceCone(cone(rays), (tuple(b[0]), tuple(b[1])))


def check_surface_cone(d: int, e: int, degree: int | None = None) -> bool:
    """Compare dual-cone lattice points (mapped to the plane) with invariant monomials up to ``degree``."""
    degree = 2 * d if degree is None else degree
    sc = surface_cone(d, e)
    dual = dual_cone(sc.cone)
    (a, b), (c, dd) = sc.basis
    det = a * dd - b * c
    # plane point (x, y) has basis coordinates (x, y) @ inverse(basis)
    inv = [[Fraction(dd, det), Fraction(-b, det)], [Fraction(-c, det), Fraction(a, det)]]
    radius = math.ceil(degree * max(abs(x) for row in inv for x in row)) + 1
    from_cone = set()
    for c1 in range(-radius, radius + 1):
        for c2 in range(-radius, radius + 1):
            if cone_membership(dual, (c1, c2), BOUNDARY):
                x, y = sc.to_plane((c1, c2))
                if x + y <= degree:
                    from_cone.add((x, y))
    target = {(i, j) for i in range(degree + 1) for j in range(degree + 1 - i) if (i + e * j) % d == 0}
    return from_cone == target


# --- graded components -------------------------------------------------------------------


@dataclass(frozen=True)
class GradedComponent:
    kind: str
    bidegree: tuple[int, int]
    direction: tuple[Fraction, Fraction]
    k: int | None = None

    @property
    def scalar(self) -> Fraction | None:
        """a in a u^i v^j (j u d/du - i v d/dv), or the coefficient of an LND line."""
        i, j = self.bidegree
        if self.kind == CVF:
            return self.direction[0] / j if j else self.direction[1] / -i
        if self.kind == LND_U:
            return self.direction[0]
        if self.kind == LND_V:
            return self.direction[1]
        return None

    def field(self) -> LaurentVectorField:
        return LaurentVectorField({self.bidegree: self.direction}, 2)

    def to_json(self):
        out = {
            "kind": self.kind,
            "bidegree": list(self.bidegree),
            "coefficients": [fraction_to_json(x) for x in self.direction],
        }
        if self.k is not None:
            out["k"] = self.k
        if self.scalar is not None:
            out["a"] = fraction_to_json(self.scalar)
        return out


def lnd_u(d: int, e: int, k: int, a=1) -> GradedComponent:
    """a v^(e' + (k-1) d) d/du, the k-th invariant line in the u direction."""
    ep = surface_params(d, e).e_prime
    return GradedComponent(LND_U, (-1, ep + (k - 1) * d), (Fraction(a), Fraction(0)), k)


def lnd_v(d: int, e: int, k: int, a=1) -> GradedComponent:
    """a u^(e + (k-1) d) d/dv."""
    surface_params(d, e)
    return GradedComponent(LND_V, (e + (k - 1) * d, -1), (Fraction(0), Fraction(a)), k)


def cvf(d: int, e: int, i: int, j: int, a=1) -> GradedComponent:
    if not in_I(d, e, i, j) or (i, j) == (0, 0):
        raise ParameterError(f"({i}, {j}) carries no complete line")
    a = Fraction(a)
    return GradedComponent(CVF, (i, j), (a * j, -a * i))


def _proportional(p, q) -> bool:
    return p[0] * q[1] - p[1] * q[0] == 0


def _component(d: int, e: int, exp, direction) -> GradedComponent:
    i, j = exp
    a, b = direction
    if i < -1 or j < -1 or (i == -1 and (j < 0 or b)) or (j == -1 and (i < 0 or a)):
        raise NotPolynomialError(f"component at {list(exp)} is not polynomial")
    if (i + e * j) % d:
        return GradedComponent(NOT_INVARIANT, (i, j), (a, b))
    ep = pow(e, -1, d)
    if i == -1:
        return GradedComponent(LND_U, (i, j), (a, b), (j - ep) // d + 1)
    if j == -1:
        return GradedComponent(LND_V, (i, j), (a, b), (i - e) // d + 1)
    if (i, j) != (0, 0) and _proportional((a, b), (j, -i)):
        return GradedComponent(CVF, (i, j), (a, b))
    return GradedComponent(VF, (i, j), (a, b))


def classify_component(d: int, e: int, term: LaurentVectorField) -> GradedComponent:
    """Recognise a single homogeneous rank-2 term as VF, CVF, an LND line, or NotInvariant."""
    surface_params(d, e)
    if term.rank != 2:
        raise ParameterError("components live on rank-2 fields")
    if len(term.components) != 1:
        raise ParameterError("expected exactly one homogeneous component")
    ((exp, direction),) = term.components.items()
    return _component(d, e, exp, direction)


def components(d: int, e: int, v: LaurentVectorField) -> list[GradedComponent]:
    surface_params(d, e)
    return [_component(d, e, exp, part.components[exp]) for exp, part in decompose(v, BIDEGREE).items()]


class LemmaViolation(ToricError):
    code = "LEMMA_CLAUSE_FAILED"


def _bracket_pair(c1: GradedComponent, c2: GradedComponent):
    """Homogeneous bracket of two components as (exponent, direction) or None."""
    den = 1
    for x in c1.direction + c2.direction:
        den = den * x.denominator // math.gcd(den, x.denominator)
    p1 = tuple(int(x * den) for x in c1.direction)
    p2 = tuple(int(x * den) for x in c2.direction)
    if not any(p1) or not any(p2):
        return None
    br = bracket(HomogeneousField(c1.bidegree, p1), HomogeneousField(c2.bidegree, p2))
    if br is None:
        return None
    scale = Fraction(1, den * den)
    return br.e, (br.p[0] * scale, br.p[1] * scale)


def bracket_component(d: int, e: int, c1: GradedComponent, c2: GradedComponent) -> list[GradedComponent]:
    """Bracket of two invariant components, classified, with the bracket-lemma clauses enforced."""
    surface_params(d, e)
    for c in (c1, c2):
        if c.kind == NOT_INVARIANT or (c.bidegree[0] + e * c.bidegree[1]) % d:
            raise NotInvariantError(f"component at {list(c.bidegree)} is not invariant for d={d}, e={e}")
    res = _bracket_pair(c1, c2)
    out = [] if res is None else [_component(d, e, *res)]
    _check_clauses(d, e, c1, c2, out)
    _check_clauses(d, e, c2, c1, out)
    return out


def _check_clauses(d, e, c1, c2, out):
    got = out[0] if out else None
    (i, j), (i2, j2) = c1.bidegree, c2.bidegree
    if c1.kind == CVF and c2.kind == CVF:
        if got is not None and (got.kind != CVF or got.bidegree != (i + i2, j + j2)):
            raise LemmaViolation("CVF x CVF left the complete line")
    elif c1.kind == CVF and c2.kind == LND_U and i >= 1:
        target = (i - 1, j + j2)
        if got is None or got.kind != VF or got.bidegree != target:
            raise LemmaViolation(f"CVF x LNDu should give a non-complete element of VF{target}")
    elif c1.kind == CVF and c2.kind == LND_V and j >= 1:
        target = (i + i2, j - 1)
        if got is None or got.kind != VF or got.bidegree != target:
            raise LemmaViolation(f"CVF x LNDv should give a non-complete element of VF{target}")
    elif c1.kind == LND_U and c2.kind == LND_V:
        a_exp, b_exp = j, i2  # v^a d/du and u^b d/dv
        target = (b_exp - 1, a_exp - 1)
        if got is None or got.bidegree != target:
            raise LemmaViolation(f"LNDu x LNDv should land in VF{target}")
        if (got.kind == CVF) != (a_exp == b_exp):
            raise LemmaViolation("completeness of LNDu x LNDv disagrees with the exponent test")


# --- Lie closure -------------------------------------------------------------------------


@dataclass
class ClosureTable:
    d: int
    e: int
    bound: int
    vf: dict = field(default_factory=dict)  # (i, j) -> FULL / CVF_LINE / OTHER_LINE / ZERO
    lnd_u: dict = field(default_factory=dict)  # exponent of v -> dimension
    lnd_v: dict = field(default_factory=dict)  # exponent of u -> dimension

    def __eq__(self, other):
        if not isinstance(other, ClosureTable):
            return NotImplemented
        return (self.vf, self.lnd_u, self.lnd_v) == (other.vf, other.lnd_u, other.lnd_v)

    def differences(self, other) -> list[str]:
        out = []
        for key in sorted(set(self.vf) | set(other.vf)):
            if self.vf.get(key) != other.vf.get(key):
                out.append(f"VF{key}: {self.vf.get(key)} vs {other.vf.get(key)}")
        for name in ("lnd_u", "lnd_v"):
            a, b = getattr(self, name), getattr(other, name)
            for key in sorted(set(a) | set(b)):
                if a.get(key) != b.get(key):
                    out.append(f"{name}[{key}]: {a.get(key)} vs {b.get(key)}")
        return out

    def is_full(self) -> bool:
        return all(s == FULL for s in self.vf.values()) and all(
            v == 1 for v in list(self.lnd_u.values()) + list(self.lnd_v.values())
        )

    def to_json(self):
        return {
            "d": self.d,
            "e": self.e,
            "bound": self.bound,
            "vf": [{"bidegree": list(k), "status": v} for k, v in sorted(self.vf.items())],
            "lnd_u": [{"v_exponent": k, "dim": v} for k, v in sorted(self.lnd_u.items())],
            "lnd_v": [{"u_exponent": k, "dim": v} for k, v in sorted(self.lnd_v.items())],
        }


def _domain(d: int, e: int, bound: int):
    ep = pow(e, -1, d)
    vf = [(i, s - i) for s in range(bound + 1) for i in range(s + 1) if in_I(d, e, i, s - i)]
    us = list(range(ep, bound + 2, d))  # v^j d/du has total degree j - 1
    vs = list(range(e, bound + 2, d))
    return vf, us, vs


def _status(exp, basis) -> str:
    if not basis:
        return ZERO
    if len(basis) >= 2:
        return FULL
    i, j = exp
    if (i, j) != (0, 0) and _proportional(basis[0], (j, -i)):
        return CVF_LINE
    return OTHER_LINE


def lie_closure(d: int, e: int, bound: int) -> ClosureTable:
    """Graded Lie algebra generated by the homogeneous complete invariant fields.

    Generators: the complete line of every (i, j) in I, the whole degree-zero
    piece, and every LND line, all up to total degree ``bound + max(e, e')``.
    Brackets are closed up to that degree (totals only add, so nothing above
    it can feed back) and the table is reported up to ``bound``.
    """
    params = surface_params(d, e)
    ep = params.e_prime
    if bound < e + ep:
        raise BoundError(f"bound {bound} is below e + e' = {e + ep}")
    top = bound + max(e, ep)
    spaces: dict[tuple[int, int], list[tuple[Fraction, Fraction]]] = {}
    pending = []

    def offer(exp, vec):
        if exp[0] + exp[1] > top:
            return
        basis = spaces.setdefault(exp, [])
        if len(basis) == 2 or (basis and _proportional(basis[0], vec)):
            return
        if exp[0] == -1 and vec[1] or exp[1] == -1 and vec[0] or min(exp) < -1:
            raise ToricError(f"closure produced a non-polynomial piece at {exp}", code="INTERNAL_INCONSISTENCY")
        basis.append(vec)
        pending.append(GradedComponent(VF, exp, vec))

    vf_dom, us, vs = _domain(d, e, top)
    for i, j in vf_dom:
        if (i, j) == (0, 0):
            offer((0, 0), (Fraction(1), Fraction(0)))
            offer((0, 0), (Fraction(0), Fraction(1)))
        else:
            offer((i, j), (Fraction(j), Fraction(-i)))
    for j in us:
        offer((-1, j), (Fraction(1), Fraction(0)))
    for i in vs:
        offer((i, -1), (Fraction(0), Fraction(1)))

    done: list[GradedComponent] = []
    while pending:
        x = pending.pop()
        done.append(x)
        for y in done:
            res = _bracket_pair(x, y)
            if res is not None:
                offer(*res)

    table = ClosureTable(d, e, bound)
    vf_dom, us, vs = _domain(d, e, bound)
    for exp in vf_dom:
        table.vf[exp] = _status(exp, spaces.get(exp, []))
    for j in us:
        table.lnd_u[j] = len(spaces.get((-1, j), []))
    for i in vs:
        table.lnd_v[i] = len(spaces.get((i, -1), []))
    return table


def predicted_structure(d: int, e: int, bound: int) -> ClosureTable:
    """Predicted table: complete lines exactly on J, except the exempt point; full elsewhere."""
    surface_params(d, e)
    J = set(j_set(d, e))
    ex = exempt_bidegree(d, e)
    table = ClosureTable(d, e, bound)
    vf_dom, us, vs = _domain(d, e, bound)
    for exp in vf_dom:
        table.vf[exp] = CVF_LINE if exp in J and exp != ex else FULL
    table.lnd_u = {j: 1 for j in us}
    table.lnd_v = {i: 1 for i in vs}
    return table


@dataclass(frozen=True)
class MembershipResult:
    member: bool
    witness: tuple[int, int] | None = None
    components: tuple[GradedComponent, ...] = ()

    def to_json(self):
        return {
            "member": self.member,
            "witness": list(self.witness) if self.witness else None,
            "components": [c.to_json() for c in self.components],
        }


def decide_lie_membership(d: int, e: int, v: LaurentVectorField) -> MembershipResult:
    """Membership in the Lie algebra generated by complete invariant fields."""
    comps = components(d, e, v)
    for c in comps:
        if c.kind == NOT_INVARIANT:
            raise NotInvariantError(f"component at {list(c.bidegree)} is not Z_{d}-invariant")
    J = set(j_set(d, e))
    ex = exempt_bidegree(d, e)
    for c in comps:
        if c.bidegree in J and c.bidegree != ex and c.kind != CVF:
            return MembershipResult(False, c.bidegree, tuple(comps))
    return MembershipResult(True, None, tuple(comps))


# --- empirical ell ---------------------------------------------------------------------


def _orders(d: int, e: int, bound: int) -> dict:
    """Largest number of nonzero invariant exponents summing to each point of I."""
    pts = [(i, s - i) for s in range(bound + 1) for i in range(s + 1) if in_I(d, e, i, s - i)]
    gens = [p for p in pts if p != (0, 0)]
    order = {(0, 0): 0}
    for p in pts[1:]:
        best = 0
        for g in gens:
            q = (p[0] - g[0], p[1] - g[1])
            if q in order:
                best = max(best, order[q] + 1)
        order[p] = best
    return order


def empirical_ell(d: int, e: int, bound: int | None = None, table: ClosureTable | None = None) -> int:
    """Smallest ell with every graded piece of I^ell VF (total degree <= bound) inside the closure.

    I is the invariant maximal ideal at the origin. Exact only within the
    bound; the global minimum is not claimed.
    """
    params = surface_params(d, e)
    if bound is None:
        bound = 2 * (e + params.e_prime)
    if table is None:
        table = lie_closure(d, e, max(bound, e + params.e_prime))
    order = _orders(d, e, bound + 1)
    vf_dom, us, vs = _domain(d, e, bound)
    worst = -1
    for (i, j) in vf_dom:
        status = table.vf[(i, j)]
        if status == FULL:
            continue
        for m, o in order.items():
            rest = (i - m[0], j - m[1])
            if min(rest) < -1:
                continue
            # a full piece, or an axis line, never fits inside a complete line
            # (no point of J lies on an axis), so any such share is a violation
            feeds = (
                in_I(d, e, *rest)
                or (rest[0] == -1 and rest[1] >= 0 and (rest[1] * e - 1) % d == 0)
                or (rest[1] == -1 and rest[0] >= 0 and (rest[0] - e) % d == 0)
            )
            if feeds:
                worst = max(worst, o)
    for j in us:
        if table.lnd_u[j] == 0:
            raise ToricError("closure misses an LND line", code="INTERNAL_INCONSISTENCY")
    for i in vs:
        if table.lnd_v[i] == 0:
            raise ToricError("closure misses an LND line", code="INTERNAL_INCONSISTENCY")
    return worst + 1
