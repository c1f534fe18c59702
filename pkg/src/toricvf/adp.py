"""Orbit-cone data, roots, and the ADP decision with checkable certificates.

A T-invariant closed subvariety Y is a set of faces (one per orbit closure
it contains), closed upwards in the face order. X has the ADP relative to Y
exactly when some ray orbit stays outside Y; the certificate records the
ingredients of the constructive direction so a third party can recheck them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from .config import DEFAULT
from .errors import (
    DimensionError,
    FaceError,
    InvalidSubvarietyError,
    NotSmoothError,
    PreconditionError,
    RootSearchError,
    SearchExhaustedError,
    UnsupportedError,
)
from .fields import TYPE_I, TYPE_II, HomogeneousField, bracket, classify, vanishes_on_orbit_closure
from .lattice import (
    BOUNDARY,
    INTERIOR,
    Face,
    RationalCone,
    Vector,
    add,
    as_vector,
    box_points,
    dual_membership,
    pairing,
    rank,
    scale,
    solve_integer,
    sub,
)


@dataclass(frozen=True)
class InvariantSubvariety:
    """Union of orbit closures, stored as the set of ray-index tuples of its faces."""

    faces: frozenset
    inserted_singular: bool = False

    def __contains__(self, face) -> bool:
        key = face.indices if isinstance(face, Face) else tuple(sorted(face))
        return key in self.faces

    def to_json(self):
        return {"faces": [list(f) for f in sorted(self.faces, key=lambda f: (len(f), f))]}


def invariant_subvariety(sigma: RationalCone, faces) -> InvariantSubvariety:
    """Close a face set upwards and add every non-smooth face.

    ``faces`` may hold :class:`Face` objects or ray-index sequences. The zero
    face is refused: its orbit closure is all of X.
    """
    lattice = sigma.faces()
    by_key = {f.indices: f for f in lattice}
    chosen = set()
    for f in faces:
        key = f.indices if isinstance(f, Face) else tuple(sorted(set(f)))
        if key not in by_key:
            raise FaceError(f"ray subset {list(key)} is not a face")
        chosen.add(key)
    if () in chosen:
        raise InvalidSubvarietyError("Y may not contain the open torus orbit (the zero face)")
    closed = {g.indices for g in lattice if any(set(k) <= set(g.indices) for k in chosen)}
    singular = {g.indices for g in lattice if not g.smooth}
    inserted = not singular <= closed
    closed |= {g.indices for g in lattice if any(set(k) <= set(g.indices) for k in singular)}
    return InvariantSubvariety(frozenset(closed), inserted_singular=inserted)


def is_valid_subvariety(sigma: RationalCone, y: InvariantSubvariety) -> bool:
    lattice = sigma.faces()
    keys = {f.indices for f in lattice}
    if not y.faces <= keys or () in y.faces:
        return False
    if any(not f.smooth and f.indices not in y.faces for f in lattice):
        return False
    return all(
        g.indices in y.faces for f in y.faces for g in lattice if set(f) <= set(g.indices)
    )


def all_subvarieties(sigma: RationalCone) -> list[InvariantSubvariety]:
    """Every valid Y: upward-closed face sets containing the non-smooth faces, without {0}."""
    lattice = [f for f in sigma.faces() if f.indices]
    out = []
    seen = set()
    for r in range(len(lattice) + 1):
        for combo in itertools.combinations(lattice, r):
            y = invariant_subvariety(sigma, combo)
            if y.faces not in seen:
                seen.add(y.faces)
                out.append(InvariantSubvariety(y.faces))
    out.sort(key=lambda y: (len(y.faces), sorted(y.faces)))
    return out


def orbit_dimension(sigma: RationalCone, tau: Face) -> int:
    return sigma.rank - tau.dim


def orbit_ideal_contains(sigma: RationalCone, tau: Face, m) -> bool:
    """chi^m lies in the ideal of the orbit closure of tau iff m is not orthogonal to tau."""
    m = as_vector(m)
    if not dual_membership(sigma, m, BOUNDARY):
        raise ValueError(f"{list(m)} is not in the dual cone")
    return any(pairing(m, r) > 0 for r in tau.rays)


def vanishes_by_ideal(sigma: RationalCone, f: HomogeneousField, tau: Face, points) -> bool:
    """Oracle: f(chi^m) lies in I(tau) for every sampled semigroup point m."""
    for m in points:
        c = pairing(m, f.p)
        if c and not orbit_ideal_contains(sigma, tau, add(m, f.e)):
            return False
    return True


def _supporting_normal(sigma: RationalCone, tau: Face) -> Vector:
    """Sum of facet normals containing tau: zero on tau, positive on every other ray."""
    normals = [f for f in sigma.facet_normals if all(pairing(f, r) == 0 for r in tau.rays)]
    w = tuple([0] * sigma.rank)
    for f in normals:
        w = add(w, f)
    return w


def _is_face_root(sigma: RationalCone, tau: Face, k: int, e) -> bool:
    for i, r in zip(tau.indices, tau.rays):
        if pairing(e, r) != (-1 if i == tau.indices[k] else 0):
            return False
    inside = set(tau.indices)
    return all(pairing(e, r) > 0 for i, r in enumerate(sigma.rays) if i not in inside)


def find_root_for_face(
    sigma: RationalCone,
    tau: Face,
    distinguished_index: int = 0,
    *,
    box: int | None = DEFAULT.root_box,
    scan_cap: int = DEFAULT.scan_cap,
) -> Vector:
    """Root pairing -1 with the chosen ray of tau, 0 with its other rays, > 0 elsewhere.

    Solves the equalities on tau over Z, then moves along the supporting
    normal of tau until the strict inequalities hold. The result is then
    replaced by the smallest valid vector (max-norm, then lexicographic) when
    the scan is affordable, so outputs do not depend on solver internals.
    """
    if not tau.indices:
        raise PreconditionError("the zero face has no root")
    if not tau.smooth:
        raise NotSmoothError(f"face {list(tau.indices)} is not smooth")
    if not 0 <= distinguished_index < len(tau.indices):
        raise IndexError("distinguished index out of range for this face")
    n = sigma.rank
    order = [distinguished_index] + [i for i in range(len(tau.rays)) if i != distinguished_index]
    rows = [tau.rays[i] for i in order]
    rhs = [-1] + [0] * (len(rows) - 1)
    found = None
    sol = solve_integer(rows, rhs, n)
    if sol is not None:
        x0, _ = sol
        w = _supporting_normal(sigma, tau)
        inside = set(tau.indices)
        t = 0
        for i, r in enumerate(sigma.rays):
            if i in inside:
                continue
            wr, xr = pairing(w, r), pairing(x0, r)
            if wr <= 0:
                t = None
                break
            t = max(t, (-xr) // wr + 1 if xr <= 0 else 0)
        if t is not None:
            cand = add(x0, scale(t, w))
            if _is_face_root(sigma, tau, distinguished_index, cand):
                found = cand
    radius = max((abs(x) for x in found), default=0) if found is not None else (box or 10 * n)
    if (2 * radius + 1) ** n <= scan_cap:
        for e in box_points(n, radius):
            if _is_face_root(sigma, tau, distinguished_index, e):
                return e
    if found is None:
        raise RootSearchError(f"no root found in the box of radius {radius} for face {list(tau.indices)}")
    return found


def enumerate_roots(sigma: RationalCone, box_bound: int) -> list[tuple[Vector, Vector]]:
    """All roots with max-norm <= box_bound paired with their distinguished rays, sorted by e."""
    if not sigma.full_dimensional:
        raise UnsupportedError("root enumeration needs a full-dimensional cone")
    out = []
    if box_bound <= 0:
        return out
    for e in itertools.product(range(-box_bound, box_bound + 1), repeat=sigma.rank):
        vals = [pairing(e, r) for r in sigma.rays]
        neg = [i for i, v in enumerate(vals) if v < 0]
        if len(neg) == 1 and vals[neg[0]] == -1:
            out.append((tuple(e), sigma.rays[neg[0]]))
    return out


def _check_rank(sigma: RationalCone):
    if sigma.rank < 2:
        raise UnsupportedError("the ADP decision needs dimension at least two")


def decide_adp(sigma: RationalCone, y: InvariantSubvariety) -> bool:
    _check_rank(sigma)
    if not is_valid_subvariety(sigma, y):
        raise InvalidSubvarietyError("Y must be upward closed, contain every non-smooth face, and omit {0}")
    return any((i,) not in y.faces for i in range(len(sigma.rays)))


@dataclass(frozen=True)
class AdpCertificate:
    witness_ray: Vector
    root_e1: Vector
    e3: Vector
    sample_e: Vector
    e4: Vector
    p4: Vector
    bracket_p: Vector
    spanning_degrees: tuple[Vector, ...]
    spanning_directions: tuple[Vector, ...]
    ell: str = "unknown"

    @property
    def e2(self) -> Vector:
        return sub(self.e3, self.root_e1)

    def to_json(self):
        return {
            "witness_ray": list(self.witness_ray),
            "root_e1": list(self.root_e1),
            "e2": list(self.e2),
            "e3": list(self.e3),
            "sample_bracket": {
                "e4": list(self.e4),
                "p4": list(self.p4),
                "field": {"e": list(self.sample_e), "p": list(self.bracket_p)},
            },
            "spanning_degrees": [list(e) for e in self.spanning_degrees],
            "spanning_directions": [list(p) for p in self.spanning_directions],
            "ell": self.ell,
        }

    @classmethod
    def from_json(cls, doc):
        sb = doc["sample_bracket"]
        return cls(
            witness_ray=tuple(doc["witness_ray"]),
            root_e1=tuple(doc["root_e1"]),
            e3=tuple(doc["e3"]),
            sample_e=tuple(sb["field"]["e"]),
            e4=tuple(sb["e4"]),
            p4=tuple(sb["p4"]),
            bracket_p=tuple(sb["field"]["p"]),
            spanning_degrees=tuple(tuple(e) for e in doc["spanning_degrees"]),
            spanning_directions=tuple(tuple(p) for p in doc["spanning_directions"]),
            ell=doc.get("ell", "unknown"),
        )


def _complete_partner(e4: Vector, e1: Vector, radius_cap: int) -> Vector:
    """Smallest p (max-norm, then lexicographic) with <e4, p> = 0 and <e1, p> != 0."""
    n = len(e4)
    # e4_j u_i - e4_i u_j lies in the kernel, so a radius of max|e4| always suffices
    radius = max(1, max(abs(x) for x in e4))
    for p in box_points(n, min(radius, radius_cap)):
        if any(p) and pairing(e4, p) == 0 and pairing(e1, p) != 0:
            return p
    for i, j in itertools.combinations(range(n), 2):
        p = [0] * n
        p[i], p[j] = e4[j], -e4[i]
        if any(p) and pairing(e1, p) != 0:
            return tuple(p)
    raise SearchExhaustedError("no direction p4 with <e4,p4> = 0 and <e1,p4> != 0")


def _kernel(e: Vector) -> list[Vector]:
    sol = solve_integer([e], [0], len(e))
    return sol[1]


def build_certificate(sigma: RationalCone, y: InvariantSubvariety, *, config=DEFAULT) -> AdpCertificate:
    if not decide_adp(sigma, y):
        raise PreconditionError("X minus Y is the open torus, so no certificate exists")
    n = sigma.rank
    k = next(i for i in range(len(sigma.rays)) if (i,) not in y.faces)
    rho1 = sigma.rays[k]
    e1 = find_root_for_face(sigma, sigma.face([k]), 0, box=config.root_box, scan_cap=config.scan_cap)
    e2 = _supporting_normal(sigma, sigma.face([]))
    e3 = add(e1, e2)
    if not dual_membership(sigma, e3, INTERIOR):
        # e1 may drag e1 + e2 onto the boundary; scaling e2 keeps it interior
        t = 1
        while not dual_membership(sigma, add(e1, scale(t, e2)), INTERIOR):
            t += 1
        e2 = scale(t, e2)
        e3 = add(e1, e2)
    sample_e = e3
    e4 = sub(sample_e, e1)
    radius_cap = max(1, int(round(config.scan_cap ** (1.0 / n) / 2)))
    p4 = _complete_partner(e4, e1, radius_cap)
    br = bracket(HomogeneousField(e1, rho1), HomogeneousField(e4, p4))
    degrees, directions = [], []
    for p in _kernel(e3):
        degrees.append(e3)
        directions.append(p)
    lineality = _kernel_rows(sigma)
    for g in list(sigma.facet_normals) + lineality + [scale(-1, v) for v in lineality]:
        if rank([e3, g]) == 2:
            shifted = add(e3, g)
            extra = next((p for p in _kernel(shifted) if pairing(e3, p) != 0), None)
            if extra is not None:
                degrees.append(shifted)
                directions.append(extra)
                break
    if rank(directions) != n:
        raise SearchExhaustedError("could not assemble spanning directions")
    return AdpCertificate(
        witness_ray=rho1,
        root_e1=e1,
        e3=e3,
        sample_e=sample_e,
        e4=e4,
        p4=p4,
        bracket_p=br.p,
        spanning_degrees=tuple(degrees),
        spanning_directions=tuple(directions),
    )


def _kernel_rows(sigma: RationalCone) -> list[Vector]:
    """Basis of the orthogonal complement of the cone's span (the dual's lineality)."""
    if sigma.full_dimensional:
        return []
    return solve_integer(list(sigma.rays), [0] * len(sigma.rays), sigma.rank)[1]


# reason strings reported by verify_certificate
WITNESS_IN_Y = "witness ray lies in Y"
NOT_A_RAY = "witness is not a ray of the cone"
BAD_ROOT = "e1 is not a root with the witness as distinguished ray"
ROOT_NOT_STRICT = "e1 is not strictly positive on the other rays"
ROOT_NOT_VANISHING = "root field does not vanish on Y"
E2_NOT_INTERIOR = "e2 not interior"
E3_NOT_INTERIOR = "e3 not interior"
SAMPLE_OUTSIDE = "sample degree outside e3 + dual cone"
E4_MISMATCH = "e4 is not the sample degree minus e1"
BAD_PAIR = "e4/p4 not a complete pair"
BRACKET_MISMATCH = "bracket field mismatch"
BRACKET_HAAR = "bracket field preserves the Haar form"
SPAN_DEGREE = "spanning degree outside e3 + dual cone"
SPAN_INCOMPLETE = "spanning field is not complete"
NO_SPAN = "spanning directions do not span"
MALFORMED = "malformed certificate"


def verify_certificate(sigma: RationalCone, y: InvariantSubvariety, cert: AdpCertificate):
    """Recheck every certificate claim from scratch. Returns (ok, reasons)."""
    reasons: list[str] = []
    n = sigma.rank
    try:
        vecs = [cert.witness_ray, cert.root_e1, cert.e3, cert.sample_e, cert.e4, cert.p4, cert.bracket_p]
        vecs += list(cert.spanning_degrees) + list(cert.spanning_directions)
        if any(len(v) != n for v in vecs) or len(cert.spanning_degrees) != len(cert.spanning_directions):
            raise DimensionError("rank mismatch")
    except (DimensionError, TypeError):
        return False, [MALFORMED]
    if cert.witness_ray not in sigma.rays:
        return False, [NOT_A_RAY]
    k = sigma.rays.index(cert.witness_ray)
    if (k,) in y.faces:
        reasons.append(WITNESS_IN_Y)
    e1, rho1 = cert.root_e1, cert.witness_ray
    if not any(rho1):
        return False, [MALFORMED]
    rec = classify(sigma, HomogeneousField(e1, rho1))
    if rec.kind != TYPE_II or rec.distinguished_ray != rho1:
        reasons.append(BAD_ROOT)
    else:
        if any(pairing(e1, r) <= 0 for i, r in enumerate(sigma.rays) if i != k):
            reasons.append(ROOT_NOT_STRICT)
        root = HomogeneousField(e1, rho1)
        for f in sigma.faces():
            if f.indices in y.faces and not vanishes_on_orbit_closure(sigma, root, f):
                reasons.append(ROOT_NOT_VANISHING)
                break
    if not dual_membership(sigma, cert.e3, INTERIOR):
        reasons.append(E3_NOT_INTERIOR)
    if not dual_membership(sigma, cert.e2, INTERIOR):
        reasons.append(E2_NOT_INTERIOR)
    if not dual_membership(sigma, sub(cert.sample_e, cert.e3), BOUNDARY):
        reasons.append(SAMPLE_OUTSIDE)
    if cert.e4 != sub(cert.sample_e, e1):
        reasons.append(E4_MISMATCH)
    if pairing(cert.e4, cert.p4) != 0 or pairing(e1, cert.p4) == 0:
        reasons.append(BAD_PAIR)
    else:
        partner = HomogeneousField(cert.e4, cert.p4)
        p_rec = classify(sigma, partner)
        if p_rec.kind != TYPE_I or not p_rec.is_complete:
            reasons.append(BAD_PAIR)
        br = bracket(HomogeneousField(e1, rho1), partner)
        if br is None or br.e != cert.sample_e or br.p != cert.bracket_p:
            reasons.append(BRACKET_MISMATCH)
    if any(cert.bracket_p) and pairing(cert.sample_e, cert.bracket_p) == 0:
        reasons.append(BRACKET_HAAR)
    for e, p in zip(cert.spanning_degrees, cert.spanning_directions):
        if not dual_membership(sigma, sub(e, cert.e3), BOUNDARY):
            reasons.append(SPAN_DEGREE)
            break
        if not any(p) or pairing(e, p) != 0:
            reasons.append(SPAN_INCOMPLETE)
            break
    if rank(list(cert.spanning_directions)) != n:
        reasons.append(NO_SPAN)
    return not reasons, reasons


def haar_violating_field(sigma: RationalCone, ell: int) -> tuple[HomogeneousField, Vector, Vector]:
    """A field chi^(ell m) * d_(m, p) with m interior and <m, p> != 0.

    It lies in I^ell VF(X, X minus T) for I the ideal of X minus T, and does
    not preserve the Haar form. Returns (field, m, p).
    """
    if ell < 0:
        raise ValueError("ell must be nonnegative")
    m = _supporting_normal(sigma, sigma.face([]))
    n = sigma.rank
    p = next(
        tuple(int(i == j) for j in range(n)) for i in range(n) if m[i] != 0
    )
    return HomogeneousField(scale(ell + 1, m), p), m, p
