"""Homogeneous vector fields on an affine toric variety.

A field is a pair (e, p) with e in M and p in N, acting on characters by
chi^m -> <m, p> chi^(m + e).
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import DimensionError, FaceError, NotExtendableError, PointednessError
from .lattice import RationalCone, Face, Vector, add, as_vector, in_span, pairing, primitive, scale, sub

TYPE_I = "TypeI"
TYPE_II = "TypeII"
NOT_EXTENDABLE = "NotExtendable"


@dataclass(frozen=True)
class HomogeneousField:
    e: Vector
    p: Vector

    def __post_init__(self):
        object.__setattr__(self, "e", as_vector(self.e))
        object.__setattr__(self, "p", as_vector(self.p))
        if len(self.e) != len(self.p):
            raise DimensionError(f"degree has rank {len(self.e)}, direction has rank {len(self.p)}")
        if not any(self.p):
            raise ValueError("direction p must be nonzero; the zero field is represented by None")

    @property
    def rank(self) -> int:
        return len(self.e)

    @property
    def euler_pairing(self) -> int:
        return pairing(self.e, self.p)

    def to_json(self):
        return {"e": list(self.e), "p": list(self.p)}

    @classmethod
    def from_json(cls, doc):
        return cls(tuple(doc["e"]), tuple(doc["p"]))


@dataclass(frozen=True)
class ClassificationRecord:
    kind: str
    distinguished_ray: Vector | None
    is_lnd: bool
    is_semisimple: bool
    is_complete: bool
    preserves_haar: bool
    is_root: bool
    reason: str = ""

    def to_json(self):
        return {
            "kind": self.kind,
            "distinguished_ray": list(self.distinguished_ray) if self.distinguished_ray else None,
            "is_lnd": self.is_lnd,
            "is_semisimple": self.is_semisimple,
            "is_complete": self.is_complete,
            "preserves_haar": self.preserves_haar,
            "is_root": self.is_root,
            "reason": self.reason,
        }


class MonomialTerm(NamedTuple):
    coeff: int
    exponent: Vector


def root_ray(sigma: RationalCone, e) -> Vector | None:
    """Distinguished ray of ``e`` if ``e`` is a root of sigma, else None."""
    vals = [pairing(e, r) for r in sigma.rays]
    negative = [i for i, v in enumerate(vals) if v < 0]
    if len(negative) == 1 and vals[negative[0]] == -1:
        return sigma.rays[negative[0]]
    return None


def classify(sigma: RationalCone, f: HomogeneousField) -> ClassificationRecord:
    if not sigma.pointed:
        raise PointednessError("classification needs a pointed cone")
    if f.rank != sigma.rank:
        raise DimensionError(f"field rank {f.rank} vs cone rank {sigma.rank}")
    e, p = f.e, f.p
    ep = pairing(e, p)
    vals = [pairing(e, r) for r in sigma.rays]
    rho = root_ray(sigma, e)
    if all(v >= 0 for v in vals):
        semisimple = not any(e)
        return ClassificationRecord(
            kind=TYPE_I,
            distinguished_ray=None,
            is_lnd=False,
            is_semisimple=semisimple,
            is_complete=ep == 0,
            preserves_haar=ep == 0,
            is_root=False,
        )
    if rho is not None and primitive(p) in (rho, scale(-1, rho)):
        return ClassificationRecord(
            kind=TYPE_II,
            distinguished_ray=rho,
            is_lnd=True,
            is_semisimple=False,
            is_complete=True,
            preserves_haar=ep == 0,
            is_root=True,
        )
    if rho is not None:
        reason = f"degree is a root with distinguished ray {list(rho)}, but p is not a multiple of it"
    else:
        bad = [list(r) for r, v in zip(sigma.rays, vals) if v < 0]
        if len(bad) > 1:
            reason = f"degree pairs negatively with several rays {bad}"
        else:
            reason = f"degree pairs below -1 with ray {bad[0]}"
    return ClassificationRecord(
        kind=NOT_EXTENDABLE,
        distinguished_ray=None,
        is_lnd=False,
        is_semisimple=False,
        is_complete=False,
        preserves_haar=ep == 0,
        is_root=rho is not None,
        reason=reason,
    )


def apply_monomial(f: HomogeneousField, m) -> MonomialTerm:
    m = as_vector(m)
    return MonomialTerm(pairing(m, f.p), add(m, f.e))


def iterate_apply(f: HomogeneousField, m, l: int) -> MonomialTerm:
    """l-th iterate on chi^m: coefficient prod_{k<l} <m + k e, p>, exponent m + l e."""
    if l < 0:
        raise ValueError("iteration count must be nonnegative")
    m = as_vector(m)
    if len(m) != f.rank:
        raise DimensionError(f"rank mismatch: {len(m)} vs {f.rank}")
    coeff = 1
    cur = m
    for _ in range(l):
        coeff *= pairing(cur, f.p)
        cur = add(cur, f.e)
        if coeff == 0:
            break
    return MonomialTerm(coeff, add(m, scale(l, f.e)))


def bracket(f1: HomogeneousField, f2: HomogeneousField) -> HomogeneousField | None:
    """Commutator; None stands for the zero field."""
    if f1.rank != f2.rank:
        raise DimensionError(f"rank mismatch: {f1.rank} vs {f2.rank}")
    p = sub(scale(pairing(f2.e, f1.p), f2.p), scale(pairing(f1.e, f2.p), f1.p))
    if not any(p):
        return None
    return HomogeneousField(add(f1.e, f2.e), p)


def _check_face(sigma: RationalCone, tau: Face):
    for f in sigma.faces():
        if f.indices == tau.indices and f.rays == tau.rays:
            return
    raise FaceError(f"ray subset {list(tau.indices)} is not a face of the cone")


def vanishes_on_orbit_closure(sigma: RationalCone, f: HomogeneousField, tau: Face) -> bool:
    rec = classify(sigma, f)
    if rec.kind == NOT_EXTENDABLE:
        raise NotExtendableError(f"field does not extend to the toric variety: {rec.reason}")
    _check_face(sigma, tau)
    positive = any(pairing(f.e, r) > 0 for r in tau.rays)
    if rec.kind == TYPE_I:
        return positive or in_span(tau.rays, f.p)
    return positive
