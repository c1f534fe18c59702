"""Exact computations with vector fields on affine toric varieties and cyclic quotient surfaces."""

__version__ = "0.1.0"

from .config import DEFAULT, Config
from .errors import ToricError
from .lattice import RationalCone, cone, dual_cone, faces, is_pointed
from .fields import HomogeneousField, bracket, classify, iterate_apply, vanishes_on_orbit_closure
from .laurent import LaurentPolynomial, LaurentVectorField, bracket_oracle
from .adp import (
    AdpCertificate,
    build_certificate,
    decide_adp,
    enumerate_roots,
    find_root_for_face,
    invariant_subvariety,
    verify_certificate,
)
from .surfaces import (
    decide_lie_membership,
    lie_closure,
    predicted_structure,
    surface_cone,
    surface_profile,
)
from .templates import validate_complete_template

__all__ = [
    "AdpCertificate",
    "Config",
    "DEFAULT",
    "HomogeneousField",
    "LaurentPolynomial",
    "LaurentVectorField",
    "RationalCone",
    "ToricError",
    "bracket",
    "bracket_oracle",
    "build_certificate",
    "classify",
    "cone",
    "decide_adp",
    "decide_lie_membership",
    "dual_cone",
    "enumerate_roots",
    "faces",
    "find_root_for_face",
    "invariant_subvariety",
    "is_pointed",
    "iterate_apply",
    "lie_closure",
    "predicted_structure",
    "surface_cone",
    "surface_profile",
    "validate_complete_template",
    "vanishes_on_orbit_closure",
    "verify_certificate",
]
