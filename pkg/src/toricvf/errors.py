"""Exception hierarchy. Every error carries a stable machine-readable ``code``."""


class ToricError(Exception):
    code = "DOMAIN_ERROR"

    def __init__(self, message, *, code=None):
        super().__init__(message)
        if code is not None:
            self.code = code


class DimensionError(ToricError, ValueError):
    code = "DIMENSION_MISMATCH"


class ConeError(ToricError, ValueError):
    code = "INVALID_CONE"


class PointednessError(ConeError):
    code = "NOT_POINTED"


class RankLimitError(ConeError):
    code = "RANK_LIMIT"


class FaceError(ToricError, ValueError):
    code = "NOT_A_FACE"


class NotExtendableError(ToricError, ValueError):
    code = "NOT_EXTENDABLE"


class NotSmoothError(ToricError, ValueError):
    code = "NOT_SMOOTH"


class RootSearchError(ToricError):
    code = "ROOT_NOT_FOUND"


class SearchExhaustedError(ToricError):
    code = "SEARCH_EXHAUSTED"


class PreconditionError(ToricError):
    code = "PRECONDITION_FAILED"


class UnsupportedError(ToricError):
    code = "UNSUPPORTED"


class InvalidSubvarietyError(ToricError, ValueError):
    code = "INVALID_SUBVARIETY"


class ParameterError(ToricError, ValueError):
    code = "INVALID_PARAMETERS"


class NotInvariantError(ToricError, ValueError):
    code = "NOT_INVARIANT"


class NotPolynomialError(ToricError, ValueError):
    code = "NOT_POLYNOMIAL"


class BoundError(ToricError, ValueError):
    code = "BOUND_TOO_SMALL"
