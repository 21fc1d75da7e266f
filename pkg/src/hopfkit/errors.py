"""Exception hierarchy.

Every failure mode that callers are expected to branch on gets its own
class.  All of them derive from HopfkitError so that CLI code can catch
one type and map it to an exit status.
"""


class HopfkitError(Exception):
    """Base class for all errors raised by this package."""

    #: short machine-readable code used in CLI error reports
    code = "error"


class InvalidSimplex(HopfkitError):
    code = "invalid_simplex"


class DuplicateTetrahedron(HopfkitError):
    code = "duplicate_tetrahedron"


class BadDimension(HopfkitError):
    code = "bad_dimension"


class NotACycle(HopfkitError):
    code = "not_a_cycle"


class NotNullHomologous(HopfkitError):
    code = "not_null_homologous"


class NotClosedOriented(HopfkitError):
    code = "not_closed_oriented"


class InvalidDualCurve(HopfkitError):
    code = "invalid_dual_curve"


class InvalidMap(HopfkitError):
    code = "invalid_map"


class ChainingFailure(HopfkitError):
    code = "chaining_failure"


class InconsistentDegree(HopfkitError):
    code = "inconsistent_degree"


class HopfUndefined(HopfkitError):
    code = "hopf_undefined"


class InconsistencyDetected(HopfkitError):
    code = "inconsistency_detected"


class IntegralityViolation(HopfkitError):
    code = "integrality_violation"


class AmbiguousLinking(HopfkitError):
    code = "ambiguous_linking"


class NonPositiveInput(HopfkitError):
    code = "non_positive_input"


class NonPositiveVolume(HopfkitError):
    code = "non_positive_volume"


class NonPositiveHopfSize(HopfkitError):
    code = "non_positive_hopf_size"


class ZeroDenominator(HopfkitError):
    code = "zero_denominator"


class NotCoprime(HopfkitError):
    code = "not_coprime"


class NotAnosov(HopfkitError):
    code = "not_anosov"


class TooLarge(HopfkitError):
    code = "too_large"


class ConstructionFailure(HopfkitError):
    code = "construction_failure"


class InvalidParams(HopfkitError):
    code = "invalid_params"
