from chernwall.algebra.groebner import (
    IdealBasis,
    IncompleteBasisError,
    ReductionStats,
    buchberger,
    is_groebner,
    is_member,
    normal_form,
    reduce_with_stats,
)
from chernwall.algebra.parser import ParseError, UnknownVariableError, parse
from chernwall.algebra.poly import (
    AmbientMismatchError,
    DegreeMismatchError,
    GradedRing,
    Polynomial,
    Variable,
    arith,
    series_inverse,
)
from chernwall.algebra.presentation import (
    PresentationError,
    RingPresentation,
    bundled_presentation,
    load_presentation,
    read_presentation,
)

__all__ = [
    "AmbientMismatchError",
    "DegreeMismatchError",
    "GradedRing",
    "IdealBasis",
    "IncompleteBasisError",
    "ParseError",
    "Polynomial",
    "PresentationError",
    "ReductionStats",
    "RingPresentation",
    "UnknownVariableError",
    "Variable",
    "arith",
    "buchberger",
    "bundled_presentation",
    "is_groebner",
    "is_member",
    "load_presentation",
    "normal_form",
    "parse",
    "read_presentation",
    "reduce_with_stats",
    "series_inverse",
]
