from fractions import Fraction
from typing import Any
from typing import NoReturn as Nothing
from typing import Tuple, Union

from sympy import Rational
from sympy.polys.domains import QQ

__all__ = ["Coefficient", "Monomial", "Scalar", "assert_unreachable", "to_qq"]


Monomial = Tuple[int, ...]

# An element of sympy's QQ domain (python or gmpy backed).
Coefficient = Any

Scalar = Union[int, Rational, Fraction, Coefficient]


def assert_unreachable(value: Nothing) -> Nothing:
    raise AssertionError(f"Unexpectedly reached code with unhandled value: {value}")


def to_qq(value: Scalar) -> Coefficient:
    """Convert an exact scalar (int, sympy Rational, Fraction or QQ element) to a QQ element."""
    # `bool` is a subclass of `int` so this check must come first
    if isinstance(value, bool):
        raise TypeError("Booleans are not polynomial coefficients")
    elif isinstance(value, int):
        return QQ(value)
    elif isinstance(value, Rational):
        return QQ(int(value.p), int(value.q))
    elif hasattr(value, "numerator") and hasattr(value, "denominator"):
        return QQ(int(value.numerator), int(value.denominator))
    else:
        raise TypeError(f"Not an exact rational scalar: {value!r}")
