"""Graded polynomial rings over QQ with exact coefficients.

Polynomials are immutable wrappers around sympy ``PolyElement`` values living in a
``PolyRing`` whose monomial order is graded by the cohomological weight of each variable.
"""

import re
from dataclasses import dataclass
from typing import Callable, Dict, Iterator, List, Literal, Mapping, Optional, Sequence, Tuple

from sympy import Symbol
from sympy.polys.domains import QQ
from sympy.polys.rings import PolyElement, PolyRing

from chernwall._typing import Coefficient, Monomial, Scalar, assert_unreachable, to_qq

__all__ = [
    "AmbientMismatchError",
    "ArithOp",
    "DegreeMismatchError",
    "GradedRing",
    "OrderKind",
    "Polynomial",
    "Variable",
    "WeightedOrder",
    "arith",
    "format_coefficient",
    "series_inverse",
]


OrderKind = Literal["grevlex", "grlex"]
ArithOp = Literal["add", "sub", "mul"]

_IDENTIFIER = re.compile(r"^[A-Za-z_][A-Za-z0-9_]*$")


class AmbientMismatchError(Exception):
    pass


class DegreeMismatchError(Exception):
    pass


@dataclass(frozen=True)
class Variable:
    """
    A ring generator with its cohomological degree.
    """

    name: str
    degree: int = 2


@dataclass(frozen=True)
class WeightedOrder:
    """
    Monomial order graded by weighted degree, ties broken by (reverse) lexicographic
    comparison along the variable precedence of the ring.

    Instances are hashable callables so sympy accepts them as a ``PolyRing`` order key.
    """

    kind: OrderKind
    weights: Tuple[int, ...]

    def degree(self, monom: Monomial) -> int:
        return sum(e * w for e, w in zip(monom, self.weights))

    def __call__(self, monom: Monomial) -> Tuple[int, Tuple[int, ...]]:
        if self.kind == "grevlex":
            return self.degree(monom), tuple(-e for e in reversed(monom))
        elif self.kind == "grlex":
            return self.degree(monom), tuple(monom)
        else:
            assert_unreachable(self.kind)


class GradedRing:
    def __init__(self, variables: Sequence[Variable], *, order: OrderKind = "grevlex") -> None:
        names = [v.name for v in variables]
        if len(set(names)) != len(names):
            raise ValueError(f"duplicate variable names in {names}")
        for v in variables:
            if not _IDENTIFIER.match(v.name):
                raise ValueError(f"invalid variable name {v.name!r}")
            if v.degree <= 0 or v.degree % 2:
                raise DegreeMismatchError(f"variable {v.name} must have even positive degree")
        if order not in ("grevlex", "grlex"):
            raise ValueError(f"unknown monomial order {order!r}")

        self._variables = tuple(variables)
        self._order = WeightedOrder(order, tuple(v.degree for v in variables))
        self._index = {name: i for i, name in enumerate(names)}
        self._ring = PolyRing([Symbol(name) for name in names], QQ, self._order)

    @property
    def variables(self) -> Tuple[Variable, ...]:
        return self._variables

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(v.name for v in self._variables)

    @property
    def order(self) -> WeightedOrder:
        return self._order

    @property
    def poly_ring(self) -> PolyRing:
        return self._ring

    @property
    def ngens(self) -> int:
        return len(self._variables)

    @property
    def zero(self) -> "Polynomial":
        return Polynomial(self, self._ring.zero)

    @property
    def one(self) -> "Polynomial":
        return Polynomial(self, self._ring.one)

    def __contains__(self, name: object) -> bool:
        return name in self._index

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GradedRing):
            return NotImplemented
        return self._variables == other._variables and self._order == other._order

    def __hash__(self) -> int:
        return hash((self._variables, self._order))

    def __repr__(self) -> str:
        gens = ", ".join(f"{v.name}:{v.degree}" for v in self._variables)
        return f"GradedRing([{gens}], order={self._order.kind})"

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise AmbientMismatchError(f"variable {name!r} is not in {self!r}") from None

    def gen(self, name: str) -> "Polynomial":
        return Polynomial(self, self._ring.gens[self.index(name)])

    def constant(self, value: Scalar) -> "Polynomial":
        return Polynomial(self, self._ring.ground_new(to_qq(value)))

    def monomial(self, exponents: Mapping[str, int], coefficient: Scalar = 1) -> "Polynomial":
        monom = [0] * self.ngens
        for name, e in exponents.items():
            if e < 0:
                raise ValueError("negative exponent")
            monom[self.index(name)] = e
        return self.from_terms({tuple(monom): coefficient})

    def from_terms(self, terms: Mapping[Monomial, Scalar]) -> "Polynomial":
        element = self._ring.zero
        for monom, coeff in terms.items():
            if len(monom) != self.ngens:
                raise AmbientMismatchError(f"monomial {monom} has the wrong number of exponents")
            c = to_qq(coeff)
            if c:
                element[tuple(monom)] = c
        return Polynomial(self, element)

    def wrap(self, element: PolyElement) -> "Polynomial":
        if element.ring != self._ring:
            raise AmbientMismatchError("element belongs to a different sympy ring")
        return Polynomial(self, element)

    def degree_of(self, monom: Monomial) -> int:
        return self._order.degree(monom)

    def format_monomial(self, monom: Monomial) -> str:
        factors = []
        for v, e in zip(self._variables, monom):
            if e == 1:
                factors.append(v.name)
            elif e > 1:
                factors.append(f"{v.name}^{e}")
        return "*".join(factors) if factors else "1"


class Polynomial:
    """
    An exact polynomial in a ``GradedRing``. Values are immutable; arithmetic returns new
    polynomials and refuses operands from a different ring.
    """

    __slots__ = ("_ring", "_element")

    def __init__(self, ring: GradedRing, element: PolyElement) -> None:
        self._ring = ring
        self._element = element

    @property
    def ring(self) -> GradedRing:
        return self._ring

    @property
    def element(self) -> PolyElement:
        return self._element

    def __bool__(self) -> bool:
        return bool(self._element)

    @property
    def is_zero(self) -> bool:
        return not self._element

    def __len__(self) -> int:
        return len(self._element)

    def terms(self) -> List[Tuple[Monomial, Coefficient]]:
        """Terms in decreasing canonical order."""
        order = self._ring.order
        return sorted(self._element.items(), key=lambda t: order(t[0]), reverse=True)

    def monomials(self) -> List[Monomial]:
        return [m for m, _ in self.terms()]

    def coefficient(self, monom: Monomial) -> Coefficient:
        return self._element.get(tuple(monom), QQ.zero)

    def constant_term(self) -> Coefficient:
        return self.coefficient((0,) * self._ring.ngens)

    def leading_monomial(self) -> Optional[Monomial]:
        if not self._element:
            return None
        return max(self._element.keys(), key=self._ring.order)

    def degree(self) -> int:
        """Largest weighted degree of a term; -1 for the zero polynomial."""
        if not self._element:
            return -1
        return max(self._ring.degree_of(m) for m in self._element)

    def degrees(self) -> List[int]:
        return sorted({self._ring.degree_of(m) for m in self._element})

    def is_homogeneous(self, degree: Optional[int] = None) -> bool:
        found = self.degrees()
        if not found:
            return True
        if len(found) > 1:
            return False
        return degree is None or found[0] == degree

    def homogeneous_part(self, degree: int) -> "Polynomial":
        return self._select(lambda m: self._ring.degree_of(m) == degree)

    def truncate(self, max_degree: int) -> "Polynomial":
        if max_degree < 0:
            raise ValueError("truncation degree must be non-negative")
        return self._select(lambda m: self._ring.degree_of(m) <= max_degree)

    def map_coefficients(self, fn: Callable[[Monomial, Coefficient], Coefficient]) -> "Polynomial":
        element = self._ring.poly_ring.zero
        for m, c in self._element.items():
            value = fn(m, c)
            if value:
                element[m] = value
        return Polynomial(self._ring, element)

    def _select(self, keep: Callable[[Monomial], bool]) -> "Polynomial":
        element = self._ring.poly_ring.zero
        for m, c in self._element.items():
            if keep(m):
                element[m] = c
        return Polynomial(self._ring, element)

    def substitute(
        self,
        mapping: Mapping[str, "Polynomial"],
        target: Optional[GradedRing] = None,
    ) -> "Polynomial":
        """
        Homomorphic substitution into ``target`` (defaults to this ring).

        Parameters
        ----
        mapping     Images of source variables. Unmapped variables go to the generator of the
                    same name in ``target``.
        target      Ring receiving the result.

        Returns
        ----
        The image polynomial. Every image must be homogeneous of its source variable's degree.
        """
        target = self._ring if target is None else target
        images: List[PolyElement] = []
        for v in self._ring.variables:
            image = mapping[v.name] if v.name in mapping else target.gen(v.name)
            if image.ring != target:
                raise AmbientMismatchError(f"image of {v.name} is not in the target ring")
            if not image.is_homogeneous(v.degree):
                raise DegreeMismatchError(
                    f"image of {v.name} must be homogeneous of degree {v.degree}: {image}"
                )
            images.append(image.element)

        one = target.poly_ring.one
        powers: List[Dict[int, PolyElement]] = [{0: one, 1: img} for img in images]

        def power(i: int, e: int) -> PolyElement:
            cache = powers[i]
            if e not in cache:
                cache[e] = power(i, e - 1) * images[i]
            return cache[e]

        result = target.poly_ring.zero
        for monom, coeff in self._element.items():
            term = one
            for i, e in enumerate(monom):
                if e:
                    term = term * power(i, e)
            result += term.mul_ground(coeff)
        return Polynomial(target, result)

    def _coerce(self, other: object) -> Optional[PolyElement]:
        if isinstance(other, Polynomial):
            if other._ring != self._ring:
                raise AmbientMismatchError(f"{other._ring!r} differs from {self._ring!r}")
            return other._element
        try:
            return self._ring.poly_ring.ground_new(to_qq(other))  # type: ignore[arg-type]
        except TypeError:
            return None

    def __add__(self, other: object) -> "Polynomial":
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return Polynomial(self._ring, self._element + value)

    __radd__ = __add__

    def __sub__(self, other: object) -> "Polynomial":
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return Polynomial(self._ring, self._element - value)

    def __rsub__(self, other: object) -> "Polynomial":
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return Polynomial(self._ring, value - self._element)

    def __neg__(self) -> "Polynomial":
        return Polynomial(self._ring, -self._element)

    def __mul__(self, other: object) -> "Polynomial":
        value = self._coerce(other)
        if value is None:
            return NotImplemented
        return Polynomial(self._ring, self._element * value)

    __rmul__ = __mul__

    def __pow__(self, exponent: int) -> "Polynomial":
        if not isinstance(exponent, int) or exponent < 0:
            raise ValueError("exponent must be a non-negative integer")
        return Polynomial(self._ring, self._element**exponent)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Polynomial):
            return self._ring == other._ring and self._element == other._element
        try:
            value = to_qq(other)  # type: ignore[arg-type]
        except TypeError:
            return NotImplemented
        return self._element == self._ring.poly_ring.ground_new(value)

    def __hash__(self) -> int:
        return hash((self._ring, frozenset(self._element.items())))

    def __iter__(self) -> Iterator[Tuple[Monomial, Coefficient]]:
        return iter(self.terms())

    def __str__(self) -> str:
        return format_polynomial(self)

    def __repr__(self) -> str:
        return f"Polynomial({format_polynomial(self)!r})"


def format_coefficient(value: Coefficient) -> str:
    c = to_qq(value)
    n, d = int(c.numerator), int(c.denominator)
    return str(n) if d == 1 else f"{n}/{d}"


def format_polynomial(p: Polynomial) -> str:
    """Print in canonical order: ``n`` or ``n/d`` coefficients, ``x^k`` powers, explicit ``*``."""
    if p.is_zero:
        return "0"
    ring = p.ring
    zero_monom = (0,) * ring.ngens
    parts: List[str] = []
    for monom, coeff in p.terms():
        negative = coeff < 0
        magnitude = -coeff if negative else coeff
        if monom == zero_monom:
            body = format_coefficient(magnitude)
        elif magnitude == 1:
            body = ring.format_monomial(monom)
        else:
            body = f"{format_coefficient(magnitude)}*{ring.format_monomial(monom)}"
        if not parts:
            parts.append(f"-{body}" if negative else body)
        else:
            parts.append(f" - {body}" if negative else f" + {body}")
    return "".join(parts)


def arith(p: Polynomial, q: Polynomial, op: ArithOp) -> Polynomial:
    if not isinstance(q, Polynomial) or p.ring != q.ring:
        raise AmbientMismatchError("operands must share a ring")
    if op == "add":
        return p + q
    elif op == "sub":
        return p - q
    elif op == "mul":
        return p * q
    else:
        assert_unreachable(op)


def series_inverse(
    p: Polynomial,
    max_degree: int,
    reduce: Optional[Callable[[Polynomial], Polynomial]] = None,
) -> Polynomial:
    """
    Inverse of a polynomial with constant term 1 as a power series truncated at ``max_degree``.

    ``reduce`` is applied to every partial power (normal form in a quotient ring).
    """
    if p.constant_term() != 1:
        raise ValueError(f"constant term of {p} is not 1")
    step = (1 - p).truncate(max_degree)
    norm = reduce if reduce is not None else (lambda x: x)
    result = p.ring.one
    power = p.ring.one
    while True:
        power = norm((power * step).truncate(max_degree))
        if power.is_zero:
            return norm(result)
        result = result + power
