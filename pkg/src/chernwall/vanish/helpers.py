from dataclasses import dataclass
from importlib import resources
from typing import Dict, List, Mapping, Optional, Tuple

from chernwall._typing import Coefficient
from chernwall.algebra.poly import GradedRing, Polynomial, format_coefficient

MAX_DIFF_TERMS = 20

DISPLAY_PACKAGE = "chernwall.vanish"
DISPLAY_DIRECTORY = "displays"


class DisplayError(Exception):
    pass


@dataclass(frozen=True)
class TermDiff:
    """
    A monomial whose coefficients differ between the claimed and the computed expression.

    Attributes
    ----
    part        "p" or "q" for pair-model classes, empty for plain polynomials.
    monomial    The monomial as printed by its ring.
    claimed     Coefficient in the claimed expression.
    computed    Coefficient in the computed expression.
    """

    part: str
    monomial: str
    claimed: str
    computed: str

    def __str__(self) -> str:
        prefix = f"{self.part}: " if self.part else ""
        return f"{prefix}{self.monomial}: claimed {self.claimed}, computed {self.computed}"


def term_diff(
    claimed: Polynomial,
    computed: Polynomial,
    *,
    part: str = "",
    limit: int = MAX_DIFF_TERMS,
) -> List[TermDiff]:
    """Up to ``limit`` differing monomials, in decreasing canonical order."""
    ring = claimed.ring
    difference = claimed - computed
    out: List[TermDiff] = []
    for monom, _ in difference.terms()[:limit]:
        out.append(
            TermDiff(
                part=part,
                monomial=ring.format_monomial(monom),
                claimed=format_coefficient(claimed.coefficient(monom)),
                computed=format_coefficient(computed.coefficient(monom)),
            )
        )
    return out


def scalar_ratio(numerator: Polynomial, denominator: Polynomial) -> Optional[Coefficient]:
    """The rational c with numerator == c * denominator, if there is one."""
    if denominator.is_zero:
        return None
    lead = denominator.leading_monomial()
    c = numerator.coefficient(lead) / denominator.coefficient(lead)  # type: ignore[arg-type]
    if (numerator - denominator * c).is_zero:
        return c
    return None


def evaluate_truncated(
    poly: Polynomial,
    images: Mapping[str, Polynomial],
    target: GradedRing,
    max_degree: int,
) -> Polynomial:
    """
    Substitute (possibly inhomogeneous) images for variables, dropping every product term
    of degree above ``max_degree`` as soon as it appears.
    """
    cache: Dict[Tuple[str, int], Polynomial] = {}

    def power(name: str, e: int) -> Polynomial:
        if e == 0:
            return target.one
        key = (name, e)
        if key not in cache:
            base = images[name] if name in images else target.gen(name)
            cache[key] = (power(name, e - 1) * base).truncate(max_degree)
        return cache[key]

    result = target.zero
    for monom, coeff in poly.terms():
        term = target.constant(coeff)
        for v, e in zip(poly.ring.variables, monom):
            if e:
                term = (term * power(v.name, e)).truncate(max_degree)
        result = result + term
    return result


def read_display(name: str) -> str:
    """Text of a bundled display with comment lines removed and lines joined."""
    resource = resources.files(DISPLAY_PACKAGE) / DISPLAY_DIRECTORY / f"{name}.poly"
    if not resource.is_file():
        raise DisplayError(f"no bundled display named {name!r}")
    return strip_comments(resource.read_text(encoding="utf-8"))


def strip_comments(text: str) -> str:
    lines = (line.split("#", 1)[0].strip() for line in text.splitlines())
    return " ".join(line for line in lines if line)
