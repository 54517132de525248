import logging
from dataclasses import dataclass
from typing import Dict, Iterator, List, Literal, Optional, Sequence, Tuple, Union

import sympy

from chernwall._typing import assert_unreachable

logger = logging.getLogger(__name__)

__all__ = [
    "Comparison",
    "DestabTriple",
    "Family",
    "Polarization",
    "SheafInvariants",
    "Verdict",
    "WallError",
    "WallSolution",
    "destab_triples",
    "family_label",
    "gpb_slope",
    "lambda_oracle",
    "lambda_set",
    "slope_compare",
    "stability_verdict",
    "to_rational",
]

Comparison = Literal["less", "equal", "greater"]
Family = Literal["sigma_minus", "sigma_plus"]
RationalLike = Union[int, str, sympy.Rational]

MAX_DESTAB_RANK = 3

EPSILON = sympy.Symbol("epsilon", positive=True)


class WallError(Exception):
    pass


def to_rational(value: RationalLike) -> sympy.Rational:
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    result = sympy.Rational(value)
    if not isinstance(result, sympy.Rational):
        raise ValueError(f"{value!r} is not an exact rational")
    return result


@dataclass(frozen=True)
class SheafInvariants:
    """
    Numerical invariants of a sheaf on the expanded curve.

    Attributes
    ----
    r0                  Rank on the main component.
    r_dag               Rank of the image at the marked node.
    chi                 Euler characteristic.
    component_ranks     Rank on each rational component; empty means ``r0`` everywhere.
    """

    r0: int
    r_dag: int
    chi: int
    component_ranks: Tuple[int, ...] = ()

    def __post_init__(self) -> None:
        if self.r0 < 0 or self.r_dag < 0 or any(k < 0 for k in self.component_ranks):
            raise ValueError(f"ranks must be non-negative: {self}")

    def ranks_on(self, components: int) -> Tuple[int, ...]:
        if not self.component_ranks:
            return (self.r0,) * components
        if len(self.component_ranks) != components:
            raise ValueError(
                f"{len(self.component_ranks)} component ranks for a polarization "
                f"with {components} weights"
            )
        return self.component_ranks


@dataclass(frozen=True)
class Polarization:
    """Weights on the rational components, scaled by a formal infinitesimal."""

    d: Tuple[int, ...] = (1,)

    def __post_init__(self) -> None:
        if not self.d or any(w <= 0 for w in self.d):
            raise ValueError(f"polarization weights must be positive, got {self.d}")

    @classmethod
    def uniform(cls, components: int) -> "Polarization":
        return cls(d=(1,) * components)

    @property
    def total(self) -> int:
        return sum(self.d)

    def rank(self, sheaf: SheafInvariants) -> sympy.Expr:
        ranks = sheaf.ranks_on(len(self.d))
        weighted = sum(w * k for w, k in zip(self.d, ranks))
        return sympy.expand((1 - EPSILON * self.total) * sheaf.r0 + EPSILON * weighted)


@dataclass(frozen=True)
class WallSolution:
    alpha: sympy.Rational
    r0: int
    r_dag: int
    chi0: int

    def __str__(self) -> str:
        return f"{self.alpha} (r0={self.r0}, r_dag={self.r_dag}, chi0={self.chi0})"


def _check_coprime(r: int, chi: int) -> None:
    if r < 2:
        raise ValueError(f"rank must be at least 2, got {r}")
    if sympy.gcd(r, chi) != 1:
        raise WallError(f"rank {r} and Euler characteristic {chi} are not coprime")


def _box(r: int) -> Iterator[Tuple[int, int]]:
    for r0 in range(1, r):
        for r_dag in range(max(0, 2 * r0 - r), min(r, 2 * r0) + 1):
            yield r0, r_dag


def lambda_set(r: int, chi: int) -> List[WallSolution]:
    """
    Every critical value alpha in [0, 1) where a subsheaf with invariants in the admissible
    box can have the same alpha-slope as the whole sheaf. One witness is kept per value.
    """
    _check_coprime(r, chi)
    found: Dict[sympy.Rational, WallSolution] = {}
    for r0, r_dag in _box(r):
        denominator = r0 - r_dag
        if denominator == 0:
            continue
        offset = sympy.Rational(r0 * chi, r)
        # alpha = (offset - chi0) / denominator must land in [0, 1)
        if denominator > 0:
            low, high = offset - denominator, offset
            chi0_range = range(int(sympy.floor(low)) + 1, int(sympy.floor(high)) + 1)
        else:
            low, high = offset, offset - denominator
            chi0_range = range(int(sympy.ceiling(low)), int(sympy.ceiling(high)))
        for chi0 in chi0_range:
            alpha = (offset - chi0) / denominator
            if 0 <= alpha < 1 and alpha not in found:
                found[alpha] = WallSolution(alpha=alpha, r0=r0, r_dag=r_dag, chi0=chi0)
    logger.debug("walls for rank %d, chi %d: %s", r, chi, sorted(found))
    return [found[a] for a in sorted(found)]


def lambda_oracle(r: int, chi: int) -> List[sympy.Rational]:
    """Critical values found by scanning every rational a/b in [0, 1) with b <= r^2."""
    _check_coprime(r, chi)
    hits = set()
    for b in range(1, r * r + 1):
        for a in range(b):
            alpha = sympy.Rational(a, b)
            if alpha in hits:
                continue
            for r0, r_dag in _box(r):
                if r0 == r_dag:
                    continue
                chi0 = sympy.Rational(r0 * chi, r) - alpha * (r0 - r_dag)
                if chi0.is_integer:
                    hits.add(alpha)
                    break
    return sorted(hits)


def _sign_at_zero(expr: sympy.Expr) -> int:
    """Sign of a polynomial in epsilon for all sufficiently small positive epsilon."""
    poly = sympy.Poly(expr, EPSILON)
    for coeff in reversed(poly.all_coeffs()):
        if coeff != 0:
            return 1 if coeff > 0 else -1
    return 0


def slope_compare(
    F: SheafInvariants,
    E: SheafInvariants,
    alpha: RationalLike,
    pol: Optional[Polarization] = None,
) -> Comparison:
    a = to_rational(alpha)
    pol = pol or Polarization()
    rank_f, rank_e = pol.rank(F), pol.rank(E)
    sign_f, sign_e = _sign_at_zero(rank_f), _sign_at_zero(rank_e)
    if sign_f == 0 or sign_e == 0:
        raise ValueError("polarized rank vanishes identically")
    numerator = sympy.expand((F.chi - a * F.r_dag) * rank_e - (E.chi - a * E.r_dag) * rank_f)
    sign = _sign_at_zero(numerator) * sign_f * sign_e
    if sign < 0:
        return "less"
    if sign > 0:
        return "greater"
    return "equal"


def gpb_slope(chiF: int, r_plus: int, rank: int, alpha: RationalLike) -> sympy.Rational:
    if rank <= 0:
        raise ValueError(f"rank must be positive, got {rank}")
    a = to_rational(alpha)
    return (chiF + (1 - a) * r_plus) / sympy.Integer(rank)


@dataclass(frozen=True)
class DestabTriple:
    """
    Invariants of a subsheaf that has the same slope as the sheaf on a wall.

    Attributes
    ----
    r0          Rank on the main component.
    r_dag       Rank at the marked node.
    chi         Euler characteristic.
    family      Which flip locus the ambient sheaf lies in.
    """

    r0: int
    r_dag: int
    chi: int
    family: Family

    @property
    def invariants(self) -> Tuple[int, int, int]:
        return (self.r0, self.r_dag, self.chi)

    def __str__(self) -> str:
        return f"({self.r0},{self.r_dag},{self.chi}) -> {family_label(self.family)}"


def family_label(family: Family) -> str:
    if family == "sigma_minus":
        return "Sigma-"
    elif family == "sigma_plus":
        return "Sigma+"
    else:
        assert_unreachable(family)


def destab_triples(r: int, chi: int, wall: RationalLike) -> List[DestabTriple]:
    """
    Integer solutions of chiF/r0 - wall*r_dag/r0 = chi/r - wall inside the admissible box.
    A solution whose slope difference grows past the wall destabilizes sheaves that were
    stable below it.
    """
    if r > MAX_DESTAB_RANK:
        raise ValueError(f"ranks above {MAX_DESTAB_RANK} are not supported, got {r}")
    w = to_rational(wall)
    if w not in {s.alpha for s in lambda_set(r, chi)}:
        raise WallError(f"{w} is not a wall for rank {r}, chi {chi}")

    target = (chi - w * r) / sympy.Integer(r)
    out: List[DestabTriple] = []
    for r0, r_dag in _box(r):
        chiF = r0 * target + w * r_dag
        if not chiF.is_integer:
            continue
        # d/d(alpha) of mu(F) - mu(E)
        growth = 1 - sympy.Rational(r_dag, r0)
        family: Family = "sigma_minus" if growth > 0 else "sigma_plus"
        out.append(DestabTriple(r0=r0, r_dag=r_dag, chi=int(chiF), family=family))
    return out


@dataclass(frozen=True)
class Verdict:
    stable: bool
    destabilizing: Tuple[SheafInvariants, ...] = ()


def stability_verdict(
    E: SheafInvariants,
    subsheaves: Sequence[SheafInvariants],
    alpha: RationalLike,
    pol: Optional[Polarization] = None,
) -> Verdict:
    """Alpha-stability of E against the given proper subsheaves. Walls are rejected."""
    a = to_rational(alpha)
    if not 0 <= a < 1:
        raise ValueError(f"alpha must lie in [0, 1), got {a}")
    if a in {s.alpha for s in lambda_set(E.r0, E.chi)}:
        raise WallError(f"{a} is a wall; strict stability is undefined there")

    bad: List[SheafInvariants] = []
    for F in subsheaves:
        if not 0 < F.r0 < E.r0 or F.r_dag > E.r0:
            raise ValueError(f"{F} is not a proper subsheaf of a rank {E.r0} sheaf")
        verdict = slope_compare(F, E, a, pol)
        if verdict == "equal":
            raise WallError(f"{F} has the slope of {E} at {a}")
        if verdict == "greater":
            bad.append(F)
    return Verdict(stable=not bad, destabilizing=tuple(bad))
