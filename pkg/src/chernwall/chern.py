"""Total Chern class calculus for the log cotangent bundle of the second blow-up."""

import logging
from typing import List, Optional, overload

from chernwall.algebra.poly import AmbientMismatchError, Polynomial, series_inverse
from chernwall.algebra.presentation import RingPresentation
from chernwall.cohomology import PairModel, S2Class, parse_display

__all__ = [
    "ChernCalculus",
    "LOG_DIVISORS",
    "OMEGA_S1",
    "RankShapeError",
    "TANGENT_B",
    "TANGENT_S1_ON_B",
]

logger = logging.getLogger(__name__)

# c(T_{S1/S0}) restricted to B, written with xi = u + v.
TANGENT_S1_ON_B = (
    "(1 - xi)^3*((1 - xi)^6 + 6*a*(1 - xi)^4 + 9*a^2*(1 - xi)^2 + 4*a^3 + 27*b^2)"
)
TANGENT_B = "(1 - 3*u + 3*u^2 + a)*(1 - 3*v + 3*v^2 + a)"
OMEGA_S1 = "(1 + xi)^3*((1 + xi)^6 + 6*a*(1 + xi)^4 + 9*a^2*(1 + xi)^2 + 4*a^3 + 27*b^2)"
# (1 - c1(O(D1))) * (1 - c1(O(D2))) for the two boundary divisors.
LOG_DIVISORS = "(1 - eta)*(1 + 3*xi + 2*eta)"

F_RANK = 3


class RankShapeError(Exception):
    pass


class ChernCalculus:
    """
    Total Chern classes over the rings of a ``PairModel``, truncated at its working degree.
    """

    def __init__(self, model: PairModel) -> None:
        self._model = model
        self._rings = model.rings

    @property
    def model(self) -> PairModel:
        return self._model

    @property
    def truncation(self) -> int:
        return self._model.truncation

    def _presentation(self, p: Polynomial) -> RingPresentation:
        for presentation in (self._rings.b, self._rings.btilde, self._rings.s1):
            if presentation.ring == p.ring:
                return presentation
        raise AmbientMismatchError(f"{p.ring!r} is not one of the model rings")

    def nf(self, p: Polynomial) -> Polynomial:
        return self._presentation(p).normal_form(p)

    @overload
    def total_mul(self, x: Polynomial, y: Polynomial) -> Polynomial: ...

    @overload
    def total_mul(self, x: S2Class, y: S2Class) -> S2Class: ...

    def total_mul(self, x, y):
        if isinstance(x, S2Class):
            return self._model.mul(x, y)
        return self.nf((x * y).truncate(self.truncation))

    @overload
    def total_div(self, x: Polynomial, y: Polynomial) -> Polynomial: ...

    @overload
    def total_div(self, x: S2Class, y: S2Class) -> S2Class: ...

    def total_div(self, x, y):
        if isinstance(x, S2Class):
            return self._model.mul(x, self._model.inverse(y))
        inverse = series_inverse(y, self.truncation, reduce=self.nf)
        return self.nf((x * inverse).truncate(self.truncation))

    @overload
    def dual_flip(self, x: Polynomial) -> Polynomial: ...

    @overload
    def dual_flip(self, x: S2Class) -> S2Class: ...

    def dual_flip(self, x):
        """c(E) to c(E^*): negate the pieces of degree 2 mod 4."""
        if isinstance(x, S2Class):
            return self._model.dual_flip(x)
        ring = x.ring
        return x.map_coefficients(lambda m, c: -c if ring.degree_of(m) % 4 == 2 else c)

    def normal_bundle(self) -> Polynomial:
        """c(N_{B/S1}) = c(T_{S1/S0})|_B / c(T_{B/S0}) in the ring of B."""
        b = self._rings.b
        return self.total_div(
            self._rings.parse(b, TANGENT_S1_ON_B), self._rings.parse(b, TANGENT_B)
        )

    def c_f(self, normal: Polynomial) -> Polynomial:
        """c(F) = c(N_{B/S1}) / (1 + eta) in the ring of the exceptional divisor."""
        bt = self._rings.btilde
        lifted = normal.substitute({}, bt.ring)
        return self.total_div(lifted, 1 + bt.ring.gen("eta"))

    def _rank_pieces(self, cf: Polynomial) -> List[Polynomial]:
        if cf.constant_term() != 1:
            raise RankShapeError("c(F) must have constant term 1")
        reduced = self.nf(cf)
        extra = [k for k in reduced.degrees() if k > 2 * F_RANK]
        if extra:
            raise RankShapeError(f"c(F) has nonzero pieces in degrees {extra}; rank 3 expected")
        return [reduced.homogeneous_part(2 * i) for i in range(F_RANK + 1)]

    def prod_minus_eta(self, cf: Polynomial) -> Polynomial:
        """prod(1 + b_i - eta) = sum c_i(F) (1 - eta)^(3 - i)."""
        pieces = self._rank_pieces(cf)
        one_minus_eta = 1 - self._rings.btilde.ring.gen("eta")
        total = cf.ring.zero
        for i, c in enumerate(pieces):
            total = total + c * one_minus_eta ** (F_RANK - i)
        return total

    def grr_excess(self, cf: Polynomial) -> Polynomial:
        """
        (1/eta) (1 - prod (1+b_i)/(1+b_i-eta)), computed as F / (1 - D) with
        D = 1 - prod(1+b_i-eta) and F = (prod(1+b_i-eta) - prod(1+b_i)) / eta.
        """
        pieces = self._rank_pieces(cf)
        product = sum(pieces[1:], pieces[0])
        q = self.prod_minus_eta(cf)
        eta = self._rings.btilde.ring.index("eta")
        difference = q - product
        if any(m[eta] == 0 for m in difference.monomials()):
            raise RankShapeError("prod(1+b_i-eta) - prod(1+b_i) is not divisible by eta")
        f = cf.ring.from_terms(
            {m[:eta] + (m[eta] - 1,) + m[eta + 1 :]: c for m, c in difference.terms()}
        )
        d = self.truncation - 2
        inverse = series_inverse(q, d, reduce=self.nf)
        excess = self.nf((f * inverse).truncate(d))
        logger.debug("grr excess: %d terms through degree %d", len(excess), d)
        return excess

    def pushforward_class(self, excess: Polynomial) -> S2Class:
        """c(j_* F) = 1 - j_*(excess)."""
        return self._model.pair(p=self._model.s1.ring.one, q=-excess)

    def relative_cotangent(self, excess: Polynomial) -> S2Class:
        """c(Omega_{S2/S1}) = dual of 1 / c(j_* F)."""
        return self._model.dual_flip(self._model.inverse(self.pushforward_class(excess)))

    def omega_s1(self) -> Polynomial:
        return self._rings.parse(self._rings.s1, OMEGA_S1)

    def omega_from_relation(self) -> Polynomial:
        """c(Omega_{S1/S0}) as the S1 relation evaluated at 1 + xi."""
        s1 = self._rings.s1
        if len(s1.relations) != 1:
            raise RankShapeError("the S1 ring must have exactly one relation")
        ring = s1.ring
        i = ring.index("xi")
        shifted = 1 + ring.gen("xi")
        total = ring.zero
        for m, c in s1.relations[0].terms():
            rest = ring.from_terms({m[:i] + (0,) + m[i + 1 :]: c})
            total = total + rest * shifted ** m[i]
        return total

    def log_cotangent_total(self, excess: Optional[Polynomial] = None) -> S2Class:
        """
        c(Omega_{S2/S0}(log D)) is c(Omega_{S1/S0}) * c(Omega_{S2/S1}) divided by
        (1 - eta)(1 + 3 xi + 2 eta).

        ``excess`` defaults to the GRR excess of F computed from scratch.
        """
        if excess is None:
            excess = self.grr_excess(self.c_f(self.normal_bundle()))
        model = self._model
        omega = model.pair(p=self.nf(self.omega_s1().truncate(self.truncation)))
        divisors = model.embed(parse_display(LOG_DIVISORS))
        total = model.mul(
            model.mul(omega, model.inverse(divisors)), self.relative_cotangent(excess)
        )
        return total

    def chern_class(self, total: S2Class, i: int) -> S2Class:
        """The degree 2i piece c_i."""
        return self._model.piece(total, 2 * i)
