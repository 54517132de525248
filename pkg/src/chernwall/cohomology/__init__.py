"""Cohomology rings of the blow-up tower and the pair model of the second blow-up.

A class on the second blow-up is stored as a pair ``(p, q)`` standing for ``p + j_*(q)``:
``p`` lives in the ring of the first blow-up (generated by ``xi`` over ``a``, ``b``) and ``q``
in the ring of the exceptional divisor (``eta``, ``u``, ``v`` over ``a``, ``b``). Products follow
the projection formula together with ``j^* j_* q = eta * q``.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from pathlib import Path
from typing import Dict, FrozenSet, Optional, Union

from chernwall.algebra.groebner import normal_form
from chernwall.algebra.parser import parse
from chernwall.algebra.poly import (
    AmbientMismatchError,
    GradedRing,
    Polynomial,
    Variable,
    series_inverse,
)
from chernwall.algebra.presentation import (
    RingPresentation,
    bundled_presentation,
    load_presentation,
)

__all__ = [
    "CohomologyRings",
    "DEFAULT_TRUNCATION",
    "DISPLAY_RING",
    "NotAUnitError",
    "PairModel",
    "R2_LIFT",
    "S2Class",
    "load_rings",
    "parse_display",
    "parse_s2class",
]

logger = logging.getLogger(__name__)

DEFAULT_TRUNCATION = 16

RING_NAMES = ("b", "btilde", "s1")

# Pushforward of the lifted blow-up relation: xi^4 + a*xi^2 = j_*(R2_LIFT).
R2_LIFT = "-1/6*(eta^3 + 6*xi*eta^2 + (15*xi^2 + 4*a - 3*u*v)*eta + 15*xi^3 + 9*a*xi)"

# Ring of the displayed classes: J1, J2, J3 stand for j_*(uv), j_*(u^2 v^2), j_*(u^3 v^3).
DISPLAY_RING = GradedRing(
    [
        Variable("xi", 2),
        Variable("eta", 2),
        Variable("a", 4),
        Variable("b", 6),
        Variable("J1", 6),
        Variable("J2", 10),
        Variable("J3", 14),
    ]
)
PUSHFORWARD_POWERS = {"J1": 1, "J2": 2, "J3": 3}


class NotAUnitError(Exception):
    pass


def parse_display(text: str) -> Polynomial:
    return parse(text, DISPLAY_RING)


@dataclass(frozen=True, eq=False)
class CohomologyRings:
    """
    The three presentations used by the pair model.

    Attributes
    ----
    b            Ring of the Chern-root cover, generators u, v.
    btilde       Ring of the exceptional divisor, b extended by eta.
    s1           Ring of the first blow-up stratum, generator xi.
    specialized  Generators set to zero (``{"a", "b"}`` for a fiber).
    """

    b: RingPresentation
    btilde: RingPresentation
    s1: RingPresentation
    specialized: FrozenSet[str] = field(default_factory=frozenset)

    def parse(self, presentation: RingPresentation, text: str) -> Polynomial:
        """Parse in ``presentation``; specialized generators read as zero."""
        bindings: Dict[str, Polynomial] = {n: presentation.ring.zero for n in self.specialized}
        bindings.update(presentation.bindings)
        return parse(text, presentation.ring, bindings)

    def fiber(self) -> "CohomologyRings":
        if self.specialized:
            return self
        values = {"a": 0, "b": 0}
        return CohomologyRings(
            b=self.b.specialize(values, name=f"{self.b.name}_fiber"),
            btilde=self.btilde.specialize(values, name=f"{self.btilde.name}_fiber"),
            s1=self.s1.specialize(values, name=f"{self.s1.name}_fiber"),
            specialized=frozenset(values),
        )


def load_rings(directory: Optional[Union[str, Path]] = None) -> CohomologyRings:
    """Load ``b.ring``, ``btilde.ring`` and ``s1.ring`` from ``directory`` or the bundled copies."""
    if directory is None:
        found = {name: bundled_presentation(name) for name in RING_NAMES}
    else:
        found = {name: load_presentation(Path(directory) / f"{name}.ring") for name in RING_NAMES}
    return CohomologyRings(b=found["b"], btilde=found["btilde"], s1=found["s1"])


@dataclass(frozen=True)
class S2Class:
    """
    ``p + j_*(q)``. The q-part of degree k contributes to total degree k + 2.
    """

    p: Polynomial
    q: Polynomial

    @property
    def is_zero(self) -> bool:
        return self.p.is_zero and self.q.is_zero

    def __add__(self, other: "S2Class") -> "S2Class":
        return S2Class(self.p + other.p, self.q + other.q)

    def __sub__(self, other: "S2Class") -> "S2Class":
        return S2Class(self.p - other.p, self.q - other.q)

    def __neg__(self) -> "S2Class":
        return S2Class(-self.p, -self.q)

    def scale(self, c) -> "S2Class":
        return S2Class(self.p * c, self.q * c)

    def __str__(self) -> str:
        return f"p: {self.p} ; q: {self.q}"


class PairModel:
    def __init__(self, rings: CohomologyRings, *, truncation: int = DEFAULT_TRUNCATION) -> None:
        if truncation < 2 or truncation % 2:
            raise ValueError(f"truncation must be even and at least 2, got {truncation}")
        self._rings = rings
        self._truncation = truncation
        self._s1 = rings.s1
        self._bt = rings.btilde
        self._xi_bt = self._bt.binding("xi")
        self._eta = self._bt.ring.gen("eta")
        self._uv = self._bt.ring.gen("u") * self._bt.ring.gen("v")
        self._alpha = rings.parse(self._s1, "a")
        self._r2 = rings.parse(self._bt, R2_LIFT)
        self._xi_index = self._s1.ring.index("xi")

    @property
    def rings(self) -> CohomologyRings:
        return self._rings

    @property
    def truncation(self) -> int:
        return self._truncation

    @property
    def s1(self) -> RingPresentation:
        return self._s1

    @property
    def btilde(self) -> RingPresentation:
        return self._bt

    @property
    def r2_lift(self) -> Polynomial:
        return self._r2

    @property
    def one(self) -> S2Class:
        return S2Class(self._s1.ring.one, self._bt.ring.zero)

    @property
    def zero(self) -> S2Class:
        return S2Class(self._s1.ring.zero, self._bt.ring.zero)

    def pair(
        self,
        p: Union[Polynomial, str, None] = None,
        q: Union[Polynomial, str, None] = None,
    ) -> S2Class:
        pp = self._s1.ring.zero if p is None else p
        qq = self._bt.ring.zero if q is None else q
        if isinstance(pp, str):
            pp = self._rings.parse(self._s1, pp)
        if isinstance(qq, str):
            qq = self._rings.parse(self._bt, qq)
        if pp.ring != self._s1.ring or qq.ring != self._bt.ring:
            raise AmbientMismatchError("pair parts must live in the s1 and btilde rings")
        return S2Class(pp, qq)

    def nf_p(self, p: Polynomial) -> Polynomial:
        return normal_form(p, self._s1.basis)

    def nf_q(self, q: Polynomial) -> Polynomial:
        return normal_form(q, self._bt.basis)

    def normalize(self, x: S2Class) -> S2Class:
        return S2Class(self.nf_p(x.p), self.nf_q(x.q))

    def truncate(self, x: S2Class, max_degree: Optional[int] = None) -> S2Class:
        d = self._truncation if max_degree is None else max_degree
        q = x.q.truncate(d - 2) if d >= 2 else self._bt.ring.zero
        return S2Class(x.p.truncate(d), q)

    def piece(self, x: S2Class, degree: int) -> S2Class:
        """Homogeneous piece of total degree ``degree``."""
        q = x.q.homogeneous_part(degree - 2) if degree >= 2 else self._bt.ring.zero
        return S2Class(x.p.homogeneous_part(degree), q)

    def is_homogeneous(self, x: S2Class, degree: int) -> bool:
        return x.p.is_homogeneous(degree) and x.q.is_homogeneous(degree - 2)

    def restrict(self, p: Polynomial) -> Polynomial:
        """Pull back along the exceptional divisor: xi goes to u + v, eta stays eta."""
        mapping: Dict[str, Polynomial] = {}
        for v in p.ring.variables:
            if v.name == "xi":
                mapping[v.name] = self._xi_bt
            elif v.name in self._rings.specialized:
                mapping[v.name] = self._bt.ring.zero
            elif v.name in PUSHFORWARD_POWERS:
                raise AmbientMismatchError(f"{v.name} is a pushforward, not a pullback")
        return self.nf_q(p.substitute(mapping, self._bt.ring))

    def mul(self, x: S2Class, y: S2Class) -> S2Class:
        d = self._truncation
        p = self.nf_p((x.p * y.p).truncate(d))
        if d < 2:
            return S2Class(p, self._bt.ring.zero)
        q = self.restrict(x.p.truncate(d - 2)) * y.q
        q = q + self.restrict(y.p.truncate(d - 2)) * x.q
        q = q + self._eta * x.q * y.q
        return S2Class(p, self.nf_q(q.truncate(d - 2)))

    def inverse_unit(self, x: S2Class) -> S2Class:
        """Inverse of ``(1, q)``: ``(1, -q * sum((-eta*q)^k))`` truncated."""
        if x.p != 1:
            raise NotAUnitError(f"p-part of {x} is not 1")
        d = self._truncation - 2
        geometric = series_inverse(1 + self._eta * x.q, d, reduce=self.nf_q)
        return S2Class(self._s1.ring.one, self.nf_q((-x.q * geometric).truncate(d)))

    def inverse(self, x: S2Class) -> S2Class:
        if x.p.constant_term() != 1:
            raise NotAUnitError(f"constant term of {x} is not 1")
        d = self._truncation
        p_inv = series_inverse(x.p, d, reduce=self.nf_p)
        twisted_q = self.nf_q((self.restrict(p_inv) * x.q).truncate(d - 2))
        twisted = S2Class(self._s1.ring.one, twisted_q)
        return self.mul(S2Class(p_inv, self._bt.ring.zero), self.inverse_unit(twisted))

    def dual_flip(self, x: S2Class) -> S2Class:
        """Negate the pieces of total degree 2 mod 4."""
        s1r, btr = self._s1.ring, self._bt.ring
        return S2Class(
            x.p.map_coefficients(lambda m, c: -c if s1r.degree_of(m) % 4 == 2 else c),
            x.q.map_coefficients(lambda m, c: -c if btr.degree_of(m) % 4 == 0 else c),
        )

    def embed(self, display: Polynomial) -> S2Class:
        """
        Evaluate a display polynomial (ring ``DISPLAY_RING``) in the pair model.

        A monomial with s pushforward factors (eta counts as j_*1) becomes
        j_*(restrict(pullback) * eta^(s-1) * product of the pushed classes).
        """
        if display.ring != DISPLAY_RING:
            raise AmbientMismatchError("embed expects a polynomial in DISPLAY_RING")
        s1r = self._s1.ring
        names = DISPLAY_RING.names
        p = s1r.zero
        q = self._bt.ring.zero
        for monom, coeff in display.terms():
            exps = dict(zip(names, monom))
            if any(exps[n] for n in self._rings.specialized):
                continue
            base = s1r.monomial({n: exps[n] for n in s1r.names}, coeff)
            pushed = exps["eta"] + sum(exps[n] for n in PUSHFORWARD_POWERS)
            if pushed == 0:
                p = p + base
                continue
            uv_power = sum(k * exps[n] for n, k in PUSHFORWARD_POWERS.items())
            q = q + self.restrict(base) * self._eta ** (pushed - 1) * self._uv**uv_power
        return S2Class(self.nf_p(p), self.nf_q(q))

    def rehouse(self, x: S2Class) -> S2Class:
        """
        Rewrite xi^4 as -a*xi^2 + j_*(R2_LIFT) until every p-monomial has xi-exponent at most 3.
        """
        i = self._xi_index
        ring = self._s1.ring
        p, q = x.p, x.q
        rewrites = 0
        while True:
            high = p.map_coefficients(lambda m, c: c if m[i] >= 4 else 0)
            if high.is_zero:
                break
            lowered = ring.from_terms(
                {m[:i] + (m[i] - 4,) + m[i + 1 :]: c for m, c in high.terms()}
            )
            p = p - high - self._alpha * ring.gen("xi") ** 2 * lowered
            q = q + self.restrict(lowered) * self._r2
            rewrites += len(high)
        logger.debug("rehouse: %d monomial rewrites", rewrites)
        return S2Class(p, self.nf_q(q))

    def canonical(self, x: S2Class) -> S2Class:
        return self.rehouse(self.normalize(x))

    def equivalent(self, x: S2Class, y: S2Class) -> bool:
        """Sound (not complete) equality test: the rehoused difference vanishes."""
        return self.canonical(x - y).is_zero

    @cached_property
    def _fiber(self) -> "PairModel":
        if self._rings.specialized:
            return self
        return PairModel(self._rings.fiber(), truncation=self._truncation)

    def fiber(self) -> "PairModel":
        """The model over a fiber, where a = b = 0."""
        return self._fiber

    def fiber_polynomial(self, poly: Polynomial) -> Polynomial:
        """Image of an s1 or btilde polynomial in the corresponding fiber ring."""
        fiber = self.fiber()
        if poly.ring == self._s1.ring:
            target = fiber.s1
        elif poly.ring == self._bt.ring:
            target = fiber.btilde
        else:
            raise AmbientMismatchError("only s1 and btilde polynomials restrict to a fiber")
        if target is self._s1 or target is self._bt:
            return poly
        mapping = {n: target.ring.zero for n in fiber.rings.specialized if n in poly.ring}
        return normal_form(poly.substitute(mapping, target.ring), target.basis)

    def fiber_restrict(self, x: S2Class) -> S2Class:
        return S2Class(self.fiber_polynomial(x.p), self.fiber_polynomial(x.q))


def parse_s2class(text: str, model: PairModel) -> S2Class:
    """Parse ``p: <poly> ; q: <poly>``."""
    head, sep, tail = text.partition(";")
    if not sep:
        raise ValueError("expected 'p: <poly> ; q: <poly>'")
    p_label, _, p_text = head.partition(":")
    q_label, _, q_text = tail.partition(":")
    if p_label.strip() != "p" or q_label.strip() != "q":
        raise ValueError("expected 'p: <poly> ; q: <poly>'")
    return model.pair(p_text.strip(), q_text.strip())
