"""Buchberger's algorithm and normal forms over graded rings."""

import logging
import random
from dataclasses import dataclass
from typing import List, Literal, Optional, Sequence, Set, Tuple

from sympy.polys.rings import PolyElement

from chernwall._typing import Monomial, assert_unreachable
from chernwall.algebra.poly import AmbientMismatchError, GradedRing, Polynomial

__all__ = [
    "IdealBasis",
    "IncompleteBasisError",
    "ReductionStats",
    "buchberger",
    "is_groebner",
    "is_member",
    "normal_form",
    "reduce_with_stats",
    "s_polynomial",
]

logger = logging.getLogger(__name__)

Selection = Literal["normal", "first", "degree"]
Elimination = Literal["gebauermoeller", "lcm", "none"]
Pair = Tuple[int, int]


class IncompleteBasisError(Exception):
    pass


@dataclass(frozen=True)
class ReductionStats:
    steps: int = 0

    def __add__(self, other: "ReductionStats") -> "ReductionStats":
        return ReductionStats(steps=self.steps + other.steps)


@dataclass(frozen=True)
class IdealBasis:
    """
    Generators of a homogeneous ideal and, once ``buchberger`` has run, its reduced
    Groebner basis (monic, inter-reduced).
    """

    ring: GradedRing
    generators: Tuple[Polynomial, ...]
    basis: Optional[Tuple[Polynomial, ...]] = None

    @property
    def completed(self) -> bool:
        return self.basis is not None

    @property
    def leading_monomials(self) -> Tuple[Monomial, ...]:
        return tuple(g.leading_monomial() for g in self._require_basis())  # type: ignore[misc]

    def _require_basis(self) -> Tuple[Polynomial, ...]:
        if self.basis is None:
            raise IncompleteBasisError("Groebner basis has not been computed")
        return self.basis


def _lm(f: PolyElement) -> Monomial:
    return max(f.itermonoms(), key=f.ring.order)


def _spoly(f: PolyElement, g: PolyElement, lmf: Monomial, lmg: Monomial) -> PolyElement:
    """S-polynomial of monic f and g."""
    R = f.ring
    lcm = R.monomial_lcm(lmf, lmg)
    return f.mul_monom(R.monomial_div(lcm, lmf)) - g.mul_monom(R.monomial_div(lcm, lmg))


def _reduce(
    g: PolyElement,
    F: Sequence[PolyElement],
    lmF: Sequence[Monomial],
    rng: Optional[random.Random] = None,
) -> Tuple[PolyElement, int]:
    """Full reduction of g by F; returns the remainder and the number of reduction steps."""
    R = g.ring
    order = R.order
    div = R.monomial_div
    lcF = [f[m] for f, m in zip(F, lmF)]
    remainder = R.zero
    f = g.copy()
    steps = 0
    while f:
        lm = max(f.itermonoms(), key=order)
        lc = f[lm]
        reducers = [i for i, m in enumerate(lmF) if div(lm, m) is not None]
        if reducers:
            i = reducers[0] if rng is None else rng.choice(reducers)
            f = f - F[i].mul_term((div(lm, lmF[i]), lc / lcF[i]))
            steps += 1
        else:
            remainder[lm] = lc
            del f[lm]
    return remainder, steps


def _select(lmG: Sequence[Monomial], P: Set[Pair], ring: GradedRing, strategy: Selection) -> Pair:
    R = ring.poly_ring

    def key(p: Pair):
        if strategy == "normal":
            return R.order(R.monomial_lcm(lmG[p[0]], lmG[p[1]])), p
        elif strategy == "first":
            return p[1], p[0]
        elif strategy == "degree":
            return ring.degree_of(R.monomial_lcm(lmG[p[0]], lmG[p[1]])), p
        else:
            assert_unreachable(strategy)

    return min(P, key=key)


def _update(
    lmG: List[Monomial], P: Set[Pair], lmf: Monomial, R, strategy: Elimination
) -> Set[Pair]:
    """New pair set when a polynomial with leading monomial lmf joins a basis with leads lmG."""
    lcm = R.monomial_lcm
    mul = R.monomial_mul
    div = R.monomial_div
    n = len(lmG)

    if strategy == "none":
        return P | {(i, n) for i in range(n)}
    elif strategy == "lcm":
        return P | {(i, n) for i in range(n) if lcm(lmG[i], lmf) != mul(lmG[i], lmf)}
    elif strategy == "gebauermoeller":
        kept = {
            p
            for p in P
            if not div(lcm(lmG[p[0]], lmG[p[1]]), lmf)
            or lcm(lmG[p[0]], lmG[p[1]]) == lcm(lmG[p[0]], lmf)
            or lcm(lmG[p[0]], lmG[p[1]]) == lcm(lmG[p[1]], lmf)
        }
        by_lcm: dict = {}
        for i in range(n):
            by_lcm.setdefault(lcm(lmG[i], lmf), []).append(i)
        minimal: List[Monomial] = []
        for L in sorted(by_lcm, key=R.order):
            if all(not div(L, L_) for L_ in minimal):
                minimal.append(L)
        fresh = set()
        for L in minimal:
            # product criterion: coprime leading monomials give no new pair
            if not any(lcm(lmG[i], lmf) == mul(lmG[i], lmf) for i in by_lcm[L]):
                fresh.add((min(by_lcm[L]), n))
        return kept | fresh
    else:
        assert_unreachable(strategy)


def _minimalize(G: List[PolyElement]) -> List[PolyElement]:
    R = G[0].ring
    Gmin: List[PolyElement] = []
    for f in sorted(G, key=lambda h: R.order(_lm(h))):
        if all(not R.monomial_div(_lm(f), _lm(g)) for g in Gmin):
            Gmin.append(f)
    return Gmin


def _interreduce(G: List[PolyElement]) -> List[PolyElement]:
    reduced = []
    for i in range(len(G)):
        others = G[:i] + G[i + 1 :]
        r, _ = _reduce(G[i], others, [_lm(g) for g in others])
        reduced.append(r.monic())
    return sorted(reduced, key=lambda h: h.ring.order(_lm(h)))


def buchberger(
    gens: Sequence[Polynomial],
    *,
    selection: Selection = "normal",
    elimination: Elimination = "gebauermoeller",
) -> IdealBasis:
    """
    Complete ``gens`` to a reduced Groebner basis.

    Parameters
    ----
    gens           Nonzero generators in a common ring.
    selection      S-pair selection strategy; "normal" takes the smallest lcm first, "degree"
                   the lcm of lowest weighted degree.
    elimination    Pair elimination criteria applied when the basis grows.

    Returns
    ----
    An ``IdealBasis`` whose ``basis`` is monic and inter-reduced.
    """
    if not gens:
        raise ValueError("at least one generator is required")
    ring = gens[0].ring
    if any(g.ring != ring for g in gens):
        raise AmbientMismatchError("generators must share a ring")
    if any(g.is_zero for g in gens):
        raise ValueError("generators must be nonzero")

    R = ring.poly_ring
    G: List[PolyElement] = []
    lmG: List[Monomial] = []
    P: Set[Pair] = set()
    for g in gens:
        f = g.element.monic()
        lmf = _lm(f)
        P = _update(lmG, P, lmf, R, elimination)
        G.append(f)
        lmG.append(lmf)

    processed = 0
    while P:
        i, j = _select(lmG, P, ring, selection)
        P.remove((i, j))
        processed += 1
        s = _spoly(G[i], G[j], lmG[i], lmG[j])
        r, _ = _reduce(s, G, lmG)
        if r:
            r = r.monic()
            lmr = _lm(r)
            P = _update(lmG, P, lmr, R, elimination)
            G.append(r)
            lmG.append(lmr)

    basis = _interreduce(_minimalize(G))
    logger.debug(
        "buchberger: %d generators, %d pairs processed, %d basis elements",
        len(gens),
        processed,
        len(basis),
    )
    return IdealBasis(
        ring=ring,
        generators=tuple(gens),
        basis=tuple(ring.wrap(b) for b in basis),
    )


def reduce_with_stats(
    p: Polynomial, ideal: IdealBasis, *, rng: Optional[random.Random] = None
) -> Tuple[Polynomial, ReductionStats]:
    basis = ideal._require_basis()
    if p.ring != ideal.ring:
        raise AmbientMismatchError("polynomial and basis live in different rings")
    F = [b.element for b in basis]
    r, steps = _reduce(p.element, F, ideal.leading_monomials, rng)
    return ideal.ring.wrap(r), ReductionStats(steps=steps)


def normal_form(
    p: Polynomial, ideal: IdealBasis, *, rng: Optional[random.Random] = None
) -> Polynomial:
    """
    Remainder of ``p`` on division by a completed basis. No term of the result is divisible
    by a leading monomial of the basis, and ``p - normal_form(p)`` lies in the ideal.

    ``rng`` randomizes which reducer is used at each step; the result does not depend on it.
    """
    return reduce_with_stats(p, ideal, rng=rng)[0]


def is_member(p: Polynomial, ideal: IdealBasis) -> bool:
    return normal_form(p, ideal).is_zero


def s_polynomial(f: Polynomial, g: Polynomial) -> Polynomial:
    if f.ring != g.ring:
        raise AmbientMismatchError("polynomials must share a ring")
    a, b = f.element.monic(), g.element.monic()
    return f.ring.wrap(_spoly(a, b, _lm(a), _lm(b)))


def is_groebner(ideal: IdealBasis) -> bool:
    """Buchberger's criterion: every S-polynomial of the basis reduces to zero."""
    basis = ideal._require_basis()
    F = [b.element for b in basis]
    lmF = [_lm(f) for f in F]
    for i in range(len(F)):
        for j in range(i + 1, len(F)):
            r, _ = _reduce(_spoly(F[i], F[j], lmF[i], lmF[j]), F, lmF)
            if r:
                return False
    return True
