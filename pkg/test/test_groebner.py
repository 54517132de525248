import random
from fractions import Fraction

import pytest

from chernwall.algebra import (
    AmbientMismatchError,
    GradedRing,
    IdealBasis,
    IncompleteBasisError,
    Variable,
    bundled_presentation,
    buchberger,
    is_groebner,
    is_member,
    normal_form,
    parse,
    reduce_with_stats,
)
from chernwall.algebra.groebner import s_polynomial

STRATEGIES = [
    ("normal", "gebauermoeller"),
    ("normal", "lcm"),
    ("normal", "none"),
    ("first", "gebauermoeller"),
    ("degree", "none"),
]


@pytest.fixture(scope="module")
def ring() -> GradedRing:
    return GradedRing([Variable("x", 2), Variable("y", 2)])


@pytest.fixture(scope="module")
def ideal(ring) -> IdealBasis:
    return buchberger([parse("x^2 - y^2", ring), parse("x*y", ring)])


@pytest.fixture(scope="module")
def b_ring():
    return bundled_presentation("b")


def random_b_poly(presentation, rng: random.Random):
    ring = presentation.ring
    terms = {}
    for _ in range(rng.randint(1, 5)):
        monom = tuple(rng.randint(0, 4) for _ in range(ring.ngens))
        terms[monom] = Fraction(rng.randint(-20, 20), rng.randint(1, 3))
    return ring.from_terms(terms)


def test_s_polynomial(ring) -> None:
    s = s_polynomial(parse("x^2 - y^2", ring), parse("x*y", ring))

    assert s == parse("-y^3", ring)


def test_reduced_basis(ideal) -> None:
    assert {str(g) for g in ideal.basis} == {"x*y", "x^2 - y^2", "y^3"}
    assert is_groebner(ideal)


@pytest.mark.parametrize("selection, elimination", STRATEGIES)
def test_strategies_agree(ring, ideal, selection, elimination) -> None:
    other = buchberger(
        [parse("x^2 - y^2", ring), parse("x*y", ring)],
        selection=selection,
        elimination=elimination,
    )

    assert set(other.basis) == set(ideal.basis)


def test_membership(ring, ideal) -> None:
    assert is_member(parse("x^2*y", ring), ideal)
    assert is_member(parse("y^3", ring), ideal)
    assert is_member(parse("x^4", ring), ideal)
    assert not is_member(parse("x^2", ring), ideal)
    assert not is_member(parse("y", ring), ideal)


def test_normal_form_has_no_leading_monomial(ring, ideal) -> None:
    nf = normal_form(parse("x^3 + 2*x^2 + x*y + y^2", ring), ideal)

    assert nf == parse("3*y^2", ring)


def test_reduction_counts_steps(ring, ideal) -> None:
    nf, stats = reduce_with_stats(parse("x^2*y + x", ring), ideal)

    assert nf == ring.gen("x")
    assert stats.steps >= 1


def test_incomplete_basis(ring) -> None:
    raw = IdealBasis(ring=ring, generators=(parse("x*y", ring),))

    assert not raw.completed
    with pytest.raises(IncompleteBasisError):
        normal_form(ring.gen("x"), raw)


def test_generators_are_checked(ring) -> None:
    with pytest.raises(ValueError):
        buchberger([])
    with pytest.raises(ValueError):
        buchberger([ring.zero])
    with pytest.raises(AmbientMismatchError):
        buchberger([ring.gen("x"), GradedRing([Variable("z", 2)]).gen("z")])


def test_bundled_relations_are_already_a_basis(b_ring) -> None:
    assert set(b_ring.basis.basis) == {r for r in b_ring.relations}
    assert is_groebner(b_ring.basis)


def test_normal_form_is_linear_and_confluent(b_ring, seed) -> None:
    rng = random.Random(seed)
    basis = b_ring.basis
    for _ in range(50):
        p, q = random_b_poly(b_ring, rng), random_b_poly(b_ring, rng)
        nf = normal_form(p, basis)

        assert normal_form(p + q, basis) == nf + normal_form(q, basis)
        assert normal_form(nf, basis) == nf
        assert normal_form(p, basis, rng=random.Random(rng.random())) == nf
        assert is_member(p - nf, basis)


@pytest.mark.parametrize("selection", ["normal", "first", "degree"])
def test_strategies_agree_on_a_weighted_ring(b_ring, selection) -> None:
    completed = buchberger(list(b_ring.relations), selection=selection)

    assert set(completed.basis) == set(b_ring.basis.basis)
