import pytest
from sympy import Rational

from chernwall.stability import (
    Polarization,
    SheafInvariants,
    WallError,
    destab_triples,
    family_label,
    gpb_slope,
    lambda_oracle,
    lambda_set,
    slope_compare,
    stability_verdict,
    to_rational,
)


@pytest.mark.parametrize(
    "r, chi, expected",
    [
        (3, 4, [Rational(1, 3), Rational(2, 3)]),
        (2, 5, [Rational(1, 2)]),
        (2, 1, [Rational(1, 2)]),
    ],
)
def test_lambda_set(r, chi, expected) -> None:
    assert [w.alpha for w in lambda_set(r, chi)] == expected


@pytest.mark.parametrize("r, chi", [(2, 1), (2, 5), (3, 1), (3, 4), (3, 5), (4, 1), (4, 7), (5, 2)])
def test_lambda_set_agrees_with_the_oracle(r, chi) -> None:
    assert [w.alpha for w in lambda_set(r, chi)] == lambda_oracle(r, chi)


def test_lambda_set_witnesses() -> None:
    r, chi = 3, 4
    for w in lambda_set(r, chi):
        assert 0 <= w.alpha < 1
        assert w.r0 != w.r_dag
        assert w.alpha == (Rational(w.r0 * chi, r) - w.chi0) / (w.r0 - w.r_dag)


def test_non_coprime_invariants() -> None:
    with pytest.raises(WallError):
        lambda_set(3, 6)
    with pytest.raises(ValueError):
        lambda_set(1, 4)


def test_destab_triples_first_wall() -> None:
    triples = destab_triples(3, 4, "1/3")

    assert {t.invariants: t.family for t in triples} == {
        (1, 0, 1): "sigma_minus",
        (2, 3, 3): "sigma_plus",
    }
    assert [str(t) for t in triples] == ["(1,0,1) -> Sigma-", "(2,3,3) -> Sigma+"]


def test_destab_triples_second_wall() -> None:
    triples = destab_triples(3, 4, Rational(2, 3))

    assert {t.invariants: t.family for t in triples} == {
        (1, 2, 2): "sigma_plus",
        (2, 1, 2): "sigma_minus",
    }


def test_destab_triples_off_a_wall() -> None:
    with pytest.raises(WallError):
        destab_triples(3, 4, "1/2")
    with pytest.raises(ValueError):
        destab_triples(4, 1, "1/4")


def test_slope_compare_around_the_wall() -> None:
    F = SheafInvariants(r0=1, r_dag=0, chi=1)
    E = SheafInvariants(r0=3, r_dag=3, chi=4)

    assert slope_compare(F, E, "1/3") == "equal"
    assert slope_compare(F, E, 0) == "less"
    assert slope_compare(F, E, "1/2") == "greater"


def test_slope_compare_uses_component_ranks() -> None:
    pol = Polarization.uniform(2)
    E = SheafInvariants(r0=3, r_dag=3, chi=4)
    F = SheafInvariants(r0=1, r_dag=0, chi=1)
    tilted = SheafInvariants(r0=1, r_dag=0, chi=1, component_ranks=(3, 3))

    assert slope_compare(F, E, "1/3", pol) == "equal"
    assert slope_compare(tilted, E, "1/3", pol) == "less"


def test_slope_compare_rejects_vanishing_rank() -> None:
    F = SheafInvariants(r0=0, r_dag=0, chi=1)
    E = SheafInvariants(r0=3, r_dag=3, chi=4)

    with pytest.raises(ValueError):
        slope_compare(F, E, "1/3")


def test_polarization() -> None:
    assert Polarization().total == 1
    assert Polarization.uniform(3).d == (1, 1, 1)
    with pytest.raises(ValueError):
        Polarization(d=(1, 0))
    with pytest.raises(ValueError):
        SheafInvariants(r0=1, r_dag=0, chi=0, component_ranks=(1,)).ranks_on(2)


@pytest.mark.parametrize("chi_f, r_plus, rank", [(4, 3, 2), (7, 3, 3), (3, 0, 1)])
def test_gpb_slope(chi_f, r_plus, rank) -> None:
    assert gpb_slope(chi_f, r_plus, rank, "1/3") == 3


def test_gpb_slope_needs_positive_rank() -> None:
    with pytest.raises(ValueError):
        gpb_slope(1, 1, 0, 0)


def test_stability_verdict() -> None:
    E = SheafInvariants(r0=3, r_dag=3, chi=4)
    F = SheafInvariants(r0=1, r_dag=0, chi=1)
    G = SheafInvariants(r0=2, r_dag=3, chi=3)

    below = stability_verdict(E, [F, G], "1/4")
    above = stability_verdict(E, [F, G], "1/2")

    assert not below.stable and below.destabilizing == (G,)
    assert not above.stable and above.destabilizing == (F,)
    assert stability_verdict(E, [], "1/2").stable


def test_stability_verdict_on_a_wall() -> None:
    E = SheafInvariants(r0=3, r_dag=3, chi=4)

    with pytest.raises(WallError):
        stability_verdict(E, [], "1/3")
    with pytest.raises(ValueError):
        stability_verdict(E, [], 1)
    with pytest.raises(ValueError):
        stability_verdict(E, [SheafInvariants(r0=3, r_dag=0, chi=1)], "1/2")


def test_rationals() -> None:
    assert to_rational("2/6") == Rational(1, 3)
    assert family_label("sigma_plus") == "Sigma+"
    with pytest.raises(TypeError):
        to_rational(True)
