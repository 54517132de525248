import pytest

from chernwall.stability import dims_table, enumerate_destab_patterns, type_catalog


@pytest.fixture(scope="module")
def sigma_plus():
    return type_catalog("sigma_plus")


@pytest.fixture(scope="module")
def sigma_minus():
    return type_catalog("sigma_minus")


def test_sigma_plus_counts(sigma_plus) -> None:
    assert sigma_plus.counts == {"a": 3, "b": 3, "c": 3}
    assert len(sigma_plus.entries) == 9
    assert sigma_plus.distinct == 7


def test_sigma_plus_types_match_the_patterns(sigma_plus) -> None:
    patterns = sum(len(enumerate_destab_patterns(n, m)) for n, m in [(2, 1), (3, 1), (3, 2)])

    assert sigma_plus.distinct == patterns


def test_sigma_plus_identifications(sigma_plus) -> None:
    assert sigma_plus.entry("I_a^+1").identified_with == "I_c^+2"
    assert sigma_plus.entry("I_c^+2").identified_with == "I_a^+1"
    assert sigma_plus.entry("I_b^+2").identified_with == "I_a^+2"
    assert sigma_plus.entry("I_c^+1").reflection_of == "I_b^+1"
    assert sigma_plus.entry("I_a^+0").identified_with is None


def test_sigma_plus_intersections(sigma_plus) -> None:
    assert sigma_plus.intersection("a", "b") == "I_a^+1=I_c^+2"
    assert sigma_plus.intersection("c", "a") == "I_a^+2=I_b^+2"
    assert sigma_plus.intersection("b", "c") is None


def test_sigma_minus_counts(sigma_minus) -> None:
    assert sigma_minus.counts == {"a": 10, "b": 6, "c": 6}
    assert sigma_minus.distinct == 22
    assert sigma_minus.entry("I_a^-4'").reflection_of == "I_a^-4"
    assert sigma_minus.entry("I_c^-5").reflection_of == "I_b^-5"


def test_unknown_type(sigma_minus) -> None:
    with pytest.raises(KeyError):
        sigma_minus.entry("I_a^-5")


@pytest.mark.parametrize("g", [2, 3, 7, 20])
def test_dimension_identities(g) -> None:
    table = dims_table(g)

    assert table.consistent
    assert table.values["M0"] == 9 * (g - 1) + 1


def test_genus_two_dimensions() -> None:
    assert dims_table(2).values == {
        "ExtFL": 4,
        "G243": 4,
        "G130": 1,
        "A": 5,
        "PWminus_total": 8,
        "M0": 10,
        "ExtLF": 2,
        "B": 5,
        "Ia": 6,
        "Ib": 7,
        "Ic": 7,
    }


def test_genus_below_two() -> None:
    with pytest.raises(ValueError):
        dims_table(1)
