import pytest

from chernwall.algebra import GradedRing, ParseError, UnknownVariableError, Variable, parse


@pytest.fixture(scope="module")
def ring() -> GradedRing:
    return GradedRing([Variable("x", 2), Variable("y", 2), Variable("a", 4)])


def test_operators_and_precedence(ring) -> None:
    x, y = ring.gen("x"), ring.gen("y")

    assert parse("x + y*2", ring) == x + 2 * y
    assert parse("(x + y)^2", ring) == x**2 + 2 * x * y + y**2
    assert parse("-x^2", ring) == -(x**2)
    assert parse("-(x - y)", ring) == y - x
    assert parse("3/2*x - 1/2*y", ring) == parse("-1/2*y + 3/2*x", ring)


def test_whitespace_is_ignored(ring) -> None:
    assert parse("  x ^ 2 *a  ", ring) == parse("x^2*a", ring)


def test_bindings_expand_in_place(ring) -> None:
    xi = ring.gen("x") + ring.gen("y")

    assert parse("xi^2", ring, {"xi": xi}) == xi**2


def test_binding_from_another_ring_rejected(ring) -> None:
    other = GradedRing([Variable("t", 2)])

    with pytest.raises(ValueError):
        parse("xi", ring, {"xi": other.gen("t")})


@pytest.mark.parametrize("text", ["2x", "x y", "2 3"])
def test_juxtaposition_rejected(ring, text) -> None:
    with pytest.raises(ParseError):
        parse(text, ring)


def test_unknown_variable_reports_position(ring) -> None:
    with pytest.raises(UnknownVariableError) as error:
        parse("x + z", ring)

    assert error.value.position == 4
    assert "at position 4" in str(error.value)


@pytest.mark.parametrize("text", ["x^", "(x", "x +", "1/0", "x^1/2", "x $ y", "", "x^y"])
def test_malformed_input(ring, text) -> None:
    with pytest.raises(ParseError):
        parse(text, ring)
