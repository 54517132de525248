import pytest

from chernwall.stability import (
    PatternError,
    SubsheafPattern,
    Summand,
    candidate_summands,
    enumerate_destab_patterns,
)


def test_summand_lines() -> None:
    assert Summand(2, "left", 2).line() == "*--*--o [2]"
    assert Summand(2, "right", 0).line() == "o--*--* [1]"
    assert Summand(2, "left", 1).line() == "*--o  . [1]"
    assert Summand(2, "full").line() == "*--*--*"
    assert Summand(3, "twisted", 2).line() == "*--*--*--* [2]"


def test_summand_names() -> None:
    assert [s.name for s in candidate_summands(2)] == [
        "O_[0,1)",
        "O_[0,2)",
        "O_(0,2]",
        "O_(1,2]",
        "O_[0,2]",
        "O^[1]_[0,2]",
        "O^[2]_[0,2]",
    ]


def test_summand_ranks() -> None:
    left = Summand(3, "left", 2)

    assert [left.rank_at(q) for q in range(4)] == [1, 1, 0, 0]
    assert left.degree_one_component == 2
    assert Summand(3, "right", 1).degree_one_component == 2
    assert Summand(3, "full").degree_one_component is None


@pytest.mark.parametrize("n", [2, 3])
def test_summand_lines_parse_back(n) -> None:
    for s in candidate_summands(n):
        assert Summand.parse(s.line()) == s


@pytest.mark.parametrize("line", ["*--o--*", "o--*--o", "*-*", "*--*--* [x]", "*--*--o [1]"])
def test_bad_summand_lines(line) -> None:
    with pytest.raises(PatternError):
        Summand.parse(line)


def test_summand_index_range() -> None:
    with pytest.raises(PatternError):
        Summand(2, "left", 0)
    with pytest.raises(PatternError):
        Summand(2, "right", 2)


def names(patterns):
    return [[s.name for s in p.summands] for p in patterns]


def test_two_components() -> None:
    patterns = enumerate_destab_patterns(2, 1)

    assert names(patterns) == [
        ["O_[0,2)", "O_(0,2]", "O_[0,2]"],
        ["O_[0,2)", "O_(0,2]", "O^[1]_[0,2]"],
        ["O_[0,2)", "O_(0,2]", "O^[2]_[0,2]"],
    ]
    for p in patterns:
        assert p.r_dag == 3
        assert p.node_ranks == (2, 3, 2)


def test_three_components_marked_first() -> None:
    patterns = enumerate_destab_patterns(3, 1)

    assert names(patterns) == [
        ["O_[0,2)", "O_(0,3]", "O^[3]_[0,3]"],
        ["O_[0,3)", "O_(0,3]", "O^[2]_[0,3]"],
    ]
    assert [p.ones_used for p in patterns] == [(1, 1, 1), (1, 1, 1)]


def test_three_components_marked_second() -> None:
    patterns = enumerate_destab_patterns(3, 2)

    assert names(patterns) == [
        ["O_[0,3)", "O_(0,3]", "O^[2]_[0,3]"],
        ["O_[0,3)", "O_(1,3]", "O^[1]_[0,3]"],
    ]


def test_pattern_figure() -> None:
    first = enumerate_destab_patterns(2, 1)[0]

    assert first.text() == "*--*--o [2]\no--*--* [1]\n*--*--*\n   ^"
    assert SubsheafPattern.parse(first.text()) == first


def test_unsupported_input() -> None:
    with pytest.raises(PatternError):
        enumerate_destab_patterns(4, 1)
    with pytest.raises(PatternError):
        enumerate_destab_patterns(2, 0)
    with pytest.raises(PatternError):
        enumerate_destab_patterns(2, 1, r=4)


def test_pattern_text_needs_a_caret() -> None:
    with pytest.raises(PatternError):
        SubsheafPattern.parse("*--*--*")
    with pytest.raises(PatternError):
        SubsheafPattern.parse("*--*--*\n  ^")
