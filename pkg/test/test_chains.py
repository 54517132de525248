import random

import pytest

from chernwall.stability import ChainBundle, is_regular, reverse_transfer, transfer, transfers_agree

CHAINS = 50
RANK = 3


def test_parse_and_print() -> None:
    cb = ChainBundle.parse("1,0,0 | 1, 1, 0")

    assert cb.splitting == ((0, 0, 1), (0, 1, 1))
    assert str(cb) == "0,0,1 | 0,1,1"
    assert (cb.n, cb.rank, cb.degree) == (2, 3, 3)
    assert cb.ones == (1, 2)


@pytest.mark.parametrize("text", ["0,0 | 0", " | 0,1", "0,x", ""])
def test_malformed_chains(text) -> None:
    with pytest.raises(ValueError):
        ChainBundle.parse(text)


def test_from_factors() -> None:
    assert ChainBundle.from_factors(3, (1, 2)) == ChainBundle.parse("0,0,1 | 0,1,1")
    with pytest.raises(ValueError):
        ChainBundle.from_factors(3, (4,))


def test_transfer_fills_up() -> None:
    cb = ChainBundle.from_factors(3, (1, 1, 1))

    forward = transfer(cb, 3)

    assert forward.dims == (0, 1, 2, 3)
    assert forward.t == 3
    assert reverse_transfer(cb, 3).t == 3


def test_transfer_saturates() -> None:
    cb = ChainBundle.from_factors(3, (2, 2))

    assert transfer(cb, 3).dims == (0, 2, 3)
    assert not is_regular(cb, 3)


def test_transfers_agree_in_both_directions() -> None:
    for ones in [(0, 1), (1, 2), (2, 2), (3, 0, 1), (1, 0, 0)]:
        assert transfers_agree(ChainBundle.from_factors(3, ones), 3)


def test_regularity() -> None:
    assert is_regular(ChainBundle.from_factors(3, (1, 1, 1)), 3)
    assert is_regular(ChainBundle.from_factors(3, (0, 2)), 3)
    assert not is_regular(ChainBundle.from_factors(3, (2, 2)), 3)
    assert not is_regular(ChainBundle.parse("0,0,2"), 3)
    assert not is_regular(ChainBundle.parse("-1,0,1"), 3)
    assert not is_regular(ChainBundle.from_factors(2, (1,)), 3)


def test_transfer_needs_zero_one_degrees() -> None:
    with pytest.raises(ValueError):
        transfer(ChainBundle.parse("0,0,2"), 3)
    with pytest.raises(ValueError):
        transfer(ChainBundle.parse("-1,1,1"), 3)
    with pytest.raises(ValueError):
        transfer(ChainBundle.from_factors(3, (1,)), 2)


def random_chains(seed: int):
    rng = random.Random(seed)
    for _ in range(CHAINS):
        ones = [rng.randint(0, RANK) for _ in range(rng.randint(1, 5))]
        yield ChainBundle.from_factors(RANK, ones)


def test_transfer_properties_on_generated_chains(seed) -> None:
    for cb in random_chains(seed):
        forward = transfer(cb, RANK)
        backward = reverse_transfer(cb, RANK)
        steps = list(zip(forward.dims, forward.dims[1:]))

        assert forward.dims[0] == 0 and len(forward.dims) == cb.n + 1
        assert all(0 <= after - before <= a for (before, after), a in zip(steps, cb.ones))
        assert forward.t == backward.t == min(RANK, sum(cb.ones))
        assert transfers_agree(cb, RANK)
        assert is_regular(cb, RANK) == (sum(cb.ones) <= RANK)
        if is_regular(cb, RANK):
            assert forward.t == sum(cb.ones)
