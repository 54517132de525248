from dataclasses import dataclass
from typing import List, Sequence, Tuple

__all__ = [
    "ChainBundle",
    "Transfer",
    "is_regular",
    "reverse_transfer",
    "transfer",
    "transfers_agree",
]

COMPONENT_SEPARATOR = "|"
DEGREE_SEPARATOR = ","


@dataclass(frozen=True)
class ChainBundle:
    """
    Splitting type of a vector bundle on a chain of projective lines.

    Attributes
    ----
    splitting   For each component, the degrees of its line bundle factors, sorted.
    """

    splitting: Tuple[Tuple[int, ...], ...]

    def __post_init__(self) -> None:
        if not self.splitting:
            raise ValueError("a chain needs at least one component")
        ranks = {len(c) for c in self.splitting}
        if len(ranks) != 1 or 0 in ranks:
            raise ValueError(f"every component must carry the same positive rank: {ranks}")
        object.__setattr__(self, "splitting", tuple(tuple(sorted(c)) for c in self.splitting))

    @classmethod
    def from_factors(cls, rank: int, ones: Sequence[int]) -> "ChainBundle":
        """The bundle with ``ones[i]`` factors of degree one on component i, the rest trivial."""
        if any(not 0 <= a <= rank for a in ones):
            raise ValueError(f"degree one counts must lie in [0, {rank}]: {list(ones)}")
        return cls(tuple((0,) * (rank - a) + (1,) * a for a in ones))

    @classmethod
    def parse(cls, text: str) -> "ChainBundle":
        """Read ``0,0,1 | 0,1,1``: components separated by bars, degrees by commas."""
        components = []
        for chunk in text.split(COMPONENT_SEPARATOR):
            chunk = chunk.strip()
            if not chunk:
                raise ValueError(f"empty component in {text!r}")
            try:
                components.append(tuple(int(d) for d in chunk.split(DEGREE_SEPARATOR)))
            except ValueError as error:
                raise ValueError(f"bad degree list {chunk!r}") from error
        return cls(tuple(components))

    def __str__(self) -> str:
        return f" {COMPONENT_SEPARATOR} ".join(
            DEGREE_SEPARATOR.join(str(d) for d in c) for c in self.splitting
        )

    @property
    def n(self) -> int:
        return len(self.splitting)

    @property
    def rank(self) -> int:
        return len(self.splitting[0])

    @property
    def degree(self) -> int:
        return sum(sum(c) for c in self.splitting)

    @property
    def admissible(self) -> bool:
        return all(d >= 0 for c in self.splitting for d in c)

    @property
    def ones(self) -> Tuple[int, ...]:
        """Number of degree one factors on each component."""
        return tuple(c.count(1) for c in self.splitting)

    def _require_zero_one(self) -> None:
        if not self.admissible:
            raise ValueError(f"{self} has negative degree factors")
        if any(d not in (0, 1) for c in self.splitting for d in c):
            raise ValueError(f"{self} has factors of degree above one")

    def _check_rank(self, r: int) -> None:
        if r != self.rank:
            raise ValueError(f"bundle has rank {self.rank}, expected {r}")


@dataclass(frozen=True)
class Transfer:
    dims: Tuple[int, ...]

    @property
    def t(self) -> int:
        return self.dims[-1]


def _sweep(ones: Sequence[int], r: int) -> Tuple[int, ...]:
    dims: List[int] = [0]
    for a in ones:
        dims.append(min(r, dims[-1] + a))
    return tuple(dims)


def transfer(cb: ChainBundle, r: int) -> Transfer:
    """
    Dimensions W_0, ..., W_n of the forward transfer of 0 at q_0, with generic gluing:
    each component adds its degree one factors until the fiber is full.
    """
    cb._check_rank(r)
    cb._require_zero_one()
    return Transfer(dims=_sweep(cb.ones, r))


def reverse_transfer(cb: ChainBundle, r: int) -> Transfer:
    """Transfer of 0 at q_n back to q_0; ``dims[i]`` is the dimension at q_{n-i}."""
    cb._check_rank(r)
    cb._require_zero_one()
    return Transfer(dims=_sweep(tuple(reversed(cb.ones)), r))


def transfers_agree(cb: ChainBundle, r: int) -> bool:
    """Whether F|q_n / T_forward and F|q_0 / T_backward have the same dimension."""
    return r - transfer(cb, r).t == r - reverse_transfer(cb, r).t


def is_regular(cb: ChainBundle, r: int) -> bool:
    if cb.rank != r or not cb.admissible:
        return False
    if any(d not in (0, 1) for c in cb.splitting for d in c):
        return False
    dims = _sweep(cb.ones, r)
    return all(dims[i] == dims[i - 1] + a for i, a in enumerate(cb.ones, start=1))
