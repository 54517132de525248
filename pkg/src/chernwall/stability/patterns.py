"""
Subsheaf patterns on a chain of rational curves D_1, ..., D_n with nodes q_0, ..., q_n.

A summand is drawn as one line of node glyphs joined by segments: ``*`` where the map to E is
non-zero at the node, ``o`` where it vanishes, ``.`` outside the support. A trailing ``[k]``
names the component on which the summand takes up a degree one factor of E. A pattern is a
stack of summand lines followed by a caret under the marked node::

    *--*--o [2]
    o--*--* [1]
    *--*--*
       ^
"""

import logging
from dataclasses import dataclass
from itertools import combinations_with_replacement
from typing import List, Literal, Optional, Tuple

from chernwall._typing import assert_unreachable
from chernwall.stability.chains import ChainBundle, is_regular

logger = logging.getLogger(__name__)

__all__ = [
    "PatternError",
    "SubsheafPattern",
    "Summand",
    "SummandKind",
    "candidate_summands",
    "enumerate_destab_patterns",
]

SummandKind = Literal["left", "right", "full", "twisted"]

SUPPORTED_CHAIN_LENGTHS = (2, 3)
SUPPORTED_RANK = 3
SIGMA_PLUS_INVARIANTS = (2, 3, 3)

DOT = "*"
CIRCLE = "o"
OUTSIDE = "."
SEGMENT = "--"
GAP = "  "
CARET = "^"


class PatternError(Exception):
    pass


@dataclass(frozen=True)
class Summand:
    """
    One summand of the torsion free part of F|_D.

    Attributes
    ----
    n       Number of components in the chain.
    kind    ``left`` is O_[0,i), ``right`` is O_(i,n], ``full`` is O_[0,n] and ``twisted`` is
            O^[i]_[0,n].
    index   The i above; zero for ``full``.
    """

    n: int
    kind: SummandKind
    index: int = 0

    def __post_init__(self) -> None:
        if self.kind == "left":
            ok = 1 <= self.index <= self.n
        elif self.kind == "right":
            ok = 0 <= self.index < self.n
        elif self.kind == "full":
            ok = self.index == 0
        elif self.kind == "twisted":
            ok = 1 <= self.index <= self.n
        else:
            assert_unreachable(self.kind)
        if not ok:
            raise PatternError(f"index {self.index} is out of range for {self.kind} on {self.n}")

    @property
    def support(self) -> Tuple[int, int]:
        if self.kind == "left":
            return (0, self.index)
        if self.kind == "right":
            return (self.index, self.n)
        return (0, self.n)

    @property
    def vanishing_node(self) -> Optional[int]:
        if self.kind in ("left", "right"):
            return self.index
        return None

    @property
    def degree_one_component(self) -> Optional[int]:
        if self.kind == "left":
            return self.index
        elif self.kind == "right":
            return self.index + 1
        elif self.kind == "full":
            return None
        elif self.kind == "twisted":
            return self.index
        else:
            assert_unreachable(self.kind)

    def rank_at(self, node: int) -> int:
        start, end = self.support
        return int(start <= node <= end and node != self.vanishing_node)

    @property
    def name(self) -> str:
        if self.kind == "left":
            return f"O_[0,{self.index})"
        elif self.kind == "right":
            return f"O_({self.index},{self.n}]"
        elif self.kind == "full":
            return f"O_[0,{self.n}]"
        elif self.kind == "twisted":
            return f"O^[{self.index}]_[0,{self.n}]"
        else:
            assert_unreachable(self.kind)

    def line(self) -> str:
        start, end = self.support
        out = []
        for node in range(self.n + 1):
            if node:
                out.append(SEGMENT if start < node <= end else GAP)
            if not start <= node <= end:
                out.append(OUTSIDE)
            else:
                out.append(CIRCLE if node == self.vanishing_node else DOT)
        k = self.degree_one_component
        return "".join(out) + ("" if k is None else f" [{k}]")

    @classmethod
    def parse(cls, line: str) -> "Summand":
        body, label = line.rstrip(), None
        if body.endswith("]"):
            body, _, tail = body.rpartition(" [")
            try:
                label = int(tail[:-1])
            except ValueError as error:
                raise PatternError(f"bad component label in {line!r}") from error
        if len(body) % 3 != 1 or len(body) < 4:
            raise PatternError(f"malformed summand line {line!r}")
        n = len(body) // 3
        nodes = body[0::3]
        inside = [i for i, g in enumerate(nodes) if g != OUTSIDE]
        circles = [i for i, g in enumerate(nodes) if g == CIRCLE]
        if not inside or len(circles) > 1:
            raise PatternError(f"malformed summand line {line!r}")

        candidate: Summand
        if not circles:
            candidate = cls(n, "full") if label is None else cls(n, "twisted", label)
        elif circles[0] == inside[-1] and inside[0] == 0:
            candidate = cls(n, "left", circles[0])
        elif circles[0] == inside[0] and inside[-1] == n:
            candidate = cls(n, "right", circles[0])
        else:
            raise PatternError(f"summand line {line!r} matches no sheaf in the list")
        if candidate.line() != line.rstrip():
            raise PatternError(f"summand line {line!r} is not in canonical form")
        return candidate


def candidate_summands(n: int) -> List[Summand]:
    """Every summand a destabilizing subsheaf can restrict to on a chain of length n."""
    if n < 1:
        raise PatternError(f"chain length must be positive, got {n}")
    return (
        [Summand(n, "left", i) for i in range(1, n + 1)]
        + [Summand(n, "right", i) for i in range(n)]
        + [Summand(n, "full")]
        + [Summand(n, "twisted", i) for i in range(1, n + 1)]
    )


@dataclass(frozen=True)
class SubsheafPattern:
    n: int
    marked: int
    summands: Tuple[Summand, ...]

    @property
    def node_ranks(self) -> Tuple[int, ...]:
        return tuple(sum(s.rank_at(q) for s in self.summands) for q in range(self.n + 1))

    @property
    def r_dag(self) -> int:
        return self.node_ranks[self.marked]

    @property
    def ones_used(self) -> Tuple[int, ...]:
        """Degree one factors of E taken up on each component."""
        used = [0] * self.n
        for s in self.summands:
            k = s.degree_one_component
            if k is not None:
                used[k - 1] += 1
        return tuple(used)

    @property
    def name(self) -> str:
        return " + ".join(s.name for s in self.summands)

    def text(self) -> str:
        lines = [s.line() for s in self.summands]
        lines.append(" " * (3 * self.marked) + CARET)
        return "\n".join(lines)

    @classmethod
    def parse(cls, text: str) -> "SubsheafPattern":
        lines = [line for line in text.splitlines() if line.strip()]
        if len(lines) < 2 or lines[-1].strip() != CARET:
            raise PatternError("a pattern ends with a caret line under the marked node")
        offset = lines[-1].index(CARET)
        if offset % 3:
            raise PatternError("the caret must sit under a node")
        summands = tuple(Summand.parse(line) for line in lines[:-1])
        if len({s.n for s in summands}) != 1:
            raise PatternError("summand lines have different chain lengths")
        n = summands[0].n
        if not 0 <= offset // 3 <= n:
            raise PatternError("the caret is past the last node")
        return cls(n=n, marked=offset // 3, summands=summands)


def _viable(pattern: SubsheafPattern, r0: int, r: int) -> bool:
    ranks = pattern.node_ranks
    if any(s.rank_at(pattern.marked) != 1 for s in pattern.summands):
        return False
    # saturation: the subsheaf has full rank r0 at both ends
    if ranks[0] != r0 or ranks[-1] != r0:
        return False
    # E|_D has a degree one factor on every component; F|_D takes up all of them
    used = pattern.ones_used
    if min(used) < 1 or max(used) > r:
        return False
    return is_regular(ChainBundle.from_factors(r, used), r)


def enumerate_destab_patterns(
    n: int,
    marked: int,
    r: int = SUPPORTED_RANK,
    invariants: Tuple[int, int, int] = SIGMA_PLUS_INVARIANTS,
) -> List[SubsheafPattern]:
    """
    All restrictions F|_D of a destabilizing subsheaf with the given (r0, r_dag, chi) for a
    sheaf whose chain has n components and marked node q_marked, in canonical order.
    """
    if n not in SUPPORTED_CHAIN_LENGTHS:
        raise PatternError(f"chains of length {n} are not supported")
    if not 0 < marked < n:
        raise PatternError(f"the marked node must be interior, got q{marked} on {n}")
    if r != SUPPORTED_RANK or tuple(invariants) != SIGMA_PLUS_INVARIANTS:
        raise PatternError(f"only rank {SUPPORTED_RANK} with {SIGMA_PLUS_INVARIANTS} is supported")

    r0, r_dag, _ = invariants
    out: List[SubsheafPattern] = []
    for combo in combinations_with_replacement(candidate_summands(n), r_dag):
        pattern = SubsheafPattern(n=n, marked=marked, summands=combo)
        if _viable(pattern, r0, r):
            out.append(pattern)
    logger.debug("n=%d marked=q%d: %d patterns", n, marked, len(out))
    return out
