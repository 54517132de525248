from dataclasses import dataclass
from typing import Dict, Tuple

__all__ = ["DimensionTable", "Identity", "dims_table"]


@dataclass(frozen=True)
class Identity:
    name: str
    lhs: int
    rhs: int

    @property
    def holds(self) -> bool:
        return self.lhs == self.rhs


@dataclass(frozen=True)
class DimensionTable:
    """
    Dimensions of the loci met when crossing the first wall for rank 3, as functions of the
    genus g of the nodal curve.

    Attributes
    ----
    genus       g.
    values      Named dimensions, in display order.
    identities  Arithmetic relations among the values.
    """

    genus: int
    values: Dict[str, int]
    identities: Tuple[Identity, ...]

    @property
    def consistent(self) -> bool:
        return all(i.holds for i in self.identities)


def dims_table(g: int) -> DimensionTable:
    if g < 2:
        raise ValueError(f"genus must be at least 2, got {g}")
    v = {
        "ExtFL": 2 * g,
        "G243": 4 * g - 4,
        "G130": g - 1,
        "A": 5 * g - 5,
        "PWminus_total": 7 * g - 6,
        "M0": 9 * g - 8,
        "ExtLF": 2 * g - 2,
        "B": 5 * g - 5,
        "Ia": 7 * g - 8,
        "Ib": 7 * g - 7,
        "Ic": 7 * g - 7,
    }
    identities = (
        Identity("A = G243 + G130", v["A"], v["G243"] + v["G130"]),
        Identity("PWminus_total = (ExtFL - 1) + A", v["PWminus_total"], v["ExtFL"] - 1 + v["A"]),
        Identity("M0 = PWminus_total + ExtLF", v["M0"], v["PWminus_total"] + v["ExtLF"]),
        Identity("M0 = 9(g - 1) + 1", v["M0"], 9 * (g - 1) + 1),
        Identity("B = A", v["B"], v["A"]),
        Identity("Ia = B + (ExtLF - 1)", v["Ia"], v["B"] + v["ExtLF"] - 1),
        Identity("Ib = Ic", v["Ib"], v["Ic"]),
        Identity("Ib = Ia + 1", v["Ib"], v["Ia"] + 1),
    )
    return DimensionTable(genus=g, values=v, identities=identities)
