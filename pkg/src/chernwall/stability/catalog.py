from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Literal, Mapping, Optional, Tuple

from chernwall._typing import assert_unreachable

__all__ = ["CatalogEntry", "FlipFamily", "TypeCatalog", "type_catalog"]

FlipFamily = Literal["sigma_plus", "sigma_minus"]

SIGMA_PLUS_INDICES = range(3)
SIGMA_MINUS_A_INDICES = range(5)
SIGMA_MINUS_BC_INDICES = range(6)


@dataclass(frozen=True)
class CatalogEntry:
    """
    Attributes
    ----
    name            Type name such as ``I_a^+1`` or ``I_a^-2'``.
    component       The letter of the component (``a``, ``b`` or ``c``).
    index           Position within the component; index 0 is the generic type.
    reflection_of   The type this one is the mirror image of, if any.
    identified_with Another name for the same type, if any.
    """

    name: str
    component: str
    index: int
    reflection_of: Optional[str] = None
    identified_with: Optional[str] = None


@dataclass(frozen=True)
class TypeCatalog:
    family: FlipFamily
    entries: Tuple[CatalogEntry, ...]
    intersections: Mapping[FrozenSet[str], Optional[str]]

    @property
    def counts(self) -> Dict[str, int]:
        out: Dict[str, int] = {}
        for e in self.entries:
            out[e.component] = out.get(e.component, 0) + 1
        return out

    @property
    def distinct(self) -> int:
        """Number of types once identified names are merged."""
        return len(self.entries) - sum(1 for e in self.entries if e.identified_with) // 2

    def entry(self, name: str) -> CatalogEntry:
        for e in self.entries:
            if e.name == name:
                return e
        raise KeyError(name)

    def intersection(self, first: str, second: str) -> Optional[str]:
        """The type shared by two components, or None when they are disjoint."""
        return self.intersections[frozenset((first, second))]


def _plus_name(component: str, i: int) -> str:
    return f"I_{component}^+{i}"


def _minus_name(component: str, i: int, primed: bool = False) -> str:
    return f"I_{component}^-{i}" + ("'" if primed else "")


def _sigma_plus() -> TypeCatalog:
    identified = {
        _plus_name("a", 1): _plus_name("c", 2),
        _plus_name("a", 2): _plus_name("b", 2),
    }
    identified.update({v: k for k, v in list(identified.items())})

    entries: List[CatalogEntry] = []
    for component in "abc":
        for i in SIGMA_PLUS_INDICES:
            name = _plus_name(component, i)
            entries.append(
                CatalogEntry(
                    name=name,
                    component=component,
                    index=i,
                    reflection_of=_plus_name("b", i) if component == "c" else None,
                    identified_with=identified.get(name),
                )
            )
    intersections: Dict[FrozenSet[str], Optional[str]] = {
        frozenset("ab"): f"{_plus_name('a', 1)}={_plus_name('c', 2)}",
        frozenset("ac"): f"{_plus_name('a', 2)}={_plus_name('b', 2)}",
        frozenset("bc"): None,
    }
    return TypeCatalog(family="sigma_plus", entries=tuple(entries), intersections=intersections)


def _sigma_minus() -> TypeCatalog:
    entries: List[CatalogEntry] = []
    for i in SIGMA_MINUS_A_INDICES:
        entries.append(CatalogEntry(name=_minus_name("a", i), component="a", index=i))
        entries.append(
            CatalogEntry(
                name=_minus_name("a", i, primed=True),
                component="a",
                index=i,
                reflection_of=_minus_name("a", i),
            )
        )
    for i in SIGMA_MINUS_BC_INDICES:
        entries.append(CatalogEntry(name=_minus_name("b", i), component="b", index=i))
    for i in SIGMA_MINUS_BC_INDICES:
        entries.append(
            CatalogEntry(
                name=_minus_name("c", i),
                component="c",
                index=i,
                reflection_of=_minus_name("b", i),
            )
        )
    return TypeCatalog(family="sigma_minus", entries=tuple(entries), intersections={})


def type_catalog(family: FlipFamily) -> TypeCatalog:
    if family == "sigma_plus":
        return _sigma_plus()
    elif family == "sigma_minus":
        return _sigma_minus()
    else:
        assert_unreachable(family)
