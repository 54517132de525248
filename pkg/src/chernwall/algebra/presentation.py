"""Text presentations of graded quotient rings.

A presentation file is a sequence of directives, one per line::

    # comment
    var u deg 2
    order grevlex u > v > a > b
    def xi = u + v
    rel u^3 + a*u + b

``var`` lines declare generators, ``order`` fixes the monomial order and the variable
precedence, ``def`` introduces an abbreviation usable in later lines and ``rel`` adds a
relation. Relations must be homogeneous.
"""

import logging
from dataclasses import dataclass, field
from functools import cached_property
from importlib import resources
from pathlib import Path
from typing import Dict, List, Mapping, Optional, Tuple, Union

from chernwall.algebra.groebner import IdealBasis, buchberger, normal_form
from chernwall.algebra.parser import ParseError, parse
from chernwall.algebra.poly import DegreeMismatchError, GradedRing, Polynomial, Variable

__all__ = [
    "PresentationError",
    "RingPresentation",
    "bundled_presentation",
    "load_presentation",
    "read_presentation",
]

logger = logging.getLogger(__name__)

BUNDLED_PACKAGE = "chernwall.cohomology"
BUNDLED_DIRECTORY = "rings"


class PresentationError(Exception):
    def __init__(self, message: str, line: int = 0) -> None:
        super().__init__(f"line {line}: {message}" if line else message)
        self.line = line


@dataclass(frozen=True, eq=False)
class RingPresentation:
    """
    A graded ring modulo a homogeneous ideal.

    Attributes
    ----
    name        Presentation name (file stem for loaded presentations).
    ring        Ambient graded polynomial ring.
    relations   Generators of the ideal, as written.
    bindings    Named abbreviations, e.g. ``xi = u + v``.
    """

    name: str
    ring: GradedRing
    relations: Tuple[Polynomial, ...]
    bindings: Mapping[str, Polynomial] = field(default_factory=dict)

    @cached_property
    def basis(self) -> IdealBasis:
        if not self.relations:
            return IdealBasis(ring=self.ring, generators=(), basis=())
        basis = buchberger(self.relations)
        logger.debug(
            "completed %s: %d relations, %d basis elements",
            self.name,
            len(self.relations),
            len(basis.basis or ()),
        )
        return basis

    def parse(self, text: str) -> Polynomial:
        return parse(text, self.ring, self.bindings)

    def normal_form(self, p: Union[Polynomial, str]) -> Polynomial:
        poly = self.parse(p) if isinstance(p, str) else p
        return normal_form(poly, self.basis)

    def binding(self, name: str) -> Polynomial:
        try:
            return self.bindings[name]
        except KeyError:
            raise PresentationError(f"{self.name} has no binding {name!r}") from None

    def specialize(
        self, values: Mapping[str, Union[int, Polynomial]], name: str
    ) -> "RingPresentation":
        """
        Substitute ``values`` for generators and drop them from the ring. Substituted
        generators may only receive 0 or a homogeneous polynomial in the remaining generators.
        """
        keep = [v for v in self.ring.variables if v.name not in values]
        target = GradedRing(keep, order=self.ring.order.kind)
        mapping: Dict[str, Polynomial] = {}
        for v in self.ring.variables:
            if v.name not in values:
                mapping[v.name] = target.gen(v.name)
                continue
            value = values[v.name]
            if isinstance(value, Polynomial):
                mapping[v.name] = value
            elif value == 0:
                mapping[v.name] = target.zero
            else:
                raise DegreeMismatchError(f"{v.name} can only be specialized to 0 or a polynomial")
        relations = tuple(
            r for r in (rel.substitute(mapping, target) for rel in self.relations) if not r.is_zero
        )
        bindings = {k: b.substitute(mapping, target) for k, b in self.bindings.items()}
        return RingPresentation(name=name, ring=target, relations=relations, bindings=bindings)


def _directive_lines(text: str) -> List[Tuple[int, str, str]]:
    lines = []
    for number, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        keyword, _, rest = line.partition(" ")
        lines.append((number, keyword, rest.strip()))
    return lines


def read_presentation(text: str, name: str = "<string>") -> RingPresentation:
    """
    Build a presentation from directive text.

    The ring is built from every ``var`` and ``order`` line first; ``def`` and ``rel`` lines
    are then parsed in file order.
    """
    lines = _directive_lines(text)

    degrees: Dict[str, int] = {}
    precedence: Optional[List[str]] = None
    kind = "grevlex"
    for number, keyword, rest in lines:
        if keyword == "var":
            parts = rest.split()
            if len(parts) != 3 or parts[1] != "deg":
                raise PresentationError("expected 'var <name> deg <k>'", number)
            if parts[0] in degrees:
                raise PresentationError(f"duplicate variable {parts[0]!r}", number)
            try:
                degrees[parts[0]] = int(parts[2])
            except ValueError:
                raise PresentationError(f"invalid degree {parts[2]!r}", number) from None
        elif keyword == "order":
            if precedence is not None:
                raise PresentationError("duplicate order line", number)
            kind, _, chain = rest.partition(" ")
            if kind not in ("grevlex", "grlex"):
                raise PresentationError(f"unknown order {kind!r}", number)
            precedence = [p.strip() for p in chain.split(">")]
        elif keyword not in ("def", "rel"):
            raise PresentationError(f"unknown directive {keyword!r}", number)

    if not degrees:
        raise PresentationError("no variables declared")
    if precedence is None:
        precedence = list(degrees)
    if sorted(precedence) != sorted(degrees):
        raise PresentationError("order line must list every variable exactly once")

    try:
        variables = [Variable(n, degrees[n]) for n in precedence]
        ring = GradedRing(variables, order=kind)  # type: ignore[arg-type]
    except (ValueError, DegreeMismatchError) as e:
        raise PresentationError(str(e)) from e

    bindings: Dict[str, Polynomial] = {}
    relations: List[Polynomial] = []
    for number, keyword, rest in lines:
        try:
            if keyword == "def":
                label, eq, body = rest.partition("=")
                label = label.strip()
                if not eq or not label:
                    raise PresentationError("expected 'def <name> = <poly>'", number)
                if label in ring or label in bindings:
                    raise PresentationError(f"{label!r} is already defined", number)
                bindings[label] = parse(body, ring, bindings)
            elif keyword == "rel":
                relation = parse(rest, ring, bindings)
                if relation.is_zero:
                    raise PresentationError("relation is zero", number)
                if not relation.is_homogeneous():
                    raise PresentationError(f"relation is not homogeneous: {relation}", number)
                relations.append(relation)
        except ParseError as e:
            raise PresentationError(str(e), number) from e

    return RingPresentation(name=name, ring=ring, relations=tuple(relations), bindings=bindings)


def load_presentation(path: Union[str, Path]) -> RingPresentation:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as e:
        raise PresentationError(f"cannot read {path}: {e.strerror}") from e
    return read_presentation(text, name=path.stem)


def bundled_presentation(name: str) -> RingPresentation:
    """Presentation shipped with the package (``b``, ``btilde`` or ``s1``)."""
    resource = resources.files(BUNDLED_PACKAGE) / BUNDLED_DIRECTORY / f"{name}.ring"
    if not resource.is_file():
        raise PresentationError(f"no bundled presentation named {name!r}")
    return read_presentation(resource.read_text(encoding="utf-8"), name=name)
