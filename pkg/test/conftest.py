from importlib import resources
from pathlib import Path
from typing import Callable, Dict, Optional, Tuple

import pytest

from chernwall.cohomology import RING_NAMES, CohomologyRings, PairModel, load_rings
from chernwall.vanish import Pipeline

SEED = 20240611

Edits = Dict[str, Tuple[str, str]]
PresentationWriter = Callable[[Path, Optional[Edits]], Path]


@pytest.fixture(scope="module")
def rings() -> CohomologyRings:
    return load_rings()


@pytest.fixture(scope="module")
def model(rings: CohomologyRings) -> PairModel:
    return PairModel(rings)


@pytest.fixture(scope="module")
def pipeline(rings: CohomologyRings) -> Pipeline:
    return Pipeline(rings, timings=False)


@pytest.fixture(scope="module")
def seed() -> int:
    print(f"random seed: {SEED}")
    return SEED


@pytest.fixture(scope="module")
def write_presentations() -> PresentationWriter:
    """
    Copies the bundled presentations into a directory. ``edits`` maps a ring name to an
    ``(old, new)`` text substitution applied to that file.
    """

    def write(directory: Path, edits: Optional[Edits] = None) -> Path:
        directory.mkdir(parents=True, exist_ok=True)
        for name in RING_NAMES:
            resource = resources.files("chernwall.cohomology") / "rings" / f"{name}.ring"
            text = resource.read_text(encoding="utf-8")
            if edits and name in edits:
                old, new = edits[name]
                assert old in text
                text = text.replace(old, new)
            (directory / f"{name}.ring").write_text(text, encoding="utf-8")
        return directory

    return write
