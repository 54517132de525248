import os
from pathlib import Path
from typing import Literal, Optional, Union

from chernwall.cohomology import DEFAULT_TRUNCATION

__all__ = ["ConfigError", "RunOptions"]


CHERNWALL_OUTPUT_DIR = "CHERNWALL_OUTPUT_DIR"

OutputFormat = Literal["text", "structured"]


class ConfigError(Exception):
    pass


class RunOptions:
    def __init__(
        self,
        *,
        truncation: int = DEFAULT_TRUNCATION,
        presentation_dir: Optional[Union[str, Path]] = None,
        output_format: OutputFormat = "text",
        output_path: Optional[Union[str, Path]] = None,
        timings: bool = True,
    ):
        if isinstance(truncation, bool) or not isinstance(truncation, int):
            raise ConfigError(f"truncation must be an integer, got {truncation!r}")
        if truncation < 2 or truncation % 2:
            raise ConfigError(f"truncation must be even and at least 2, got {truncation}")
        if output_format not in ("text", "structured"):
            raise ConfigError(f"unknown output format {output_format!r}")
        if presentation_dir is not None and not Path(presentation_dir).is_dir():
            raise ConfigError(f"presentation directory {presentation_dir} does not exist")

        self._truncation = truncation
        self._presentation_dir = None if presentation_dir is None else Path(presentation_dir)
        self._output_format: OutputFormat = output_format
        self._output_path = None if output_path is None else Path(output_path)
        self._timings = timings

    @property
    def truncation(self) -> int:
        return self._truncation

    @property
    def presentation_dir(self) -> Optional[Path]:
        return self._presentation_dir

    @property
    def output_format(self) -> OutputFormat:
        return self._output_format

    @property
    def timings(self) -> bool:
        return self._timings

    @property
    def output_path(self) -> Optional[Path]:
        """
        Report destination. A bare file name is placed in ``$CHERNWALL_OUTPUT_DIR`` when that
        variable is set.
        """
        if self._output_path is None:
            return None
        directory = os.environ.get(CHERNWALL_OUTPUT_DIR)
        if directory and self._output_path.parent == Path("."):
            return Path(directory) / self._output_path
        return self._output_path
