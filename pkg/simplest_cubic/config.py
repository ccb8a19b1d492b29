"""
Run configuration for simplest-cubic

Holds the validated parameters of a CLI run and the optional defaults read
from ~/.simplest-cubic/config.json (or $SC_CONFIG_DIR/config.json).
"""

import json
import logging
import os
from enum import Enum
from fractions import Fraction
from pathlib import Path
from typing import Any, Dict, Iterator, Optional, Tuple

from pydantic import BaseModel, Field, field_validator, model_validator

from .parallel import default_threads

logger = logging.getLogger(__name__)


class OutputFormat(str, Enum):
    """Output formats for records and tables"""

    JSON = "json"
    CSV = "csv"
    MARKDOWN = "markdown"


class Command(str, Enum):
    CLASSIFY = "classify"
    BASIS = "basis"
    CANDIDATES = "candidates"
    INDECOMPOSABLES = "indecomposables"
    VERIFY = "verify"
    MINTRACE = "mintrace"
    NORMS = "norms"
    PYTHAGORAS = "pythagoras"
    UQF = "uqf"
    TABLE1 = "table1"
    TABLE_FIRSTPAR = "table-firstpar"
    A41 = "a41"


DEFAULT_MAX_A_ORACLE = 48
DEFAULT_PRECISION_BITS = 64


def parse_a_range(value: str) -> Tuple[int, int]:
    """'N' or 'LO..HI' (inclusive)"""
    text = value.strip()
    if ".." in text:
        lo_text, hi_text = text.split("..", 1)
        lo, hi = int(lo_text), int(hi_text)
    else:
        lo = hi = int(text)
    if lo > hi:
        raise ValueError(f"Empty range {value!r}: lower bound exceeds upper bound")
    return lo, hi


class RunConfig(BaseModel):
    """Resolved parameters of one CLI invocation"""

    command: Command
    a_range: Optional[Tuple[int, int]] = None
    p: Optional[int] = None
    pmax: Optional[int] = None
    format: OutputFormat = OutputFormat.JSON
    certify: Optional[bool] = None
    max_a_oracle: int = Field(default=DEFAULT_MAX_A_ORACLE, ge=1)
    allow_large: bool = False
    threads: int = Field(default=1, ge=1)
    out: Optional[Path] = None
    precision_bits: int = Field(default=DEFAULT_PRECISION_BITS, ge=8)

    @field_validator("a_range")
    @classmethod
    def _check_range(cls, value: Optional[Tuple[int, int]]) -> Optional[Tuple[int, int]]:
        if value is None:
            return value
        lo, hi = value
        if lo < -1:
            raise ValueError(f"a must be >= -1, got {lo}")
        if lo > hi:
            raise ValueError(f"Empty range {lo}..{hi}")
        return value

    @model_validator(mode="after")
    def _check_required(self) -> "RunConfig":
        needs_a = {
            Command.CLASSIFY,
            Command.BASIS,
            Command.CANDIDATES,
            Command.INDECOMPOSABLES,
            Command.VERIFY,
            Command.MINTRACE,
            Command.NORMS,
            Command.PYTHAGORAS,
            Command.UQF,
        }
        if self.command in needs_a and self.a_range is None:
            raise ValueError(f"'{self.command.value}' needs --a")
        return self

    def a_values(self) -> Iterator[int]:
        if self.a_range is None:
            return iter(())
        lo, hi = self.a_range
        return iter(range(lo, hi + 1))

    @property
    def is_range(self) -> bool:
        return self.a_range is not None and self.a_range[0] != self.a_range[1]

    @property
    def precision(self) -> Fraction:
        """Width bound for the interval enclosures"""
        return Fraction(1, 2**self.precision_bits)


class Settings:
    """Read-only defaults from config.json"""

    def __init__(self, config_dir: Optional[Path] = None) -> None:
        """Load defaults

        Args:
            config_dir: Custom config directory, defaults to $SC_CONFIG_DIR or ~/.simplest-cubic
        """
        env_dir = os.environ.get("SC_CONFIG_DIR")
        self.config_dir = Path(config_dir or env_dir or Path.home() / ".simplest-cubic")
        self.config_file = self.config_dir / "config.json"
        self.threads = 1
        self.max_a_oracle = DEFAULT_MAX_A_ORACLE
        self.format = OutputFormat.JSON
        self.precision_bits = DEFAULT_PRECISION_BITS

        self._load_config()

        if os.environ.get("SC_THREADS"):
            self.threads = default_threads()

    def _load_config(self) -> None:
        """Load defaults from config.json if present"""
        if not self.config_file.exists():
            return

        try:
            with open(self.config_file, "r") as f:
                data = json.load(f)

            self.threads = int(data.get("threads", self.threads))
            self.max_a_oracle = int(data.get("max_a_oracle", self.max_a_oracle))
            self.format = OutputFormat(data.get("format", self.format.value))
            self.precision_bits = int(data.get("precision_bits", self.precision_bits))

        except (OSError, json.JSONDecodeError, TypeError, ValueError) as e:
            logger.warning(f"Could not load config file {self.config_file}: {e}; using defaults")

    def to_dict(self) -> Dict[str, Any]:
        return {
            "threads": self.threads,
            "max_a_oracle": self.max_a_oracle,
            "format": self.format.value,
            "precision_bits": self.precision_bits,
        }
