"""
Run configuration for the Heterophily Gauge.

Precedence, highest first: explicit CLI flags, a per-run JSON config file,
environment variables (loaded from ``.env`` via python-dotenv), built-in
defaults. The effective configuration is echoed into every output document.
"""

import json
import os
from pathlib import Path
from typing import Any, Dict, List, Literal, Optional

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator

from .errors import UsageError

# Load environment variables
load_dotenv()

THREADS_ENV_VAR = "HGAUGE_THREADS"


def default_threads() -> int:
    """
    Resolve the worker count when no flag or config file sets one.

    Returns:
        Value of ``HGAUGE_THREADS`` if set, otherwise the available parallelism
    """
    raw = os.getenv(THREADS_ENV_VAR)
    if raw:
        try:
            value = int(raw)
        except ValueError:
            raise UsageError(f"{THREADS_ENV_VAR} must be an integer, got {raw!r}")
        if value < 1:
            raise UsageError(f"{THREADS_ENV_VAR} must be >= 1, got {value}")
        return value
    return os.cpu_count() or 1


class RunConfig(BaseModel):
    """
    Everything that determines the output of one subcommand run.

    Defaults form the frozen reproducibility profile: lengths 1..2, mean
    aggregation, binary edges, self-loops removed, symmetrized induced graphs.
    """

    subcommand: str = "metrics"
    graph: Optional[str] = None
    output: Optional[str] = None
    target: Optional[str] = None
    lengths: List[int] = Field(default_factory=lambda: [1, 2])
    agg: Literal["mean", "max"] = "mean"
    count_multiplicity: bool = False
    keep_self_loops: bool = False
    directed: bool = False
    profile: Literal["default", "custom"] = "default"
    expectation: Literal["approximate", "exact"] = "approximate"
    seed: int = 0
    threads: int = Field(default_factory=default_threads)
    strategy: Literal["temporal", "random"] = "temporal"
    ratios: List[float] = Field(default_factory=lambda: [0.8, 0.1, 0.1])
    boundaries: Optional[List[int]] = None
    sample_size: Optional[int] = None
    null_trials: int = 0
    materialize: bool = False
    metapaths: Optional[List[str]] = None
    quiet: bool = False

    @field_validator("lengths")
    @classmethod
    def _check_lengths(cls, value: List[int]) -> List[int]:
        if not value:
            raise ValueError("at least one metapath length is required")
        if any(k < 1 for k in value):
            raise ValueError("metapath lengths must be >= 1")
        return sorted(set(value))

    @field_validator("threads")
    @classmethod
    def _check_threads(cls, value: int) -> int:
        if value < 1:
            raise ValueError("threads must be >= 1")
        return value

    @field_validator("ratios")
    @classmethod
    def _check_ratios(cls, value: List[float]) -> List[float]:
        if len(value) != 3:
            raise ValueError("ratios need exactly three values (train, val, test)")
        if any(r <= 0 for r in value):
            raise ValueError("ratios must be positive")
        if abs(sum(value) - 1.0) > 1e-9:
            raise ValueError(f"ratios must sum to 1, got {sum(value)}")
        return value

    @field_validator("boundaries")
    @classmethod
    def _check_boundaries(cls, value: Optional[List[int]]) -> Optional[List[int]]:
        if value is None:
            return value
        if len(value) != 2 or value[0] > value[1]:
            raise ValueError("boundaries need two non-decreasing timestamps t1,t2")
        return value

    @model_validator(mode="after")
    def _check_consistency(self) -> "RunConfig":
        # Directed induced graphs are an expert mode outside the frozen profile
        if self.directed and self.profile == "default":
            raise ValueError(
                "directed expert mode is not part of the default profile; "
                "pass --profile custom to enable it"
            )
        if self.sample_size is not None and self.sample_size < 1:
            raise ValueError("sample_size must be >= 1")
        if self.null_trials < 0:
            raise ValueError("null_trials must be >= 0")
        if self.null_trials and (self.directed or self.count_multiplicity):
            raise ValueError("null-model trials need undirected induced graphs with binary edges")
        return self

    @property
    def symmetrize(self) -> bool:
        return not self.directed

    def echo(self) -> Dict[str, Any]:
        """
        Configuration fields that affect computed values, for report headers.

        Returns:
            JSON-serializable dictionary
        """
        return self.model_dump(exclude={"subcommand", "output", "quiet"})


def read_config_file(path: Optional[str]) -> Dict[str, Any]:
    """
    Read a per-run JSON config file.

    Args:
        path: File path, or None for no file

    Returns:
        Parsed mapping (empty when no file is given)

    Raises:
        UsageError: If the file is missing or not a JSON object
    """
    if not path:
        return {}
    config_path = Path(path)
    if not config_path.exists():
        raise UsageError(f"config file not found: {config_path}")
    try:
        data = json.loads(config_path.read_text(encoding="utf-8"))
    except json.JSONDecodeError as e:
        raise UsageError(f"config file {config_path} is not valid JSON: {e}")
    if not isinstance(data, dict):
        raise UsageError(f"config file {config_path} must hold a JSON object")
    return data


def build_run_config(overrides: Dict[str, Any], config_path: Optional[str] = None) -> RunConfig:
    """
    Merge config-file values and CLI overrides into a validated RunConfig.

    Args:
        overrides: Values given explicitly on the command line (None entries are ignored)
        config_path: Optional JSON config file

    Returns:
        The effective configuration

    Raises:
        UsageError: If the merged values are invalid or inconsistent
    """
    merged = read_config_file(config_path)
    merged.update({k: v for k, v in overrides.items() if v is not None})
    try:
        return RunConfig(**merged)
    except ValidationError as e:
        raise UsageError(f"invalid configuration: {e}")
