"""
Run configuration: built-in defaults, then an optional TOML file
([defaults] and one table per subcommand), then command-line flags.
"""
from __future__ import annotations

import tomllib
from dataclasses import asdict, dataclass, field
from typing import Any, Dict, Mapping, Optional, Tuple

from .. import settings
from ..errors import ConfigError

SUBCOMMANDS = ("generate", "simulate", "recurrence", "uncompute-rewrite", "multipoint", "ksat", "bench", "kernel-dims")

DEFAULTS: Dict[str, Any] = {
    "n": None,
    "x": 1,
    "schedule": None,
    "family": "W",
    "oracle_marked": None,
    "cnf": None,
    "k": None,
    "p": 0.5,
    "trials": 100,
    "seed": None,
    "out": None,
    "tol": None,
    "format": "text",
    "png": False,
    "decompose": False,
    "depth": None,
    "targets": None,
    "mode": None,
    "n_range": None,
    "circuit": None,
    "manifest": None,
    "verify": False,
    "random": False,
    "clauses": None,
    "width": 3,
    "hash_k": None,
    "no_clock": False,
    "upload": False,
}

MODES = {
    "multipoint": ("known", "unknown", "exact"),
    "bench": ("queries", "gates"),
}


@dataclass(frozen=True)
class RunConfig:
    subcommand: str
    n: Optional[int] = None
    x: int = 1
    schedule: Optional[str] = None
    family: str = "W"
    oracle_marked: Optional[Tuple[int, ...]] = None
    cnf: Optional[str] = None
    k: Optional[int] = None
    p: float = 0.5
    trials: int = 100
    seed: Optional[int] = None
    out: str = field(default_factory=lambda: settings.OUTPUT_DIR)
    tol: Optional[float] = None
    format: str = "text"
    png: bool = False
    decompose: bool = False
    depth: Optional[int] = None
    targets: Optional[int] = None
    mode: Optional[str] = None
    n_range: Optional[Tuple[int, int]] = None
    circuit: Optional[str] = None
    manifest: Optional[str] = None
    verify: bool = False
    random: bool = False
    clauses: Optional[int] = None
    width: int = 3
    hash_k: Optional[int] = None
    no_clock: bool = False
    upload: bool = False

    def __post_init__(self) -> None:
        if self.subcommand not in SUBCOMMANDS:
            raise ConfigError(f"unknown subcommand {self.subcommand!r}")
        sources = [name for name, value in (
            ("--oracle-marked", self.oracle_marked), ("--cnf", self.cnf), ("--k", self.k),
        ) if value is not None]
        if self.random:
            sources.append("--random")
        if len(sources) > 1:
            raise ConfigError(f"oracle sources are mutually exclusive, got {' and '.join(sources)}")
        if self.n is not None and self.n < 1:
            raise ConfigError("--n must be positive")
        if self.x < 1:
            raise ConfigError("--x must be positive")
        if self.family not in ("W", "D"):
            raise ConfigError(f"--family must be W or D, got {self.family!r}")
        if not 0 < self.p < 1:
            raise ConfigError(f"--p must lie in (0, 1), got {self.p}")
        if self.trials < 1:
            raise ConfigError("--trials must be positive")
        if self.tol is not None and self.tol <= 0:
            raise ConfigError("--tol must be positive")
        allowed = MODES.get(self.subcommand)
        if self.mode is not None and allowed is not None and self.mode not in allowed:
            raise ConfigError(f"--mode for {self.subcommand} must be one of {allowed}")
        if self.format not in ("text", "json", "qasm"):
            raise ConfigError(f"--format must be text, json or qasm, got {self.format!r}")

    def to_dict(self) -> dict:
        out = asdict(self)
        for key in ("oracle_marked", "n_range"):
            if out[key] is not None:
                out[key] = list(out[key])
        return out


def parse_n_range(text: str) -> Tuple[int, int]:
    try:
        lo, hi = (int(v) for v in text.split(".."))
    except ValueError:
        raise ConfigError(f"--n-range must look like 6..14, got {text!r}") from None
    if not 1 <= lo <= hi:
        raise ConfigError(f"--n-range {text!r} is empty")
    return lo, hi


def parse_marked(text: str) -> Tuple[int, ...]:
    try:
        return tuple(int(part, 0) for part in text.replace(" ", "").split(",") if part)
    except ValueError:
        raise ConfigError(f"cannot parse marked set {text!r}") from None


def load_toml(path: str) -> Dict[str, Any]:
    try:
        with open(path, "rb") as fh:
            return tomllib.load(fh)
    except FileNotFoundError:
        raise ConfigError(f"config file {path} not found") from None
    except tomllib.TOMLDecodeError as exc:
        raise ConfigError(f"config file {path}: {exc}") from None


def _normalise(values: Mapping[str, Any]) -> Dict[str, Any]:
    out = {key.replace("-", "_"): value for key, value in values.items()}
    unknown = set(out) - set(DEFAULTS)
    if unknown:
        raise ConfigError(f"unknown configuration keys: {', '.join(sorted(unknown))}")
    if isinstance(out.get("n_range"), str):
        out["n_range"] = parse_n_range(out["n_range"])
    if isinstance(out.get("oracle_marked"), str):
        out["oracle_marked"] = parse_marked(out["oracle_marked"])
    elif isinstance(out.get("oracle_marked"), list):
        out["oracle_marked"] = tuple(int(v) for v in out["oracle_marked"])
    if isinstance(out.get("n_range"), list):
        out["n_range"] = tuple(out["n_range"])
    return out


def resolve_config(subcommand: str, flags: Mapping[str, Any], file_values: Optional[Mapping[str, Any]] = None) -> RunConfig:
    """Flags that were not given arrive as None and fall through to the file, then to defaults."""
    merged: Dict[str, Any] = {k: v for k, v in DEFAULTS.items() if v is not None}
    if file_values:
        merged.update(_normalise(file_values.get("defaults", {})))
        merged.update(_normalise(file_values.get(subcommand, {})))
    merged.update(_normalise({k: v for k, v in flags.items() if v is not None}))
    merged.setdefault("out", settings.OUTPUT_DIR)
    try:
        return RunConfig(subcommand=subcommand, **merged)
    except TypeError as exc:
        raise ConfigError(str(exc)) from None
