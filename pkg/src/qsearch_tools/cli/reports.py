"""
Report files named <subcommand>_<seed>[_<part>].<ext>.

JSON reports carry a meta block with the config echo, seed, package version
and (unless disabled) the wall-clock time. CSV floats are written with repr so
identical runs give identical bytes.
"""
from __future__ import annotations

import csv
import json
import logging
import os
from datetime import datetime, timezone
from typing import Any, Iterable, List, Optional, Sequence

from .. import __version__
from .config import RunConfig

logger = logging.getLogger(__name__)


def _cell(value: Any) -> Any:
    if isinstance(value, float):
        return repr(value)
    return value


class ReportWriter:
    def __init__(self, config: RunConfig, seed: int):
        self.config = config
        self.seed = seed
        self.out_dir = config.out
        self.written: List[str] = []

    def path(self, ext: str, part: Optional[str] = None) -> str:
        stem = f"{self.config.subcommand}_{self.seed}"
        if part:
            stem += f"_{part}"
        return os.path.join(self.out_dir, f"{stem}.{ext}")

    def meta(self) -> dict:
        meta = {"config": self.config.to_dict(), "seed": self.seed, "version": __version__}
        if not self.config.no_clock:
            meta["wall_clock"] = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
        return meta

    def _open(self, path: str):
        os.makedirs(os.path.dirname(path) or ".", exist_ok=True)
        self.written.append(path)
        return open(path, "w", encoding="utf-8", newline="")

    def write_json(self, payload: dict, part: Optional[str] = None) -> str:
        path = self.path("json", part)
        with self._open(path) as fh:
            json.dump({"meta": self.meta(), **payload}, fh, indent=2, sort_keys=True)
            fh.write("\n")
        logger.debug("wrote %s", path)
        return path

    def write_csv(self, header: Sequence[str], rows: Iterable[Sequence[Any]], part: Optional[str] = None) -> str:
        path = self.path("csv", part)
        with self._open(path) as fh:
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(header)
            for row in rows:
                writer.writerow([_cell(v) for v in row])
        logger.debug("wrote %s", path)
        return path

    def write_text(self, text: str, ext: str, part: Optional[str] = None) -> str:
        path = self.path(ext, part)
        with self._open(path) as fh:
            fh.write(text)
        return path

    def track(self, path: str) -> str:
        self.written.append(path)
        return path
