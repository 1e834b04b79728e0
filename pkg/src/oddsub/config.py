"""Instance caps. Overridable from the CLI or ODDSUB_CAP_* environment variables."""

from __future__ import annotations

import os
from dataclasses import dataclass, fields


@dataclass
class Caps:
    ground: int = 128  # largest n for KSubset bitmasks
    materialize: int = 200_000  # vertices when materializing an oracle host
    chromatic: int = 40  # vertices for exact chromatic number
    vertices: int = 12  # vertices for zig / colouring enumeration / brute force
    colourings: int = 2_000_000  # proper colourings enumerated per call
    search_budget: int = 5_000_000  # DFS node expansions for brute-force search
    dot: int = 2_000  # vertices rendered by DOT export

    @classmethod
    def from_env(cls, environ=None) -> "Caps":
        environ = os.environ if environ is None else environ
        caps = cls()
        for f in fields(cls):
            raw = environ.get(f"ODDSUB_CAP_{f.name.upper()}")
            if raw is not None:
                setattr(caps, f.name, int(raw))
        return caps


CAPS = Caps.from_env()
