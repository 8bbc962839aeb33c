"""Shared tolerances and run configuration.

Every tolerance used by the library has a single default here.  The CLI
builds a :class:`RunConfig` from an optional JSON file plus flag overrides
and threads it through all commands, so batch runs are reproducible from
the config alone.
"""

from __future__ import annotations

import json
from dataclasses import asdict, dataclass, fields

# Overlap moduli below TAU_DEG (relative to the norms involved) count as
# degenerate: the phase of the product is no longer numerically meaningful.
TAU_DEG = 1e-12

# Relative imaginary part allowed in three-point invariants along a curve
# before the null-phase check reports a violation.
TAU_NPC = 1e-10

# Polynomial coefficients below TAU_LEAD times the largest coefficient are
# treated as zero when deciding the effective degree of a star polynomial.
TAU_LEAD = 1e-10

DEFAULT_GRID = 257
DEFAULT_SUBGRID = 21


@dataclass(frozen=True)
class RunConfig:
    """Tolerances, grid sizes and seeding for a batch run."""

    tau_deg: float = TAU_DEG
    tau_npc: float = TAU_NPC
    tau_lead: float = TAU_LEAD
    grid: int = DEFAULT_GRID
    subgrid: int = DEFAULT_SUBGRID
    seed: int = 0
    output: str | None = None

    def __post_init__(self) -> None:
        for name in ("tau_deg", "tau_npc", "tau_lead"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.grid < 3 or self.subgrid < 3:
            raise ValueError("grid sizes must be at least 3")

    def to_json(self) -> str:
        return json.dumps(asdict(self), indent=2)

    @classmethod
    def from_file(cls, path: str) -> "RunConfig":
        with open(path, encoding="utf-8") as handle:
            raw = json.load(handle)
        known = {f.name for f in fields(cls)}
        unknown = sorted(set(raw) - known)
        if unknown:
            raise ValueError(f"unknown config keys: {', '.join(unknown)}")
        return cls(**raw)

    def replace(self, **overrides) -> "RunConfig":
        data = asdict(self)
        data.update({k: v for k, v in overrides.items() if v is not None})
        return RunConfig(**data)
