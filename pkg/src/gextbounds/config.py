"""Run configuration shared by the CLI and the analysis pipeline."""

from __future__ import annotations

from dataclasses import dataclass


@dataclass
class RunConfig:
    """Budgets, caps, and output knobs; defaults reproduce the shipped tables."""

    truncation: int | None = None          # Molien truncation override
    max_candidates: int = 64               # candidate degree-vector cap
    step_budget: int = 2_000_000_000       # monomial ops per Groebner run
    subset_step_budget: int = 2_000_000    # per feasibility-test Groebner run
    wall_seconds: float | None = 600.0     # per-group wall clock
    seed: int = 0                          # selection-stream seed
    base_degree: int = 1                   # l = [K:Q]
    out_format: str = "md"                 # "md" or "csv"
    max_attempts: int = 240                # selections tried per vector
    combo_cap: int = 48                    # per-degree candidate elements
    workers: int = 1                       # parallel rows in table mode

    def __post_init__(self):
        if self.max_candidates < 1 or self.step_budget < 1:
            raise ValueError("budgets and caps must be positive")
        if self.wall_seconds is not None and self.wall_seconds <= 0:
            raise ValueError("wall budget must be positive")
        if self.base_degree < 1:
            raise ValueError("base field degree must be at least 1")
        if self.out_format not in ("md", "csv"):
            raise ValueError("output format must be 'md' or 'csv'")
