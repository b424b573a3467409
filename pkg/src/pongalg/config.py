"""Run settings, read from keyword arguments or the environment.

Usage::

    from pongalg.config import Settings

    Settings()                      # in-memory cache, one worker
    Settings.from_env()             # honours PONGALG_CACHE_DIR / PONGALG_WORKERS
    Settings.from_env().replace(workers=4)
"""

from __future__ import annotations

import dataclasses
import os
from dataclasses import dataclass
from pathlib import Path

PHI_ORDERS = ("reversed", "forward")
OMEGA_SIDES = ("left", "right")

CACHE_DIR_ENV = "PONGALG_CACHE_DIR"
WORKERS_ENV = "PONGALG_WORKERS"


@dataclass(frozen=True)
class Settings:
    cache_dir: Path | None = None
    workers: int = 1
    arity_cap: int | None = None
    phi_order: str = "reversed"
    omega_side: str = "left"
    window_multiplier: int = 1

    def __post_init__(self) -> None:
        if self.workers < 1:
            raise ValueError(f"workers must be positive, got {self.workers}")
        if self.arity_cap is not None and self.arity_cap < 2:
            raise ValueError(f"arity cap must be at least 2, got {self.arity_cap}")
        if self.phi_order not in PHI_ORDERS:
            raise ValueError(f"phi order must be one of {PHI_ORDERS}, got {self.phi_order!r}")
        if self.omega_side not in OMEGA_SIDES:
            raise ValueError(f"omega side must be one of {OMEGA_SIDES}, got {self.omega_side!r}")
        if self.window_multiplier < 1:
            raise ValueError(f"window multiplier must be positive, got {self.window_multiplier}")

    @classmethod
    def from_env(cls, environ: dict[str, str] | None = None, **overrides) -> Settings:
        env = os.environ if environ is None else environ
        values: dict = {}
        if env.get(CACHE_DIR_ENV):
            values["cache_dir"] = Path(env[CACHE_DIR_ENV])
        if env.get(WORKERS_ENV):
            try:
                values["workers"] = int(env[WORKERS_ENV])
            except ValueError:
                raise ValueError(f"{WORKERS_ENV} must be an integer, got {env[WORKERS_ENV]!r}") from None
        values.update({k: v for k, v in overrides.items() if v is not None})
        return cls(**values)

    def replace(self, **changes) -> Settings:
        return dataclasses.replace(self, **changes)

    @property
    def cache_path(self) -> str:
        """sqlite path for the result cache."""
        if self.cache_dir is None:
            return ":memory:"
        return str(self.cache_dir / "results.sqlite3")
