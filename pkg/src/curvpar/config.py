"""Tolerance policy for every numeric decision in the pipeline.

The defaults are the documented policy; a config file and CLI flags may
override any of them.  Exact-rational inputs bypass the tolerances entirely.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    # rank / zero decisions on numeric data (relative to the largest scale)
    eps_rank: float = 1e-9
    # "vanishing" 1-jet entries after numeric adaptation
    eps_jet: float = 1e-10
    # orthogonality of computed frames
    eps_orth: float = 1e-12
    # relative discriminant threshold for the double-root decision
    eps_disc: float = 1e-10
    # oracle scan: grid extent, point counts and marking thresholds
    scan_window: float = 50.0
    scan_points: int = 100_000
    scan_nu_grid: int = 720
    scan_zero_tol: float = 1e-6
    scan_saturation: float = 0.99
    # finite-difference step for the Hessian oracle
    fd_step: float = 1e-4
    # oracle agreement tolerances (looser than closed-form ones by design)
    oracle_hull_tol: float = 1e-7
    oracle_root_tol: float = 1e-3
    oracle_hessian_tol: float = 1e-6

    def updated(self, **kwargs) -> "Tolerances":
        return replace(self, **kwargs)

    @classmethod
    def from_file(cls, path) -> "Tolerances":
        """Load overrides from a JSON file; unknown keys are rejected."""
        with open(path, "r", encoding="utf-8") as fh:
            data = json.load(fh)
        known = {f.name for f in fields(cls)}
        bad = set(data) - known
        if bad:
            raise ValueError(f"unknown tolerance keys in {path}: {sorted(bad)}")
        return cls(**data)


DEFAULT_TOL = Tolerances()
