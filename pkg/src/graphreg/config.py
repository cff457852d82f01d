"""Global numerical configuration.

Every tolerance, window and grid size used anywhere in the package lives
here so that reports can echo the exact settings they were produced with.
"""

from __future__ import annotations

import dataclasses
import json
from dataclasses import dataclass


@dataclass(frozen=True)
class Config:
    # linear-algebra thresholds
    subspace_tol: float = 1e-10      # rank / subspace-equality cutoff
    graph_angle_tol: float = 1e-8    # minimal principal angle (radians) for graph-ness
    kernel_tol: float = 1e-12        # smallest admitted singular value of a, a_*
    residual_tol: float = 1e-10      # operator identity residuals (finite dim)
    symbol_residual_tol: float = 1e-9  # pointwise identity residuals (symbols)

    # singularity detector
    limit_tol: float = 1e-6          # Cauchy / declared-limit agreement
    blowup: float = 1e6              # |m| threshold for divergence to infinity
    osc_rel_var: float = 1e-3        # relative variance marking bounded oscillation
    approach_steps: int = 40         # geometric samples per side, ratio 1/2
    approach_start: float = 0.5      # first offset from the puncture
    tail_samples: int = 10           # classification window at the end of a run

    # behaviour at infinity
    inf_start: float = 1.0           # first |x| when sampling towards infinity
    inf_reach: float = 1e8           # cap so trig arguments stay meaningful
    vanish_window: float = 1e4       # R: C0 test looks at |x| > R
    vanish_tol: float = 1e-4         # |f| bound outside the window

    # pointwise zero tests on symbols
    zero_tol: float = 1e-8
    value_agreement_tol: float = 1e-9

    # grids
    grid_points: int = 10_000        # bulk sample count for identity checks
    dyadic_depth: int = 40           # refinement levels near punctures

    # polynomial / Toeplitz lab
    circle_samples: int = 2048
    root_circle_tol: float = 1e-7
    coprime_tol: float = 1e-10
    max_poly_degree: int = 24

    def to_dict(self) -> dict:
        return dataclasses.asdict(self)

    @staticmethod
    def from_dict(data: dict) -> "Config":
        known = {f.name for f in dataclasses.fields(Config)}
        unknown = set(data) - known
        if unknown:
            raise ValueError(f"unknown config keys: {sorted(unknown)}")
        return Config(**data)

    @staticmethod
    def load(path: str) -> "Config":
        with open(path, "r", encoding="utf-8") as fh:
            return Config.from_dict(json.load(fh))


DEFAULT = Config()
