"""Resource ceilings, optionally overridden by a JSON config file.

The config file path is taken from the COMODFILT_CONFIG environment
variable; CLI flags override config values, which override the defaults.
"""

from __future__ import annotations

import json
import os
from dataclasses import dataclass, replace

CONFIG_ENV = "COMODFILT_CONFIG"


class ResourceLimitError(RuntimeError):
    """A requested computation exceeds a configured resource ceiling."""


@dataclass(frozen=True)
class Limits:
    max_ambient: int = 5000          # largest dense ambient dimension
    max_coalgebra_dim: int = 30      # largest sub-coalgebra for cobar/injectivity
    max_chain_dim: int = 100000      # largest materialized CH^n
    max_solver_unknowns: int = 20000  # largest linear-solve unknown count
    max_dmax: int = 64               # largest CLI filtration sweep


def load_limits() -> Limits:
    limits = Limits()
    path = os.environ.get(CONFIG_ENV)
    if not path:
        return limits
    with open(path) as fh:
        data = json.load(fh)
    known = {k: int(v) for k, v in data.items() if k in Limits.__dataclass_fields__}
    return replace(limits, **known)


def check_limit(value: int, ceiling: int, what: str):
    if value > ceiling:
        raise ResourceLimitError(
            f"{what} = {value} exceeds the configured ceiling {ceiling}")
