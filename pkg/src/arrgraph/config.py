"""Runtime configuration with environment-variable overrides.

Every field can be overridden by an ``ARRGRAPH_``-prefixed variable,
e.g. ``ARRGRAPH_NODE_BUDGET=500000``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, fields

from .errors import ValidationError

ENV_PREFIX = "ARRGRAPH_"


@dataclass(frozen=True)
class Config:
    # Max group size for full element enumeration (kernel computation).
    enum_threshold: int = 10**6
    # Max nodes of the individualization-refinement search tree.
    node_budget: int = 10**7
    # Max vertex count for graph construction.
    vertex_guard: int = 50_000
    # Max vertex count for full enumeration of maximum independent sets.
    enumerate_all_guard: int = 60
    # Worker pool size for the verification suite.
    workers: int = 1
    # Seed for all derived RNG streams (shuffled copies, random subsets).
    seed: int = 20240811

    def __post_init__(self):
        for f in fields(self):
            v = getattr(self, f.name)
            if f.name != "seed" and v <= 0:
                raise ValidationError(f"config field {f.name} must be positive, got {v}")

    @classmethod
    def from_env(cls, **overrides) -> "Config":
        """Build a Config from ARRGRAPH_* environment variables.

        Explicit keyword overrides win over the environment.
        """
        kwargs = {}
        for f in fields(cls):
            env = os.environ.get(ENV_PREFIX + f.name.upper())
            if env is not None:
                try:
                    kwargs[f.name] = int(env)
                except ValueError:
                    raise ValidationError(
                        f"environment variable {ENV_PREFIX + f.name.upper()}={env!r} is not an integer"
                    )
        kwargs.update(overrides)
        return cls(**kwargs)


DEFAULT_CONFIG = Config()
