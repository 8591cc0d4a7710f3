"""Distributed leader-follower formation control simulation engine.

Scenarios are JSON strings (every key optional); `run` and `compare` return
plain dicts whose `trace` rows follow `TRACE_COLUMNS`.
"""

from formctl._core import (
    TRACE_COLUMNS,
    __version__,
    compare,
    demo_config_json,
    h_min_eigenvalue,
    leader_state,
    resolve_config,
    run,
    shunting_equilibrium,
    shunting_rate,
    torque_command,
    validate,
    validate_topology,
    variant_names,
)

__all__ = [
    "TRACE_COLUMNS",
    "__version__",
    "compare",
    "demo_config_json",
    "h_min_eigenvalue",
    "leader_state",
    "resolve_config",
    "run",
    "shunting_equilibrium",
    "shunting_rate",
    "torque_command",
    "validate",
    "validate_topology",
    "variant_names",
]
