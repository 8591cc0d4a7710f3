"""Smoke test for the Python module: import, round-trips, one short run.

Runs against the build tree when FORMCTL_MODULE_DIR is set, otherwise against
an installed `formctl` package. No test framework; any failure raises.
"""

import json
import math
import os
import subprocess
import sys

mod_dir = os.environ.get("FORMCTL_MODULE_DIR")
if mod_dir:
    sys.path.insert(0, mod_dir)
    import _core as core
else:
    from formctl import _core as core

checks = 0


def ok(condition, message):
    global checks
    if not condition:
        raise AssertionError(message)
    checks += 1


# Config round-trips and validation.
demo_json = core.demo_config_json()
demo = json.loads(demo_json)
ok(demo["variant"] == "bioinspired_learning", "demo variant")
ok(demo["dt"] == 2e-5, "demo dt")
ok(core.resolve_config(demo_json) == demo_json, "resolve round-trip is the identity")
ok(core.resolve_config("{}") == demo_json.replace('"decimation": 50', '"decimation": 10'),
   "empty config resolves to the defaults")
ok(core.validate("{}") == [], "defaults validate cleanly")
problems = core.validate('{"kinematic_gains": {"k1": -1}}')
ok(any("k1" in p for p in problems), "bad gain is reported by name")
try:
    core.resolve_config('{"dtt": 1}')
    raise AssertionError("unrecognized key must raise")
except ValueError as e:
    ok("dtt" in str(e), "unrecognized key named in the error")

# One short run.
short = dict(demo, horizon=0.05)
res = core.run(json.dumps(short))
ok(res["variant"] == "bioinspired_learning", "run variant")
ok(res["steps"] == 2500, "step count for 0.05 s at dt=2e-5")
ok(res["columns"] == list(core.TRACE_COLUMNS), "columns match the module constant")
ok(len(res["columns"]) == 24, "24 trace columns")
instants = res["steps"] // res["decimation"] + 1
ok(len(res["trace"]) == instants * res["n"], "trace row count")
ok(all(len(row) == 24 for row in res["trace"]), "row width")
ok(res["trace"][0][0] == 0.0, "trace starts at t=0")
ok(abs(res["trace"][-1][0] - 0.05) < 1e-12, "trace ends at the horizon")
ok([row[1] for row in res["trace"][:3]] == [1.0, 2.0, 3.0], "robot-major row order")
ok(len(res["metrics"]) == 3, "one metrics entry per robot")
ok(all(m["total_velocity_error"] > 0 for m in res["metrics"]), "TVE positive")

# Determinism.
ok(core.run(json.dumps(short)) == res, "reruns are identical")

# Invalid scenarios raise.
try:
    core.run(json.dumps(dict(short, kinematic_gains=dict(demo["kinematic_gains"], k1=-1.0))))
    raise AssertionError("invalid scenario must raise")
except ValueError as e:
    ok("k1" in str(e), "run names the invalid gain")

# Comparison across the four variants.
tiny = dict(demo, horizon=0.02)
runs = core.compare(json.dumps(tiny))
ok([r["variant"] for r in runs] == core.variant_names(), "comparison order")
ok(core.variant_names() == [
    "backstepping", "bioinspired", "backstepping_learning", "bioinspired_learning"
], "variant names")

# Desk-scale operations.
ok(core.shunting_equilibrium(2.0) == 1.0, "shunting equilibrium at u=2")
ok(core.shunting_rate(0.0, 2.0) == 4.0, "shunting rate from rest")
ok(core.torque_command(0.4, 10.0, 0.0, 0.0, 0.0, 0.0) == (0.0, 0.0), "zero torque at rest")
left, right = core.torque_command(0.4, 10.0, 0.0, 3.0, 0.0, 0.0)
ok(abs(left - 0.15) < 1e-15 and abs(right + 0.15) < 1e-15, "pure twist torque pair")
try:
    core.torque_command(0.0, 10.0, 0.0, 0.0, 0.0, 0.0)
    raise AssertionError("parameter underflow must raise")
except RuntimeError as e:
    ok("underflow" in str(e), "underflow named in the error")

triangle = [[0.0, 1.0, 1.0], [1.0, 0.0, 1.0], [1.0, 1.0, 0.0]]
ok(core.h_min_eigenvalue(triangle, [1.0, 0.0, 0.0]) > 0.0, "formation matrix SPD")
try:
    core.h_min_eigenvalue([[0.0, 0.0], [0.0, 0.0]], [1.0, 0.0])
    raise AssertionError("disconnected topology must raise")
except ValueError:
    ok(True, "disconnected topology rejected")

leader = core.leader_state([0.0, 1.0, 0.0, 0.0, 0.0], [3.0, 0.0, 0.0, 0.0, 0.0], 2.0)
ok(leader == {"x": 2.0, "y": 3.0, "theta": 0.0, "v": 1.0, "w": 0.0}, "straight-line leader state")

# The CLI, when the harness says where it is.
cli = os.environ.get("FORMCTL_CLI")
if cli:
    out = subprocess.run([cli, "--help"], capture_output=True, text=True)
    ok(out.returncode == 0 and "demo" in out.stdout, "CLI --help")

print(f"smoke: {checks} checks passed ({'build tree' if mod_dir else 'installed package'})")
