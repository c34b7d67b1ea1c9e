"""Smoke test for the extension module and the command-line binary."""

import json
import math
import os
import subprocess
import sys

import _mielab as m


def check(cond, msg):
    if not cond:
        print("FAIL:", msg)
        sys.exit(1)


def main():
    t = m.thresholds()
    check(abs(t["S_crit_nats"] - 1.94) < 5e-3, "S_crit nats")
    check(t["chi_crit"] == 7, "chi_crit")
    check(t["brickwork_crude_q"] == 419479, "brickwork crude threshold")

    check(m.count_rooted_walks("square", 10) == 44100, "square walk count")
    check(m.count_rooted_polygons("square", 4) == 4, "square polygon count")

    z = m.zsaw(4, 3, 2.0, 10)
    check(z["tail_certified"], "certified tail")
    check(z["total_upper"] < 3 * math.exp(-(2.0 - 0.97) * 4) * (1 + 1e-9), "strip bound")

    b = m.bound_chain(math.exp(-3.0))
    check(b["valid"] and b["d_prime"] == 45, "bound chain")

    e = m.mie_monte_carlo(1, 3, 2, 4, seed=7)
    check(len(e["per_circuit"]) == 4, "per-circuit values")
    check(all(v >= -1e-12 for v in e["per_circuit"]), "nonnegative entanglement")

    p = m.predicted_swap_moments(2, 2, 2)
    check(abs(p["Zmp"] - 0.25) < 1e-12, "spin-sum prediction")
    mc = m.swap_trick_moments(2, 2, 2, 100, seed=11)
    check(abs(mc["numerator"] - p["numerator"]) < 5 * mc["numerator_stderr"] + 1e-12,
          "replica moment agreement")

    r = m.tripartite_experiment(1, 2, 2, 30, seed=5)
    check(0.0 <= r["p_hat"] <= 1.0, "tripartite statistics")

    s = m.sebd_sample(4, 4, 2, chi_max=16, seed=9)
    check(len(s["outcomes"]) == 16 and not s["aborted"], "sidewise sampling")

    c = m.run_criterion(1)
    check(c["pass"], "criterion 1 via bindings")

    code, out, err = m.run_cli(["mielab", "thresholds"])
    check(code == 0 and "chi_crit" in out, "in-process CLI")

    cli = os.environ.get("MIELAB_CLI")
    if cli:
        res = subprocess.run([cli, "thresholds", "--format", "json"],
                             capture_output=True, text=True, check=True)
        doc = json.loads(res.stdout)
        check(doc["chi_crit"] == 7, "binary CLI output")

    print("smoke test passed")


if __name__ == "__main__":
    main()
