"""Compare the compiled series kernels against the pure-Python fallback.

Run from the repository root:

    python3 benchmarks/bench_kernels.py [--repeat 2000]

The compiled backend is whatever `import mockchar` picks by default; the
fallback is forced in a subprocess with MOCKCHAR_BACKEND=py so both sides use
their real import paths.
"""

from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys
import time

CASES = (
    ("theta1", "backend.theta1_raw(0.17 + 0.05j, 1.1j, 64)"),
    ("theta3", "backend.theta3_raw(0.17 + 0.05j, 1.1j, 64)"),
    ("eta_prod", "backend.eta_prod_raw(1.1j, 256)"),
    ("eta_pent", "backend.eta_pent_raw(1.1j, 64)"),
    ("appell_K3", "backend.appell_raw(3, 0.17 + 0.05j, 0.31j, 1.1j, 64)"),
    ("appell_K7", "backend.appell_raw(7, 0.17 + 0.05j, 0.31j, 1.1j, 64)"),
)


def _time_one(stmt: str, repeat: int) -> float:
    from mockchar import backend  # noqa: F401  (bound into the eval scope below)

    scope = {"backend": backend}
    expr = compile(stmt, "<bench>", "eval")
    eval(expr, scope)  # warm caches / JIT-free sanity run
    best = float("inf")
    for _ in range(5):
        t0 = time.perf_counter()
        for _ in range(repeat):
            eval(expr, scope)
        best = min(best, time.perf_counter() - t0)
    return best / repeat


def run_worker(repeat: int) -> None:
    from mockchar import backend

    rows = {"backend": backend.backend_name()}
    for name, stmt in CASES:
        rows[name] = _time_one(stmt, repeat)
    print(json.dumps(rows))


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--repeat", type=int, default=2000)
    parser.add_argument("--worker", action="store_true", help=argparse.SUPPRESS)
    args = parser.parse_args()
    if args.worker:
        run_worker(args.repeat)
        return 0

    def spawn(env_backend: str | None) -> dict:
        env = dict(os.environ)
        env.pop("MOCKCHAR_BACKEND", None)
        if env_backend:
            env["MOCKCHAR_BACKEND"] = env_backend
        out = subprocess.run(
            [sys.executable, os.path.abspath(__file__), "--worker", "--repeat", str(args.repeat)],
            env=env,
            capture_output=True,
            text=True,
            check=True,
        )
        return json.loads(out.stdout)

    default = spawn(None)
    fallback = spawn("py")
    print("default backend:  %s" % default["backend"])
    print("fallback backend: %s" % fallback["backend"])
    print()
    print("%-12s %14s %14s %8s" % ("kernel", "default (us)", "python (us)", "speedup"))
    for name, _ in CASES:
        d, p = default[name], fallback[name]
        print("%-12s %14.2f %14.2f %7.1fx" % (name, d * 1e6, p * 1e6, p / d))
    if default["backend"] == fallback["backend"]:
        print("\nnote: compiled backend unavailable; both columns ran the fallback")
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
