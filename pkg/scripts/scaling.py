"""Runtime and peak memory of each suite as its bound grows.

Each point runs in a fresh subprocess so caches and peak memory are not shared.

    python scripts/scaling.py --suite ace --bound max_k --values 1 2 3 4 [--eval-q 7/5]
"""

from __future__ import annotations

import argparse
import json
import subprocess
import sys
import time
from dataclasses import asdict, dataclass
from fractions import Fraction
from typing import List, Optional

from uqace.cli import SUITE_BOUNDS


@dataclass
class Point:
    suite: str
    bound: str
    value: int
    mode: str
    status: str
    instances: int
    seconds: float
    peak_mb: float


_CHILD = (
    "import json, resource, sys\n"
    "from uqace.cli import main\n"
    "code = main(sys.argv[1:])\n"
    "print(resource.getrusage(resource.RUSAGE_SELF).ru_maxrss, file=sys.stderr)\n"
    "sys.exit(code)\n"
)


def measure(suite: str, bound: str, value: int, eval_q: Optional[Fraction]) -> Point:
    argv = ["check", suite, f"--{bound.replace('_', '-')}", str(value), "--format", "json"]
    if eval_q is not None:
        argv += ["--eval-q", str(eval_q)]
    t = time.perf_counter()
    proc = subprocess.run([sys.executable, "-c", _CHILD, *argv], capture_output=True, text=True)
    dt = time.perf_counter() - t
    if proc.returncode == 2:
        raise SystemExit(proc.stderr)
    rep = json.loads(proc.stdout)
    peak_kb = int(proc.stderr.strip().splitlines()[-1])
    return Point(suite, bound, value, rep["mode"], rep["status"], len(rep["instances"]), round(dt, 2),
                 round(peak_kb / 1024, 1))


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--suite", required=True, choices=sorted(SUITE_BOUNDS))
    p.add_argument("--bound", required=True)
    p.add_argument("--values", type=int, nargs="+", required=True)
    p.add_argument("--eval-q", type=Fraction, default=None)
    a = p.parse_args()
    if a.bound not in SUITE_BOUNDS[a.suite]:
        p.error(f"suite {a.suite} has bounds {sorted(SUITE_BOUNDS[a.suite])}")
    points: List[Point] = []
    for v in sorted(a.values):
        pt = measure(a.suite, a.bound, v, a.eval_q)
        points.append(pt)
        print(json.dumps(asdict(pt)), flush=True)
    return 0 if all(pt.status == "pass" for pt in points) else 1


if __name__ == "__main__":
    raise SystemExit(main())
