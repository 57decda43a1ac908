"""Run every verification suite at its default bounds and write one JSON report per suite.

    python scripts/run_suites.py --out reports/ [--eval-q 7/5] [--jobs 2] [--suites ace genfun]
"""

from __future__ import annotations

import argparse
import json
import time
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import List, Optional

import uqace
from uqace.cli import SUITES, SuiteConfig, run_suite


@dataclass
class RunConfig:
    out: Path = Path("reports")
    eval_q: Optional[Fraction] = None
    jobs: int = 1
    suites: List[str] = field(default_factory=lambda: list(SUITES))


def run(cfg: RunConfig) -> bool:
    cfg.out.mkdir(parents=True, exist_ok=True)
    mode = "exact" if cfg.eval_q is None else f"eval-{cfg.eval_q.numerator}-{cfg.eval_q.denominator}"
    all_ok = True
    for name in cfg.suites:
        uqace.clear_caches()
        t = time.perf_counter()
        rep = run_suite(SuiteConfig(name, eval_q=cfg.eval_q, jobs=cfg.jobs))
        dt = time.perf_counter() - t
        path = cfg.out / f"{name}-{mode}.json"
        path.write_text(rep.to_json() + "\n")
        n_fail = len(rep.failures())
        print(f"{name:8} {rep.status:4} {len(rep.instances):4} instances  {n_fail} failed  {dt:8.1f} s  -> {path}")
        all_ok &= rep.passed
    return all_ok


def main() -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--out", type=Path, default=Path("reports"))
    p.add_argument("--eval-q", type=Fraction, default=None)
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--suites", nargs="+", choices=SUITES, default=list(SUITES))
    a = p.parse_args()
    ok = run(RunConfig(a.out, a.eval_q, a.jobs, a.suites))
    summary = {"status": "pass" if ok else "fail"}
    print(json.dumps(summary))
    return 0 if ok else 1


if __name__ == "__main__":
    raise SystemExit(main())
