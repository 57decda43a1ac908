"""Verification reports and a small instance runner.

A suite is a list of :class:`InstanceSpec` plus an evaluator function that
returns the residual term count of one instance (0 means the identity holds),
or a pair (residual, passed) for instances whose expected outcome is nonzero.
Evaluators are referenced by dotted name so that instances can be shipped to
worker processes.
"""

from __future__ import annotations

import importlib
import json
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field as dc_field
from fractions import Fraction
from typing import Callable, Dict, List, Optional, Sequence, Tuple

from .coeffs import make_field


@dataclass(frozen=True)
class InstanceSpec:
    id: str
    indices: Tuple[int, ...]

    def sort_key(self):
        return (self.id, tuple(self.indices))


@dataclass
class Instance:
    id: str
    indices: List[int]
    status: str
    residual_terms: int
    ms: float

    @property
    def passed(self) -> bool:
        return self.status == "pass"


@dataclass
class Report:
    suite: str
    bounds: Dict[str, int]
    mode: str
    instances: List[Instance] = dc_field(default_factory=list)

    @property
    def status(self) -> str:
        return "pass" if all(i.passed for i in self.instances) else "fail"

    @property
    def passed(self) -> bool:
        return self.status == "pass"

    def failures(self) -> List[Instance]:
        return [i for i in self.instances if not i.passed]

    def to_dict(self) -> dict:
        return {
            "suite": self.suite,
            "bounds": dict(self.bounds),
            "mode": self.mode,
            "instances": [asdict(i) for i in self.instances],
            "status": self.status,
        }

    def to_json(self, indent: Optional[int] = 2) -> str:
        return json.dumps(self.to_dict(), indent=indent)

    @classmethod
    def from_dict(cls, d: dict) -> "Report":
        rep = cls(d["suite"], dict(d["bounds"]), d["mode"])
        rep.instances = [Instance(i["id"], list(i["indices"]), i["status"], i["residual_terms"], i["ms"])
                         for i in d["instances"]]
        if d.get("status", rep.status) != rep.status:
            raise ValueError("report status does not match its instances")
        return rep

    @classmethod
    def from_json(cls, text: str) -> "Report":
        return cls.from_dict(json.loads(text))

    def to_text(self) -> str:
        lines = [f"suite {self.suite}  mode {self.mode}  bounds "
                 + " ".join(f"{k}={v}" for k, v in sorted(self.bounds.items()))]
        for i in self.instances:
            idx = ",".join(str(x) for x in i.indices)
            extra = f"  residual_terms={i.residual_terms}" if not i.passed else ""
            lines.append(f"  {i.status:4}  {i.id}[{idx}]  {i.ms:.1f} ms{extra}")
        n_fail = len(self.failures())
        lines.append(f"{self.status.upper()}: {len(self.instances) - n_fail}/{len(self.instances)} instances passed")
        return "\n".join(lines)

    def merge(self, other: "Report") -> "Report":
        rep = Report(self.suite, {**self.bounds, **other.bounds}, self.mode)
        rep.instances = sorted(self.instances + other.instances, key=lambda i: (i.id, tuple(i.indices)))
        return rep


def mode_name(field) -> str:
    return field.name


def _resolve(name: str) -> Callable:
    mod, _, attr = name.rpartition(".")
    return getattr(importlib.import_module(mod), attr)


def _field_key(field):
    return None if field.exact else str(field.a)


def _run_one(evaluator: str, spec: InstanceSpec, field_key) -> Tuple[int, float]:
    fn = _resolve(evaluator)
    field = make_field(None if field_key is None else Fraction(field_key))
    t = time.perf_counter()
    res = fn(spec, field)
    return res, (time.perf_counter() - t) * 1000.0


def run_instances(suite: str, bounds: Dict[str, int], specs: Sequence[InstanceSpec],
                  evaluator: str, field, jobs: int = 1) -> Report:
    """Evaluate every spec and assemble a report sorted by (id, indices)."""
    specs = sorted(set(specs), key=InstanceSpec.sort_key)
    key = _field_key(field)
    if jobs > 1 and len(specs) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as ex:
            results = list(ex.map(_run_one, [evaluator] * len(specs), specs, [key] * len(specs)))
    else:
        results = [_run_one(evaluator, s, key) for s in specs]
    rep = Report(suite, dict(bounds), mode_name(field))
    for s, (res, ms) in zip(specs, results):
        # an evaluator returns a residual count (pass iff 0) or (residual, passed)
        res, ok = res if isinstance(res, tuple) else (res, res == 0)
        rep.instances.append(Instance(s.id, list(s.indices), "pass" if ok else "fail", int(res), round(ms, 3)))
    return rep
