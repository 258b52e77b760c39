"""Machine-readable reports.

Reports serialize to JSON with sorted keys.  Matrices are row-major lists of
canonical scalar strings, modules are dimension vectors plus arrow matrices,
and timings are included only on request so that reports for the same
(problem, seed) are byte-identical.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .ext import ExtClass
from .linalg import Matrix
from .rep import RepMorphism, Representation
from .structure.scope import Verdict


def module_to_dict(m: Representation) -> dict:
    return {
        "name": repr(m),
        "dims": {v: m.dims[v] for v in m.alg.vertices},
        "maps": {a: mat.to_strings() for a, mat in m.maps.items()},
    }


def to_jsonable(obj):
    """Convert checker outputs into plain JSON values."""
    if obj is None or isinstance(obj, (bool, str, int, float)):
        return obj
    if isinstance(obj, (np.integer,)):
        return int(obj)
    if isinstance(obj, np.bool_):
        return bool(obj)
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, Matrix):
        return obj.to_strings()
    if isinstance(obj, Representation):
        return module_to_dict(obj)
    if isinstance(obj, ExtClass):
        return {"coords": [str(c) for c in obj.coords], "conflation": obj.realize().to_dict()}
    if hasattr(obj, "to_dict") and callable(obj.to_dict):
        return to_jsonable(obj.to_dict())
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, (set, frozenset)):
        return sorted(to_jsonable(v) for v in obj)
    return repr(obj)


@dataclass
class Report:
    command: str
    fixture: str
    seed: int | None = None
    verdicts: list[Verdict] = field(default_factory=list)
    sections: dict = field(default_factory=dict)
    timings: dict = field(default_factory=dict)
    input_error: str | None = None

    def add(self, v: Verdict) -> Verdict:
        self.verdicts.append(v)
        return v

    @property
    def negative(self) -> bool:
        return any(v.negative for v in self.verdicts)

    @property
    def exit_code(self) -> int:
        if self.input_error is not None:
            return 1
        return 2 if self.negative else 0

    def to_dict(self, timings: bool = False) -> dict:
        out = {
            "command": self.command,
            "fixture": self.fixture,
            "seed": self.seed,
            "verdicts": [to_jsonable(v) for v in self.verdicts],
            "sections": to_jsonable(self.sections),
            "exit_code": self.exit_code,
        }
        if self.input_error is not None:
            out["input_error"] = self.input_error
        if timings:
            out["timings"] = {k: round(v, 4) for k, v in self.timings.items()}
        return out

    def to_json(self, timings: bool = False) -> str:
        return json.dumps(self.to_dict(timings), sort_keys=True, indent=2) + "\n"


def morphism_dict(f: RepMorphism) -> dict:
    return {"source": repr(f.source), "target": repr(f.target), "components": f.to_dict()}
