"""Problem files: a TOML description of an algebra, modules, W, a universe and a task.

Sections::

    [field]        characteristic = 0 | p
    [quiver]       vertices, arrows = [[name, source, target], ...],
                   relations = ["a b", {terms = [["1", "a b"], ["-1", "c d"]]}],
                   max_path_len
    [modules.NAME] kind = simple | projective | injective | explicit | string | band
    [subcategory]  members = [...] | complement = [...] | standard = "proj-inj"
    [universe]     strings_max_len, bands, extras, explicit, complete
    [task]         command, seed, samples, ext_enum_bound, source, target
"""

from __future__ import annotations

import hashlib
import re
import sys
from dataclasses import dataclass, field

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

import tomli_w

from .approx import SubcategorySpec
from .linalg import Field, FieldError, Matrix
from .quiver import Arrow, BoundQuiver, QuiverError, Relation, validate_algebra
from .rep import Representation, RepresentationError, is_isomorphic, standard_module
from .strings import (
    StringError,
    band_module,
    detect_string_algebra,
    enumerate_strings,
    make_string,
    string_module,
)

COMMANDS = (
    "validate", "hom", "ext", "check-hereditary", "quotient-report", "check-quasi-abelian",
    "check-abelian", "compute-epic-sets", "check-cluster-tilting", "check-twin-cotorsion",
    "locally-finite", "enough-projectives",
)

SECTION_KEYS = {
    "field": {"characteristic"},
    "quiver": {"vertices", "arrows", "relations", "max_path_len"},
    "subcategory": {"name", "members", "complement", "standard"},
    "universe": {"strings_max_len", "bands", "extras", "explicit", "complete"},
    "task": {"command", "seed", "samples", "ext_enum_bound", "source", "target"},
}
MODULE_KEYS = {
    "simple": {"kind", "vertex"},
    "projective": {"kind", "vertex"},
    "injective": {"kind", "vertex"},
    "explicit": {"kind", "dims", "maps"},
    "string": {"kind", "word", "start"},
    "band": {"kind", "word", "lambda", "n"},
}
BAND_KEYS = {"word", "n", "lambda"}


class ProblemError(ValueError):
    """A problem-file error with an optional 1-based line and column."""

    def __init__(self, message: str, line: int | None = None, col: int | None = None):
        self.line, self.col = line, col
        where = f"line {line}, column {col}: " if line is not None else ""
        super().__init__(where + message)


def _locate(text: str, section: str | None, key: str | None) -> tuple[int | None, int | None]:
    """Best-effort position of a key inside a section header block."""
    lines = text.splitlines()
    start = 0
    if section is not None:
        pat = re.compile(r"^\s*\[\s*" + re.escape(section).replace(r"\.", r"\s*\.\s*") + r"\s*\]")
        for i, ln in enumerate(lines):
            if pat.match(ln):
                start = i
                if key is None:
                    return i + 1, ln.index("[") + 1
                break
        else:
            return None, None
    if key is None:
        return None, None
    kpat = re.compile(r'^\s*("?)' + re.escape(key) + r'\1\s*=')
    for i in range(start, len(lines)):
        if i > start and section is not None and lines[i].lstrip().startswith("["):
            break
        if kpat.match(lines[i]):
            return i + 1, lines[i].index(key) + 1
    return start + 1 if section else None, 1 if section else None


@dataclass
class ProblemFile:
    """A parsed, validated problem: the normalized data plus the built objects."""

    data: dict
    field: Field
    alg: object
    modules: dict[str, Representation]
    universe: list[Representation]
    w: SubcategorySpec | None
    complete: bool
    task: dict = field(default_factory=dict)

    def __eq__(self, other):
        return isinstance(other, ProblemFile) and self.data == other.data

    @property
    def fingerprint(self) -> str:
        return hashlib.sha256(serialize_problem(self).encode()).hexdigest()[:16]


def serialize_problem(p: ProblemFile | dict) -> str:
    data = p.data if isinstance(p, ProblemFile) else p
    return tomli_w.dumps(data)


def _err(text, msg, section=None, key=None):
    line, col = _locate(text, section, key)
    return ProblemError(msg, line, col)


def _check_keys(text, table: dict, allowed: set, section: str):
    for k in table:
        if k not in allowed:
            raise _err(text, f"unknown key '{k}' in [{section}]", section, k)


def _scalar_text(x) -> str:
    return str(x)


def parse_problem(text: str, overrides: dict | None = None) -> ProblemFile:
    """Parse and build a problem; errors carry line/column where possible."""
    try:
        data = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        m = re.search(r"line (\d+), column (\d+)", str(exc))
        raise ProblemError(f"syntax error: {exc}", *(map(int, m.groups()) if m else (None, None))) from None
    if "quiver" not in data:
        raise ProblemError("missing [quiver]")
    if "field" not in data:
        raise ProblemError("missing [field]")
    for sec in data:
        if sec not in SECTION_KEYS and sec != "modules":
            raise _err(text, f"unknown section [{sec}]", sec)
    for sec, allowed in SECTION_KEYS.items():
        if sec in data:
            if not isinstance(data[sec], dict):
                raise _err(text, f"[{sec}] must be a table", None, sec)
            _check_keys(text, data[sec], allowed, sec)
    if overrides:
        data.setdefault("task", {}).update({k: v for k, v in overrides.items() if v is not None})
        data.setdefault("universe", {})
        if "strings_max_len" in overrides and overrides["strings_max_len"] is not None:
            data["universe"]["strings_max_len"] = overrides["strings_max_len"]
            data["task"].pop("strings_max_len", None)
    return build_problem(data, text)


def build_problem(data: dict, text: str = "") -> ProblemFile:
    # field
    try:
        F = Field(int(data["field"].get("characteristic", 0)))
    except (FieldError, ValueError, TypeError) as exc:
        raise _err(text, f"invalid field characteristic: {exc}", "field", "characteristic") from None
    # quiver
    q = data["quiver"]
    for key in ("vertices", "arrows"):
        if key not in q:
            raise _err(text, f"missing '{key}' in [quiver]", "quiver")
    try:
        vertices = tuple(str(v) for v in q["vertices"])
        arrows = []
        for a in q["arrows"]:
            if not isinstance(a, list) or len(a) != 3:
                raise _err(text, "each arrow must be [name, source, target]", "quiver", "arrows")
            arrows.append(Arrow(str(a[0]), str(a[1]), str(a[2])))
        base = BoundQuiver(vertices, tuple(arrows))
        rels = []
        for r in q.get("relations", []):
            if isinstance(r, str):
                rels.append(Relation(((1, base.path(r)),)))
            elif isinstance(r, dict) and set(r) == {"terms"}:
                rels.append(Relation(tuple((F.scalar(str(c)), base.path(p)) for c, p in r["terms"])))
            else:
                raise _err(text, "a relation is a path string or {terms = [[coef, path], ...]}",
                           "quiver", "relations")
        quiver = BoundQuiver(vertices, tuple(arrows), tuple(rels))
        alg = validate_algebra(quiver, F, int(q.get("max_path_len", 8)))
    except QuiverError as exc:
        raise _err(text, str(exc), "quiver", None) from None

    modules: dict[str, Representation] = {}
    for name, spec in data.get("modules", {}).items():
        modules[name] = _build_module(text, alg, name, spec)

    universe, complete = _build_universe(text, alg, data.get("universe", {}), modules)
    w = _build_subcategory(text, alg, data.get("subcategory"), modules, universe)
    task = dict(data.get("task", {}))
    cmd = task.get("command", "validate")
    if cmd not in COMMANDS:
        raise _err(text, f"unknown command '{cmd}'; known: {', '.join(COMMANDS)}", "task", "command")
    for key in ("source", "target"):
        if key in task and task[key] not in modules and not any(repr(u) == task[key] for u in universe):
            raise _err(text, f"task {key} '{task[key]}' is not a defined module", "task", key)
    return ProblemFile(data, F, alg, modules, universe, w, complete, task)


def _build_module(text, alg, name, spec) -> Representation:
    sec = f"modules.{name}"
    if not isinstance(spec, dict) or "kind" not in spec:
        raise _err(text, f"module '{name}' needs a kind", sec)
    kind = spec["kind"]
    if kind not in MODULE_KEYS:
        raise _err(text, f"module '{name}': unknown kind '{kind}'", sec, "kind")
    _check_keys(text, spec, MODULE_KEYS[kind], sec)
    try:
        if kind in ("simple", "projective", "injective"):
            m = standard_module(alg, kind, str(spec["vertex"]))
        elif kind == "explicit":
            dims = {str(k): int(v) for k, v in spec.get("dims", {}).items()}
            for v in dims:
                if v not in alg.vertices:
                    raise _err(text, f"module '{name}': unknown vertex '{v}'", sec, "dims")
            maps = {}
            for a, rows in spec.get("maps", {}).items():
                if a not in alg.quiver.arrow_map:
                    raise _err(text, f"module '{name}': unknown arrow '{a}'", sec, "maps")
                arr = alg.arrow(a)
                shape = (dims.get(arr.target, 0), dims.get(arr.source, 0))
                mat = Matrix.from_rows(alg.field, [[str(x) for x in r] for r in rows], cols=shape[1])
                if mat.shape != shape:
                    raise _err(text, f"module '{name}': arrow {a} needs a {shape[0]}x{shape[1]} matrix",
                               sec, "maps")
                maps[a] = mat
            m = Representation(alg, dims, maps)
        elif kind == "string":
            m = string_module(alg, make_string(alg, spec.get("word", ""), spec.get("start")))
        else:
            m = band_module(alg, spec["word"], str(spec.get("lambda", "1")), int(spec.get("n", 1)))
    except KeyError as exc:
        raise _err(text, f"module '{name}': missing key {exc.args[0]}", sec) from None
    except (QuiverError, RepresentationError, StringError, FieldError, ValueError) as exc:
        if isinstance(exc, ProblemError):
            raise
        raise _err(text, f"module '{name}': {exc}", sec) from None
    return m.with_name(name)


def _dedupe(objs: list[Representation]) -> list[Representation]:
    out: list[Representation] = []
    for m in objs:
        if any(m.key == x.key or (m.dim_vector == x.dim_vector and is_isomorphic(m, x)[0]) for x in out):
            continue
        out.append(m)
    return out


def _resolve(text, name, modules, universe, section, key):
    if name in modules:
        return modules[name]
    for u in universe:
        if repr(u) == name:
            return u
    raise _err(text, f"'{name}' is not a defined module", section, key)


def _build_universe(text, alg, spec, modules) -> tuple[list[Representation], bool]:
    objs: list[Representation] = []
    complete = bool(spec.get("complete", False))
    for b in spec.get("bands", []):
        if not isinstance(b, dict) or not set(b) <= BAND_KEYS:
            raise _err(text, "each band entry is {word, n = [...], lambda = [...]}", "universe", "bands")
    if "explicit" in spec:
        for name in spec["explicit"]:
            objs.append(_resolve(text, name, modules, [], "universe", "explicit"))
    if "strings_max_len" in spec:
        L = int(spec["strings_max_len"])
        if detect_string_algebra(alg).kind == "neither":
            raise _err(text, "strings_max_len needs a string algebra", "universe", "strings_max_len")
        words = enumerate_strings(alg, L)
        objs.extend(string_module(alg, s) for s in words)
        if len(enumerate_strings(alg, L + 1)) == len(words) and not spec.get("bands"):
            complete = True
    for b in spec.get("bands", []):
        for n in b.get("n", [1]):
            for lam in b.get("lambda", ["1"]):
                try:
                    objs.append(band_module(alg, b["word"], str(lam), int(n)))
                except (StringError, FieldError) as exc:
                    raise _err(text, f"band '{b.get('word')}': {exc}", "universe", "bands") from None
    for name in spec.get("extras", []):
        objs.append(_resolve(text, name, modules, [], "universe", "extras"))
    objs = _dedupe(objs)
    # prefer the user's names for universe objects
    for i, u in enumerate(objs):
        for name, m in modules.items():
            if m.key == u.key:
                objs[i] = m
                break
    return objs, complete


def _build_subcategory(text, alg, spec, modules, universe) -> SubcategorySpec | None:
    if spec is None:
        return None
    name = spec.get("name", "W")
    modes = [k for k in ("members", "complement", "standard") if k in spec]
    if len(modes) != 1:
        raise _err(text, "[subcategory] needs exactly one of members, complement, standard", "subcategory")

    def match(m):
        for u in universe:
            if u.key == m.key or (u.dim_vector == m.dim_vector and is_isomorphic(u, m)[0]):
                return u
        return m

    if "members" in spec:
        members = [match(_resolve(text, n, modules, universe, "subcategory", "members"))
                   for n in spec["members"]]
        return SubcategorySpec(name, _dedupe(members))
    if "complement" in spec:
        excluded = [_resolve(text, n, modules, universe, "subcategory", "complement")
                    for n in spec["complement"]]
        members = [u for u in universe
                   if not any(u.dim_vector == e.dim_vector and is_isomorphic(u, e)[0] for e in excluded)]
        return SubcategorySpec(name, members, excluded=excluded)
    if spec["standard"] != "proj-inj":
        raise _err(text, f"unknown standard subcategory '{spec['standard']}'", "subcategory", "standard")
    mods = [standard_module(alg, k, v) for k in ("projective", "injective") for v in alg.vertices]
    return SubcategorySpec(name, _dedupe([match(m) for m in mods]))


def load_problem(path, overrides: dict | None = None) -> ProblemFile:
    with open(path, encoding="utf-8") as fh:
        return parse_problem(fh.read(), overrides)
