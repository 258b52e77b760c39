"""Command dispatch over the checkers, and the bundled example batteries."""

from __future__ import annotations

import time
from importlib import resources

from .approx import is_left_approximation, is_right_approximation, quotient_hom
from .ext import ar_translate, ar_translate_inverse, ext_space
from .problem import ProblemError, ProblemFile, build_problem, parse_problem
from .rep import certify_local, cokernel, hom_basis, is_isomorphic, kernel
from .report import Report, module_to_dict, morphism_dict
from .strings import detect_string_algebra
from .structure import (
    Verdict,
    abelian_audit,
    check_hereditary_like,
    cluster_tilting_check,
    compute_epic_sets,
    enough_projectives,
    locally_finite_report,
    quasi_abelian_audit,
    quotient_morphism_class,
    twin_cotorsion_check,
)
from .structure.scope import EXHAUSTIVE, universe_scope

EXAMPLES = ("a3", "gentle3", "kronecker")
DEFAULTS = {"seed": 1, "samples": 64, "ext_enum_bound": 10 ** 5}


def example_text(name: str) -> str:
    if name not in EXAMPLES:
        raise ProblemError(f"unknown example {name!r}; known examples: {', '.join(EXAMPLES)}")
    return resources.files("quotcheck").joinpath("problems", f"{name}.problem").read_text()


def load_example(name: str, characteristic: int | None = None) -> ProblemFile:
    text = example_text(name)
    p = parse_problem(text)
    if characteristic is not None and characteristic != p.field.characteristic:
        data = dict(p.data)
        data["field"] = {"characteristic": characteristic}
        p = build_problem(data, text)
    return p


def resolve(p: ProblemFile, name: str):
    if name in p.modules:
        return p.modules[name]
    for u in p.universe:
        if repr(u) == name:
            return u
    raise ProblemError(f"unknown module {name!r}")


def _endpoints(p: ProblemFile, command: str):
    missing = [k for k in ("source", "target") if k not in p.task]
    if missing:
        raise ProblemError(f"{command} needs {' and '.join(missing)} in [task]")
    return resolve(p, p.task["source"]), resolve(p, p.task["target"])


class _Clock:
    def __init__(self, report: Report):
        self.report = report

    def __call__(self, label: str, fn, *args, **kwargs):
        t = time.perf_counter()
        out = fn(*args, **kwargs)
        self.report.timings[label] = self.report.timings.get(label, 0.0) + time.perf_counter() - t
        return out


def _task(p: ProblemFile, key: str, given):
    if given is not None:
        return given
    return p.task.get(key, DEFAULTS.get(key))


def _need_w(p: ProblemFile, command: str):
    if p.w is None:
        raise ProblemError(f"command {command!r} needs a [subcategory] section")


def _certificate(p: ProblemFile, report: Report, clock: _Clock):
    cert = clock("check-hereditary", check_hereditary_like, p.w, p.universe, p.complete)
    if cert.ok:
        report.add(Verdict("hereditary-like", True, cert.scope, {}))
        report.sections["certificate"] = cert.to_dict()
        return cert
    report.add(Verdict("hereditary-like", False, universe_scope(p.complete), cert.to_dict()))
    return None


def _validate(p: ProblemFile, report: Report, clock):
    info = detect_string_algebra(p.alg)
    local = {repr(u): bool(certify_local(u)) for u in p.universe}
    report.sections["algebra"] = {
        "dimension": p.alg.dim,
        "vertices": list(p.alg.vertices),
        "arrows": [[a.name, a.source, a.target] for a in p.alg.arrows],
        "string_algebra": info.kind,
        "path_composition": "left-to-right",
        "arrow_maps": "dims[target] x dims[source]",
    }
    report.sections["modules"] = {k: module_to_dict(m) for k, m in p.modules.items()}
    report.sections["universe_complete"] = p.complete
    report.sections["subcategory"] = [repr(m) for m in p.w.members] if p.w is not None else None
    report.add(Verdict("universe-indecomposable", all(local.values()), EXHAUSTIVE,
                       {"certified": local}))


def _hom(p: ProblemFile, report: Report, clock):
    a, b = _endpoints(p, "hom")
    space = clock("hom", hom_basis, a, b)
    sec = {"source": repr(a), "target": repr(b), "dimension": space.dim,
           "basis": [f.to_dict() for f in space.basis]}
    if p.w is not None:
        sec["quotient_dimension"] = quotient_hom(a, b, p.w).dim
    report.sections["hom"] = sec


def _ext(p: ProblemFile, report: Report, clock):
    c, a = _endpoints(p, "ext")
    sp = clock("ext", ext_space, c, a)
    report.sections["ext"] = {"first": repr(c), "last": repr(a), "dimension": sp.dim,
                              "basis": [e.realize().to_dict() for e in sp.basis()]}


def _quotient_report(p, report, cert, clock, **_):
    w = p.w
    objs = cert.non_w
    report.sections["quotient"] = {
        "indecomposables": [repr(x) for x in objs],
        "end_dimensions": {repr(x): quotient_hom(x, x, w).dim for x in objs},
        "hom_dimensions": {f"{x!r} -> {y!r}": quotient_hom(x, y, w).dim for x in objs for y in objs},
    }
    if "source" in p.task and "target" in p.task:
        a, b = resolve(p, p.task["source"]), resolve(p, p.task["target"])
        q = quotient_hom(a, b, w)
        classes = []
        for f in q.representatives():
            cls = clock("classify", quotient_morphism_class, f, cert)
            classes.append({"morphism": morphism_dict(f), "epi": cls["epi"], "mono": cls["mono"],
                            "iso": cls["iso"]})
        report.sections["morphisms"] = classes


def _qa(p, report, cert, clock, seed, samples, **_):
    report.add(clock("check-quasi-abelian", quasi_abelian_audit, cert, seed, samples))


def _abelian(p, report, cert, clock, seed, samples, bound):
    report.add(clock("check-abelian", abelian_audit, cert, seed, min(samples, 16), bound))


def _epic(p, report, cert, clock, seed, samples, bound):
    sets = clock("compute-epic-sets", compute_epic_sets, cert, seed, bound, min(samples, 16))
    report.sections["epic_sets"] = sets.to_dict()
    return sets


def _ct(p, report, cert, clock, seed, samples, bound):
    sets = _epic(p, report, cert, clock, seed, samples, bound)
    res = clock("check-cluster-tilting", cluster_tilting_check, cert, sets, seed, bound, min(samples, 16))
    for name in ("E_e", "E_m"):
        report.add(res[name])


def _twin(p, report, cert, clock, **_):
    report.add(clock("check-twin-cotorsion", twin_cotorsion_check, p.w, p.universe, cert, p.complete))


def _lf(p, report, cert, clock, **_):
    report.add(clock("locally-finite", locally_finite_report, p.universe, p.w, p.complete))


def _ep(p, report, cert, clock, seed, samples, bound):
    sets = _epic(p, report, cert, clock, seed, samples, bound)
    report.add(clock("enough-projectives", enough_projectives, cert, sets, seed))


_PLAIN = {"validate": _validate, "hom": _hom, "ext": _ext}
_CERTIFIED = {
    "quotient-report": _quotient_report,
    "check-quasi-abelian": _qa,
    "check-abelian": _abelian,
    "compute-epic-sets": _epic,
    "check-cluster-tilting": _ct,
    "check-twin-cotorsion": _twin,
    "locally-finite": _lf,
    "enough-projectives": _ep,
}


def run_command(p: ProblemFile, command: str | None = None, seed: int | None = None,
                samples: int | None = None, ext_enum_bound: int | None = None) -> Report:
    """Run one command on a parsed problem.  Input errors raise ProblemError."""
    command = command or p.task.get("command", "validate")
    seed = _task(p, "seed", seed)
    samples = _task(p, "samples", samples)
    bound = _task(p, "ext_enum_bound", ext_enum_bound)
    report = Report(command, p.fingerprint, seed)
    clock = _Clock(report)
    if command in _PLAIN:
        _PLAIN[command](p, report, clock)
    elif command == "check-hereditary":
        _need_w(p, command)
        _certificate(p, report, clock)
    elif command in _CERTIFIED:
        _need_w(p, command)
        cert = _certificate(p, report, clock)
        if cert is not None:
            _CERTIFIED[command](p, report, cert, clock, seed=seed, samples=samples, bound=bound)
    else:
        raise ProblemError(f"unknown command {command!r}")
    if command != "validate":
        report.sections["universe"] = [module_to_dict(u) for u in p.universe]
    return report


# -- bundled example batteries ---------------------------------------------

def _check(report: Report, name: str, ok: bool, scope: str, **details) -> bool:
    report.add(Verdict(name, bool(ok), scope, details))
    return bool(ok)


def _quotient_objects(report, cert, expected: list[str], tag: str):
    objs = cert.non_w
    ends = {repr(x): quotient_hom(x, x, cert.w).dim for x in objs}
    ok = [repr(x) for x in objs] == expected and all(d == 1 for d in ends.values())
    _check(report, f"{tag}quotient-indecomposables", ok, cert.scope,
           expected=expected, observed=ends)


def _battery_a3(report: Report, clock: _Clock, seed: int, samples: int):
    for char in (5, 0):
        tag = f"F{char}:" if char else "Q:"
        p = load_example("a3", char)
        cert = clock(f"{tag}check-hereditary", check_hereditary_like, p.w, p.universe, p.complete)
        if not _check(report, f"{tag}hereditary-like", cert.ok, universe_scope(p.complete),
                      observed=cert.to_dict()):
            continue
        _quotient_objects(report, cert, ["S2"], tag)
        ab = clock(f"{tag}check-abelian", abelian_audit, cert, seed)
        _check(report, f"{tag}abelian", ab.value == "abelian" and ab.scope == EXHAUSTIVE, ab.scope,
               observed=ab.to_dict())
        sets = clock(f"{tag}compute-epic-sets", compute_epic_sets, cert, seed)
        ct = clock(f"{tag}check-cluster-tilting", cluster_tilting_check, cert, sets, seed)
        _check(report, f"{tag}cluster-tilting-E_e", ct["E_e"].positive and ab.positive == ct["E_e"].positive,
               ct["E_e"].scope, observed=ct["E_e"].to_dict())
        qa = clock(f"{tag}check-quasi-abelian", quasi_abelian_audit, cert, seed, samples)
        _check(report, f"{tag}quasi-abelian", qa.positive, qa.scope, observed=qa.details["checks"])


def _battery_gentle3(report: Report, clock: _Clock, seed: int, samples: int):
    p = load_example("gentle3")
    s1, s2, s3 = resolve(p, "S1"), resolve(p, "S2"), resolve(p, "S3")
    m31, m23 = resolve(p, "M31"), resolve(p, "M23")
    tau = clock("ar-translate", ar_translate, s3)
    tau_inv = clock("ar-translate", ar_translate_inverse, s3)
    _check(report, "tau-S3-is-S1", is_isomorphic(tau, s1)[0], EXHAUSTIVE, observed=module_to_dict(tau))
    _check(report, "tau-inverse-S3-is-S2", is_isomorphic(tau_inv, s2)[0], EXHAUSTIVE,
           observed=module_to_dict(tau_inv))
    h = hom_basis(m31, s3)
    _check(report, "dim-Hom-M31-S3", h.dim == 1, EXHAUSTIVE, expected=1, observed=h.dim)

    # 0 -> S1 -> M31 -> S3 -> 0 and 0 -> S3 -> M23 -> S2 -> 0
    surj = h.basis[0] if h.dim else None
    ok = surj is not None and surj.is_surjective() and is_isomorphic(kernel(surj)[0], s1)[0]
    ok = ok and is_right_approximation(surj, p.w)
    _check(report, "right-approximation-M31-S3", ok, universe_scope(p.complete),
           morphism=morphism_dict(surj) if surj is not None else None)
    hi = hom_basis(s3, m23)
    inj = hi.basis[0] if hi.dim == 1 else None
    ok = inj is not None and inj.is_injective() and is_isomorphic(cokernel(inj)[0], s2)[0]
    ok = ok and is_left_approximation(inj, p.w)
    _check(report, "left-approximation-S3-M23", ok, universe_scope(p.complete),
           morphism=morphism_dict(inj) if inj is not None else None)

    cert = clock("check-hereditary", check_hereditary_like, p.w, p.universe, p.complete)
    if not _check(report, "hereditary-like", cert.ok, universe_scope(p.complete), observed=cert.to_dict()):
        return
    _quotient_objects(report, cert, ["S3"], "")
    ab = clock("check-abelian", abelian_audit, cert, seed)
    _check(report, "abelian", ab.value == "abelian", ab.scope, observed=ab.to_dict())
    sets = clock("compute-epic-sets", compute_epic_sets, cert, seed)
    ct = clock("check-cluster-tilting", cluster_tilting_check, cert, sets, seed)
    for name in ("E_e", "E_m"):
        _check(report, f"cluster-tilting-{name}", ct[name].positive, ct[name].scope,
               observed=ct[name].to_dict())
    qa = clock("check-quasi-abelian", quasi_abelian_audit, cert, seed, samples)
    _check(report, "quasi-abelian", qa.positive, qa.scope, observed=qa.details["checks"])


def _battery_kronecker(report: Report, clock: _Clock, seed: int, samples: int):
    p = load_example("kronecker")
    cert = clock("check-hereditary", check_hereditary_like, p.w, p.universe, p.complete)
    if not _check(report, "hereditary-like", cert.ok, universe_scope(p.complete), observed=cert.to_dict()):
        return
    qa = clock("check-quasi-abelian", quasi_abelian_audit, cert, seed, samples)
    _check(report, "quasi-abelian", qa.positive, qa.scope, observed=qa.details["checks"],
           failures=qa.details["failures"])
    ab = clock("check-abelian", abelian_audit, cert, seed)
    sets = clock("compute-epic-sets", compute_epic_sets, cert, seed)
    ct = clock("check-cluster-tilting", cluster_tilting_check, cert, sets, seed)
    e = ct["E_e"]
    agree = (ab.value == "abelian" and e.value is True) or (ab.value == "counterexample" and e.value is False)
    _check(report, "abelian-agrees-with-cluster-tilting", agree, ab.scope,
           abelian=ab.to_dict(), cluster_tilting=e.to_dict())


_BATTERIES = {"a3": _battery_a3, "gentle3": _battery_gentle3, "kronecker": _battery_kronecker}


def reproduce_example(name: str, seed: int = 1, samples: int = 64) -> Report:
    """Run the acceptance battery for a bundled example."""
    text = example_text(name)
    report = Report(f"reproduce {name}", parse_problem(text).fingerprint, seed)
    _BATTERIES[name](report, _Clock(report), seed, samples)
    return report
