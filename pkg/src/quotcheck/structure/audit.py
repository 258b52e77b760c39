"""Sampled audits of the quasi-abelian and abelian properties of E/W."""

from __future__ import annotations

import numpy as np

from ..approx import is_relative_epic, is_relative_monic, quotient_hom
from ..linalg import projective_points
from ..rep import (
    RepMorphism,
    column_map,
    direct_sum,
    hom_basis,
    row_map,
    sum_inclusion,
    sum_projection,
)
from .quotient import (
    is_cokernel_of,
    is_kernel_of,
    quotient_cokernel,
    quotient_inverse,
    quotient_kernel,
)
from .scope import Verdict, sampled_scope, universe_scope


def _pick_morphism(cert, rng, i):
    """A seeded morphism between universe objects; half the draws touch a non-W object."""
    objs = cert.universe
    for _ in range(12):
        a = objs[rng.integers(len(objs))]
        b = objs[rng.integers(len(objs))]
        if cert.non_w and i % 2 == 0:
            if rng.integers(2):
                a = cert.non_w[rng.integers(len(cert.non_w))]
            else:
                b = cert.non_w[rng.integers(len(cert.non_w))]
        space = hom_basis(a, b)
        if space.dim:
            if i % 3 == 0:
                return space.basis[int(rng.integers(space.dim))]
            return space.random(rng)
    return RepMorphism.zero(a, b)


def _triangle_ok(conf, w) -> tuple[bool, str]:
    if not conf.is_valid():
        return False, "witness is not a conflation"
    if not is_relative_monic(conf.x, w):
        return False, "witness inflation is not W-monic"
    if not is_relative_epic(conf.y, w):
        return False, "witness deflation is not W-epic"
    return True, ""


def _audit_one(f, cert, rng) -> list[tuple[str, bool, str]]:
    w = cert.w
    out = []
    a, b = f.source, f.target
    k = quotient_kernel(f, cert)
    c = quotient_cokernel(f, cert)
    ok = quotient_hom(k.obj, b, w).is_zero(f @ k.map) and quotient_hom(a, c.obj, w).is_zero(c.map @ f)
    ok = ok and quotient_kernel(k.map, cert).in_w and quotient_cokernel(c.map, cert).in_w
    out.append(("kernel-cokernel-exist", ok, "" if ok else "kernel or cokernel construction failed"))

    # (ker v, v) for v = coker f, and (k, coker k) for k = ker f
    kv = quotient_kernel(c.map, cert)
    good, msg = _triangle_ok(kv.conflation, w)
    if good:
        good, info = is_cokernel_of(c.map, kv.map, cert)
        msg = "" if good else "cokernel is not the cokernel of its kernel: " + info.get("reason", "")
    out.append(("cokernel-pair-triangle", good, msg))
    ck = quotient_cokernel(k.map, cert)
    good, msg = _triangle_ok(ck.conflation, w)
    if good:
        good, info = is_kernel_of(k.map, ck.map, cert)
        msg = "" if good else "kernel is not the kernel of its cokernel: " + info.get("reason", "")
    out.append(("kernel-pair-triangle", good, msg))

    # pushout of the kernel along a sampled map out of its source
    objs = cert.universe
    g_obj = objs[rng.integers(len(objs))]
    g = hom_basis(k.obj, g_obj).random(rng)
    s = direct_sum([a, g_obj])
    x = column_map(k.obj, s, [k.map, -g])
    po = quotient_cokernel(x, cert)
    kp = po.map @ sum_inclusion(s, 1)
    good, info = is_kernel_of(kp, quotient_cokernel(kp, cert).map, cert)
    out.append(("pushout-of-kernel", good, "" if good else info.get("reason", "")))

    # pullback of the cokernel along a sampled map into its target
    h_obj = objs[rng.integers(len(objs))]
    h = hom_basis(h_obj, c.obj).random(rng)
    s2 = direct_sum([b, h_obj])
    y = row_map(s2, c.obj, [c.map, -h])
    pb = quotient_kernel(y, cert)
    cp = sum_projection(s2, 1) @ pb.map
    good, info = is_cokernel_of(cp, quotient_kernel(cp, cert).map, cert)
    out.append(("pullback-of-cokernel", good, "" if good else info.get("reason", "")))
    return out


def quasi_abelian_audit(cert, seed: int = 1, samples: int = 64) -> Verdict:
    """Kernels, cokernels and their stability on seeded morphisms."""
    counts: dict[str, list[int]] = {}
    failures = []
    for i in range(samples):
        rng = np.random.default_rng([seed, i])
        f = _pick_morphism(cert, rng, i)
        try:
            results = _audit_one(f, cert, rng)
        except Exception as exc:  # a crash is a failed check, not an aborted audit
            results = [("construction", False, f"{type(exc).__name__}: {exc}")]
        for name, ok, msg in results:
            c = counts.setdefault(name, [0, 0])
            c[0 if ok else 1] += 1
            if not ok:
                failures.append({"sample": i, "check": name, "message": msg,
                                 "morphism": f.to_dict(), "source": repr(f.source),
                                 "target": repr(f.target)})
    return Verdict("quasi-abelian", not failures, sampled_scope(seed, samples), {
        "checks": {k: {"pass": v[0], "fail": v[1]} for k, v in sorted(counts.items())},
        "failures": failures,
    })


def _quotient_candidates(q, rng, bound: int, samples: int):
    """Quotient-Hom elements up to scalars: all of them when few, else samples."""
    F = q.field
    if q.dim == 0:
        return [], True
    if q.dim == 1:
        return [q.element([1])], True
    if F.is_finite and F.order ** q.dim <= bound:
        return [q.element(c) for c in projective_points(F, q.dim)], True
    out = [q.element([1 if j == i else 0 for j in range(q.dim)]) for i in range(q.dim)]
    for _ in range(samples):
        out.append(q.element([F.random_scalar(rng) for _ in range(q.dim)]))
    return out, False


def abelian_audit(cert, seed: int = 1, samples: int = 16, enum_bound: int = 10 ** 5) -> Verdict:
    """Search for a morphism that is epi and mono but not iso, and test epis are cokernels."""
    rng = np.random.default_rng(seed)
    w = cert.w
    exhaustive = True
    checked = 0
    for x in cert.non_w:
        for y in cert.non_w:
            q = quotient_hom(x, y, w)
            cands, full = _quotient_candidates(q, rng, enum_bound, samples)
            exhaustive = exhaustive and full
            for f in cands:
                checked += 1
                ker = quotient_kernel(f, cert)
                coker = quotient_cokernel(f, cert)
                epi, mono = coker.in_w, ker.in_w
                detail = {"source": repr(x), "target": repr(y), "morphism": f.to_dict()}
                if epi and mono and quotient_inverse(f, w) is None:
                    detail["kind"] = "epi and mono but not iso"
                    return Verdict("abelian", "counterexample", universe_scope(cert.complete),
                                   {"counterexample": detail, "checked": checked})
                if epi and not is_cokernel_of(f, ker.map, cert)[0]:
                    detail["kind"] = "epimorphism that is not a cokernel"
                    return Verdict("abelian", "counterexample", universe_scope(cert.complete),
                                   {"counterexample": detail, "checked": checked})
                if mono and not is_kernel_of(f, coker.map, cert)[0]:
                    detail["kind"] = "monomorphism that is not a kernel"
                    return Verdict("abelian", "counterexample", universe_scope(cert.complete),
                                   {"counterexample": detail, "checked": checked})
    details = {"checked": checked, "quotient_indecomposables": [repr(x) for x in cert.non_w],
               "enumerated_fully": exhaustive}
    if exhaustive:
        return Verdict("abelian", "abelian", universe_scope(cert.complete), details)
    return Verdict("abelian", "inconclusive", sampled_scope(seed, samples), details)
