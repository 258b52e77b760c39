"""The subsets eW and W_m, relative extension structures and cluster tilting.

W_0 lies in eW when some conflation A -> B -> W_0, with A having no summand
in W, has a left minimal W-monic inflation.  W_m is the dual notion.  The
relative structure E_e keeps the classes whose deflation is (W minus eW)-epic;
E^m keeps those whose inflation is (W minus W_m)-monic.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations_with_replacement

import numpy as np

from ..approx import SubcategorySpec, is_relative_epic, is_relative_monic
from ..ext import Conflation, ExtClass, ext_space
from ..linalg import Matrix, projective_points
from ..rep import RepMorphism, direct_sum, is_left_minimal, is_right_minimal
from .scope import EXHAUSTIVE, UNIVERSE, Verdict, sampled_scope, universe_scope, weakest

NOT_FOUND = "not found within bounds"


def ext_candidates(sp, rng, bound: int, samples: int):
    """Nonzero Ext classes up to scalars: all when p^dim <= bound, else basis, sums and samples."""
    F = sp.field
    n = sp.dim
    if n == 0:
        return [], True
    if n == 1:
        return [sp.element([1])], True  # every nonzero class is a scalar multiple
    if F.is_finite and F.order ** n <= bound:
        return [sp.element(c) for c in projective_points(F, n)], True
    unit = [[1 if j == i else 0 for j in range(n)] for i in range(n)]
    coords = list(unit)
    for i in range(n):
        for j in range(i + 1, n):
            coords.append([1 if k in (i, j) else 0 for k in range(n)])
    for _ in range(samples):
        c = [F.random_scalar(rng) for _ in range(n)]
        if any(x != 0 for x in c):
            coords.append(c)
    return [sp.element(c) for c in coords], False


def _sum_morphism(f: RepMorphism, g: RepMorphism) -> RepMorphism:
    s = direct_sum([f.source, g.source])
    t = direct_sum([f.target, g.target])
    F = f.field
    comps = {v: Matrix.block_diag(F, [f.comps[v], g.comps[v]]) for v in f.alg.vertices}
    return RepMorphism(s, t, comps, check=False)


def sum_conflation(c1: Conflation, c2: Conflation) -> Conflation:
    x = _sum_morphism(c1.x, c2.x)
    y = _sum_morphism(c1.y, c2.y)
    y = RepMorphism(x.target, y.target, y.comps, check=False)
    return Conflation(x, y)


@dataclass
class EpicTriangleSets:
    w: SubcategorySpec
    ew: list[int]
    wm: list[int]
    ew_status: dict[int, str]
    wm_status: dict[int, str]
    ew_witness: dict[int, Conflation]
    wm_witness: dict[int, Conflation]
    sum_closure: dict = field(default_factory=dict)
    scope: str = UNIVERSE

    def ew_spec(self) -> SubcategorySpec:
        return SubcategorySpec("eW", [self.w.members[i] for i in self.ew])

    def wm_spec(self) -> SubcategorySpec:
        return SubcategorySpec("W_m", [self.w.members[i] for i in self.wm])

    def ew_complement(self) -> SubcategorySpec:
        keep = set(self.ew)
        return SubcategorySpec("W\\eW", [m for i, m in enumerate(self.w.members) if i not in keep])

    def wm_complement(self) -> SubcategorySpec:
        keep = set(self.wm)
        return SubcategorySpec("W\\W_m", [m for i, m in enumerate(self.w.members) if i not in keep])

    @property
    def exact(self) -> bool:
        """No membership verdict is a bounded-search outcome."""
        return all(s != NOT_FOUND for s in list(self.ew_status.values()) + list(self.wm_status.values()))

    def to_dict(self) -> dict:
        names = [repr(m) for m in self.w.members]
        return {
            "eW": [names[i] for i in self.ew],
            "W_m": [names[i] for i in self.wm],
            "eW_status": {names[i]: s for i, s in sorted(self.ew_status.items())},
            "W_m_status": {names[i]: s for i, s in sorted(self.wm_status.items())},
            "eW_witnesses": {names[i]: c.to_dict() for i, c in sorted(self.ew_witness.items())},
            "W_m_witnesses": {names[i]: c.to_dict() for i, c in sorted(self.wm_witness.items())},
            "direct_sum_closure": self.sum_closure,
            "scope": self.scope,
        }


def _search(cert, w0, left_side: bool, rng, bound, samples):
    """Witness conflation for W_0 in eW (left_side) or W_m, plus a status string."""
    w = cert.w
    any_ext = False
    exhaustive = True
    for a in cert.non_w:
        sp = ext_space(w0, a) if left_side else ext_space(a, w0)
        if sp.dim == 0:
            continue
        any_ext = True
        cands, full = ext_candidates(sp, rng, bound, samples)
        exhaustive = exhaustive and full
        for e in cands:
            conf = e.realize()
            if left_side:
                if is_left_minimal(conf.x) and is_relative_monic(conf.x, w):
                    return conf, "member"
            else:
                if is_right_minimal(conf.y) and is_relative_epic(conf.y, w):
                    return conf, "member"
    if not any_ext:
        return None, f"false ({universe_scope(cert.complete)})"
    return None, NOT_FOUND


def compute_epic_sets(cert, seed: int = 1, ext_enum_bound: int = 10 ** 5,
                      samples: int = 16, sum_pairs: int = 10) -> EpicTriangleSets:
    rng = np.random.default_rng(seed)
    w = cert.w
    ew, wm, ews, wms, eww, wmw = [], [], {}, {}, {}, {}
    for i, w0 in enumerate(w.members):
        conf, status = _search(cert, w0, True, rng, ext_enum_bound, samples)
        ews[i] = status
        if conf is not None:
            ew.append(i)
            eww[i] = conf
        conf, status = _search(cert, w0, False, rng, ext_enum_bound, samples)
        wms[i] = status
        if conf is not None:
            wm.append(i)
            wmw[i] = conf
    closure = {"eW_pairs_checked": 0, "eW_pairs_ok": 0, "W_m_pairs_checked": 0, "W_m_pairs_ok": 0}
    for i, j in list(combinations_with_replacement(ew, 2))[:sum_pairs]:
        s = sum_conflation(eww[i], eww[j])
        closure["eW_pairs_checked"] += 1
        if s.is_valid() and is_left_minimal(s.x) and is_relative_monic(s.x, w):
            closure["eW_pairs_ok"] += 1
    for i, j in list(combinations_with_replacement(wm, 2))[:sum_pairs]:
        s = sum_conflation(wmw[i], wmw[j])
        closure["W_m_pairs_checked"] += 1
        if s.is_valid() and is_right_minimal(s.y) and is_relative_epic(s.y, w):
            closure["W_m_pairs_ok"] += 1
    sets = EpicTriangleSets(w, ew, wm, ews, wms, eww, wmw, closure)
    sets.scope = universe_scope(cert.complete) if sets.exact else UNIVERSE
    return sets


@dataclass
class RelativeStructure:
    """Classes whose deflation is c_list-epic and inflation is d_list-monic."""

    c_list: SubcategorySpec | None = None
    d_list: SubcategorySpec | None = None
    name: str = "E"


def conflation_membership(conf: Conflation, r: RelativeStructure) -> bool:
    if r.c_list is not None and not is_relative_epic(conf.y, r.c_list):
        return False
    if r.d_list is not None and not is_relative_monic(conf.x, r.d_list):
        return False
    return True


def relative_membership(e: ExtClass, r: RelativeStructure) -> bool:
    """Whether the class e lies in the relative subfunctor r."""
    return conflation_membership(e.realize(), r)


def _check_relative(cert, r: RelativeStructure, relevant, rng, bound, samples):
    """Clause (1) on certificate conflations and clause (2) F(W,W) = 0."""
    w = cert.w
    failures = []
    for a in cert.universe:
        d = cert.left_data(a)
        if not conflation_membership(d.left, r):
            failures.append({"object": repr(a), "clause": "left conflation is not a relative member",
                             "conflation": d.left.to_dict()})
        if not conflation_membership(d.right, r):
            failures.append({"object": repr(a), "clause": "right conflation is not a relative member",
                             "conflation": d.right.to_dict()})
    exhaustive = True
    classes = 0
    for ci, c in enumerate(w.members):
        for ai, a in enumerate(w.members):
            if not relevant(ci, ai):
                continue
            sp = ext_space(c, a)
            cands, full = ext_candidates(sp, rng, bound, samples)
            exhaustive = exhaustive and full
            for e in cands:
                classes += 1
                conf = e.realize()
                if conflation_membership(conf, r):
                    failures.append({"object": f"Ext({c!r}, {a!r})", "clause": "F(W,W) != 0",
                                     "class": [str(x) for x in e.coords], "conflation": conf.to_dict()})
                    break
    return failures, exhaustive, classes


def cluster_tilting_check(cert, sets: EpicTriangleSets | None = None, seed: int = 1,
                          ext_enum_bound: int = 10 ** 5, samples: int = 16) -> dict[str, Verdict]:
    """E_e- and E^m-cluster tilting verdicts for W."""
    if cert is None or not getattr(cert, "ok", False):
        raise ValueError("cluster tilting check needs a hereditary-like certificate")
    rng = np.random.default_rng(seed)
    if sets is None:
        sets = compute_epic_sets(cert, seed, ext_enum_bound, samples)
    ew, wm = set(sets.ew), set(sets.wm)
    out = {}
    modes = [
        ("E_e", RelativeStructure(c_list=sets.ew_complement(), name="E_e"),
         lambda ci, ai: ci in ew),   # a right end outside eW forces a split class
        ("E_m", RelativeStructure(d_list=sets.wm_complement(), name="E_m"),
         lambda ci, ai: ai in wm),   # a left end outside W_m forces a split class
    ]
    for name, r, relevant in modes:
        failures, exhaustive, classes = _check_relative(cert, r, relevant, rng, ext_enum_bound, samples)
        scope = universe_scope(cert.complete)
        if not exhaustive:
            scope = weakest(scope, sampled_scope(seed, samples))
        if not sets.exact:
            scope = weakest(scope, UNIVERSE)
        out[name] = Verdict(f"cluster-tilting-{name}", not failures, scope, {
            "classes_checked": classes,
            "ext_enumeration": EXHAUSTIVE if exhaustive else "basis, pairwise sums and samples",
            "epic_sets_exact": sets.exact,
            "failures": failures,
        })
    return out
