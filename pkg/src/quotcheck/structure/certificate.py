"""Certificates that W is hereditary-like inside a finite universe of objects.

For every object A the certificate stores a conflation A -> W^1 -> W^2
whose inflation is a minimal left W-approximation, and a conflation
W_2 -> W_1 -> A whose deflation is a minimal right W-approximation.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from ..approx import (
    SubcategorySpec,
    is_relative_epic,
    is_relative_monic,
    left_approximation,
    quotient_hom,
    right_approximation,
)
from ..ext import Conflation, injective, projective
from ..linalg import Matrix
from ..rep import (
    RepMorphism,
    Representation,
    certify_local,
    cokernel,
    column_map,
    decompose,
    direct_sum,
    is_isomorphic,
    kernel,
    row_map,
)
from .cotorsion import ext_vanishes_left, ext_vanishes_right
from .scope import universe_scope


class CertificateError(ValueError):
    pass


@dataclass
class ObjectData:
    obj: Representation
    left: Conflation           # A -> W^1 -> W^2
    right: Conflation          # W_2 -> W_1 -> A
    left_approx: bool
    right_approx: bool

    def to_dict(self) -> dict:
        return {
            "object": repr(self.obj),
            "left": self.left.to_dict(),
            "right": self.right.to_dict(),
            "left_is_approximation": self.left_approx,
            "right_is_approximation": self.right_approx,
        }


def _left_conflation(a: Representation, w: SubcategorySpec):
    f = left_approximation(a, w, minimal=True)
    if not f.is_injective():
        return None, "minimal left approximation is not injective"
    c, p, _ = cokernel(f)
    if not w.contains(c):
        return None, "cokernel of the minimal left approximation is not in add W"
    return Conflation(f, p), None


def _right_conflation(a: Representation, w: SubcategorySpec):
    g = right_approximation(a, w, minimal=True)
    if not g.is_surjective():
        return None, "minimal right approximation is not surjective"
    k, inc = kernel(g)
    if not w.contains(k):
        return None, "kernel of the minimal right approximation is not in add W"
    return Conflation(inc, g), None


def _block_sum(maps: list[RepMorphism]) -> RepMorphism:
    s = direct_sum([f.source for f in maps])
    t = direct_sum([f.target for f in maps])
    F = s.field
    comps = {v: Matrix.block_diag(F, [f.comps[v] for f in maps]) for v in s.alg.vertices}
    return RepMorphism(s, t, comps, check=False)


def object_data(a: Representation, w: SubcategorySpec) -> tuple[ObjectData | None, list[str]]:
    problems = []
    left, err = _left_conflation(a, w)
    if err:
        problems.append(err)
    right, err2 = _right_conflation(a, w)
    if err2:
        problems.append(err2)
    if problems:
        return None, problems
    la = is_relative_monic(left.x, w)
    ra = is_relative_epic(right.y, w)
    if not la:
        problems.append("left conflation inflation is not W-monic")
    if not ra:
        problems.append("right conflation deflation is not W-epic")
    return ObjectData(a, left, right, la, ra), problems


class HereditaryCertificate:
    """Verified hereditary-like data for W over a universe of indecomposables."""

    ok = True

    def __init__(self, w: SubcategorySpec, universe: list[Representation], complete: bool,
                 data: dict, side: dict):
        self.w = w
        self.universe = list(universe)
        self.complete = complete
        self.data = data
        self.side = side
        self._extra: dict = {}
        self.non_w = [a for a in self.universe if not w.contains_indecomposable(a)]
        self._by_dims: dict = {}
        for a in self.universe:
            self._by_dims.setdefault(a.dim_vector, []).append(a)

    @property
    def scope(self) -> str:
        return universe_scope(self.complete)

    @property
    def alg(self):
        return self.universe[0].alg

    def _lookup(self, x: Representation) -> ObjectData:
        hit = self.data.get(x.key) or self._extra.get(x.key)
        if hit is not None:
            return hit
        d = self._assembled(x) if x.total_dim else None
        if d is None:
            d, problems = object_data(x, self.w)
            if d is None:
                raise CertificateError(f"{x!r}: " + "; ".join(problems))
        self._extra[x.key] = d
        return d

    def _match(self, m: Representation):
        """Certificate data of a universe object isomorphic to m, with an iso m -> object."""
        for u in self._by_dims.get(m.dim_vector, []):
            ok, phi = is_isomorphic(m, u)
            if ok:
                return self.data[u.key], phi
        d, problems = object_data(m, self.w)
        if d is None:
            raise CertificateError(f"{m!r}: " + "; ".join(problems))
        return d, RepMorphism.identity(m)

    def _assembled(self, x: Representation) -> ObjectData:
        """Data for x as the direct sum of the data of its indecomposable summands.

        Minimal approximations of a direct sum are the sums of minimal
        approximations, so the result is again minimal.
        """
        dec = decompose(x)
        lefts, rights, ins, outs = [], [], [], []
        for part in dec.parts:
            d, phi = self._match(part.module)
            u = d.left.left
            phi = RepMorphism(part.module, u, phi.comps, check=False)
            psi = phi.inverse()
            lam = d.left.x
            ins.append(lam @ phi @ part.projection)
            rho = RepMorphism(d.right.middle, u, d.right.y.comps, check=False)
            outs.append(part.inclusion @ psi @ rho)
            lefts.append(d.left)
            rights.append(d.right)
        ldefl = _block_sum([c.y for c in lefts])
        lx = column_map(x, ldefl.source, [RepMorphism(x, c.middle, f.comps, check=False)
                                          for c, f in zip(lefts, ins)])
        rinfl = _block_sum([c.x for c in rights])
        ry = row_map(rinfl.target, x, [RepMorphism(c.middle, x, f.comps, check=False)
                                       for c, f in zip(rights, outs)])
        return ObjectData(x, Conflation(lx, ldefl), Conflation(rinfl, ry), True, True)

    def left_data(self, x: Representation) -> ObjectData:
        """Certificate data for x, computed on demand outside the universe."""
        return self._lookup(x)

    def right_data(self, x: Representation) -> ObjectData:
        return self._lookup(x)

    def qhom(self, a: Representation, b: Representation):
        return quotient_hom(a, b, self.w)

    def in_w(self, m: Representation) -> bool:
        return self.w.contains(m)

    def to_dict(self) -> dict:
        return {
            "ok": True,
            "scope": self.scope,
            "subcategory": self.w.name,
            "members": [repr(m) for m in self.w.members],
            "non_members": [repr(a) for a in self.non_w],
            "objects": [self.data[a.key].to_dict() for a in self.non_w],
            "side_conditions": self.side,
        }


@dataclass
class HereditaryFailure:
    """Report of the clauses that failed, as (object, clause) pairs."""

    failures: list[tuple[str, str]]
    ok: bool = False
    partial: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        return {"ok": False, "failures": [{"object": o, "clause": c} for o, c in self.failures]}


def check_hereditary_like(w: SubcategorySpec, universe: list[Representation],
                          complete: bool = False) -> HereditaryCertificate | HereditaryFailure:
    """Certify that W is hereditary-like, checking every object of the universe."""
    failures: list[tuple[str, str]] = []
    for msg in w.problems():
        failures.append(("W", msg))
    if not w.members:
        failures.append(("W", "W is empty"))
    if not universe:
        failures.append(("universe", "universe is empty"))
        return HereditaryFailure(failures)
    alg = universe[0].alg
    for a in universe:
        if not certify_local(a):
            failures.append((repr(a), "universe object is not certified indecomposable"))
    for m in w.members:
        if not any(m.key == a.key or (m.dim_vector == a.dim_vector and is_isomorphic(m, a)[0])
                   for a in universe):
            failures.append((repr(m), "member of W is not in the universe"))
    if all(w.contains_indecomposable(a) for a in universe) and not w.is_complement:
        failures.append(("W", "W is not a proper subcategory of the universe"))

    data: dict = {}
    for a in universe:
        d, problems = object_data(a, w)
        for p in problems:
            failures.append((repr(a), p))
        if d is not None:
            data[a.key] = d

    side = {"projectives_in_W": True, "injectives_in_W": True,
            "left_perp_in_W": True, "right_perp_in_W": True}
    for v in alg.vertices:
        if not w.contains(projective(alg, v)):
            side["projectives_in_W"] = False
            failures.append((f"P({v})", "projective object is not in W"))
        if not w.contains(injective(alg, v)):
            side["injectives_in_W"] = False
            failures.append((f"I({v})", "injective object is not in W"))
    for a in universe:
        if w.contains_indecomposable(a):
            continue
        if ext_vanishes_left(a, w.members):
            side["left_perp_in_W"] = False
            failures.append((repr(a), "lies in the left Ext-perpendicular of W but not in W"))
        if ext_vanishes_right(a, w.members):
            side["right_perp_in_W"] = False
            failures.append((repr(a), "lies in the right Ext-perpendicular of W but not in W"))
    if failures:
        return HereditaryFailure(failures, partial=data)
    return HereditaryCertificate(w, universe, complete, data, side)
