"""Kernels, cokernels and isomorphisms in the quotient E/W.

The cokernel of f: A -> B is the pushout of the certified conflation
A -> W^1 -> W^2 along f, which yields A -> B + W^1 -> C'.  The kernel is
dual: the pullback of W_2 -> W_1 -> B along f.  f is an epimorphism in
the quotient exactly when C' lies in add W.
"""

from __future__ import annotations

from dataclasses import dataclass

from ..approx import is_relative_monic, quotient_hom, solve_modulo
from ..ext import Conflation, pullback_conflation, pushout_conflation
from ..rep import (
    RepMorphism,
    Representation,
    cokernel,
    column_map,
    direct_sum,
    hom_basis,
    sum_projection,
)


class QuotientError(ValueError):
    pass


@dataclass
class QuotientMap:
    """A kernel K -> A or cokernel B -> C' together with its witnessing conflation."""

    obj: Representation
    map: RepMorphism
    conflation: Conflation
    in_w: bool

    def to_dict(self) -> dict:
        return {"object": list(self.obj.dim_vector), "map": self.map.to_dict(),
                "object_in_W": self.in_w, "conflation": self.conflation.to_dict()}


def quotient_cokernel(f: RepMorphism, cert) -> QuotientMap:
    conf = cert.left_data(f.source).left
    po = pushout_conflation(conf, f)
    c = po.conflation.middle
    return QuotientMap(c, po.d, po.mixed, cert.in_w(c))


def quotient_kernel(f: RepMorphism, cert) -> QuotientMap:
    conf = cert.right_data(f.target).right
    pb = pullback_conflation(conf, f)
    k = pb.e.source
    e = RepMorphism(k, f.source, pb.e.comps, check=False)
    return QuotientMap(k, e, pb.mixed, cert.in_w(k))


def _id(m: Representation) -> RepMorphism:
    return RepMorphism.identity(m)


def quotient_inverse(f: RepMorphism, w) -> RepMorphism | None:
    """g with g f = 1 and f g = 1 modulo maps factoring through W, or None."""
    a, b = f.source, f.target
    space = hom_basis(b, a)
    return solve_modulo(space, [
        (lambda h: h @ f, _id(a), quotient_hom(a, a, w)),
        (lambda h: f @ h, _id(b), quotient_hom(b, b, w)),
    ])


def is_kernel_of(u: RepMorphism, v: RepMorphism, cert) -> tuple[bool, dict]:
    """Whether u: X -> Y is a kernel of v: Y -> Z in the quotient."""
    w = cert.w
    x, y = u.source, u.target
    if not quotient_hom(x, v.target, w).is_zero(v @ u):
        return False, {"reason": "composite is not zero"}
    k = quotient_kernel(v, cert)
    e = k.map
    t = solve_modulo(hom_basis(x, k.obj), [(lambda h: e @ h, u, quotient_hom(x, y, w))])
    if t is None:
        return False, {"reason": "u does not factor through the kernel"}
    s = solve_modulo(hom_basis(k.obj, x), [(lambda h: u @ h, e, quotient_hom(k.obj, y, w))])
    if s is None:
        return False, {"reason": "the kernel does not factor through u"}
    if not quotient_hom(x, x, w).equal(s @ t, _id(x)):
        return False, {"reason": "comparison map is not invertible"}
    if not quotient_hom(k.obj, k.obj, w).equal(t @ s, _id(k.obj)):
        return False, {"reason": "comparison map is not invertible"}
    return True, {"kernel": k, "comparison": t}


def is_cokernel_of(v: RepMorphism, u: RepMorphism, cert) -> tuple[bool, dict]:
    """Whether v: Y -> Z is a cokernel of u: X -> Y in the quotient."""
    w = cert.w
    y, z = v.source, v.target
    if not quotient_hom(u.source, z, w).is_zero(v @ u):
        return False, {"reason": "composite is not zero"}
    c = quotient_cokernel(u, cert)
    cm = c.map
    t = solve_modulo(hom_basis(z, c.obj), [(lambda h: h @ v, cm, quotient_hom(y, c.obj, w))])
    if t is None:
        return False, {"reason": "the cokernel does not factor through v"}
    s = solve_modulo(hom_basis(c.obj, z), [(lambda h: h @ cm, v, quotient_hom(y, z, w))])
    if s is None:
        return False, {"reason": "v does not factor through the cokernel"}
    if not quotient_hom(z, z, w).equal(s @ t, _id(z)):
        return False, {"reason": "comparison map is not invertible"}
    if not quotient_hom(c.obj, c.obj, w).equal(t @ s, _id(c.obj)):
        return False, {"reason": "comparison map is not invertible"}
    return True, {"cokernel": c, "comparison": t}


def epi_replacement(f: RepMorphism, cert) -> Conflation:
    """A conflation A -> B + W^1 -> W with W in add W and first map (f; w^A).

    The first map is W-monic and agrees with f in the quotient (B + W^1 is
    isomorphic to B there).  A cone outside add W means f is not an
    epimorphism in the quotient.
    """
    a, b = f.source, f.target
    if f.is_injective():
        c, p, _ = cokernel(f)
        if cert.in_w(c) and is_relative_monic(f, cert.w):
            return Conflation(f, p)  # f already has the required shape
    wa = cert.left_data(a).left.x
    s = direct_sum([b, wa.target])
    x = column_map(a, s, [f, RepMorphism(a, wa.target, wa.comps, check=False)])
    c, p, _ = cokernel(x)
    if not cert.in_w(c):
        raise QuotientError("input not an epimorphism: the cone is not in add W")
    return Conflation(x, p)


def replacement_component(conf: Conflation, f: RepMorphism) -> RepMorphism:
    """The B-component of the inflation of ``epi_replacement(f)``."""
    if conf.middle is f.target:
        return conf.x
    return sum_projection(conf.middle, 0) @ conf.x


def quotient_morphism_class(f: RepMorphism, cert) -> dict:
    """Epi / mono / iso status of f in the quotient, with witnesses."""
    coker = quotient_cokernel(f, cert)
    ker = quotient_kernel(f, cert)
    inv = quotient_inverse(f, cert.w)
    out = {"epi": coker.in_w, "mono": ker.in_w, "iso": inv is not None,
           "cokernel": coker, "kernel": ker, "inverse": inv}
    return out
