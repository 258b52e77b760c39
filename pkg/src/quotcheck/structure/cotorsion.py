"""Ext-perpendicular subcategories and the twin cotorsion pair check."""

from __future__ import annotations

from ..approx import SubcategorySpec
from ..ext import (
    Conflation,
    dual,
    dual_morphism,
    ext_space,
    projective_cover,
    pullback_conflation,
    pushout_conflation,
)
from ..rep import (
    RepMorphism,
    Representation,
    cokernel,
    decompose,
    certify_local,
    kernel,
    zero_module,
)
from .scope import Verdict, universe_scope


def ext_vanishes_left(x: Representation, objs) -> bool:
    """Ext^1(x, W) = 0 for every W in objs."""
    return all(ext_space(x, m).dim == 0 for m in objs)


def ext_vanishes_right(x: Representation, objs) -> bool:
    """Ext^1(W, x) = 0 for every W in objs."""
    return all(ext_space(m, x).dim == 0 for m in objs)


def perp_sets(w: SubcategorySpec, universe: list[Representation]):
    """(left perpendicular, right perpendicular) of W inside the universe."""
    left = [x for x in universe if ext_vanishes_left(x, w.members)]
    right = [x for x in universe if ext_vanishes_right(x, w.members)]
    return left, right


def _summands(m: Representation) -> list[Representation]:
    if m.total_dim == 0:
        return []
    if m.summands and all(certify_local(s) for s in m.summands):
        return list(m.summands)
    return [p.module for p in decompose(m).parts]


def injective_envelope(a: Representation) -> RepMorphism:
    """a -> I(a), the dual of a projective cover of the dual of a."""
    cov = projective_cover(dual(a))
    d = dual_morphism(cov.map)
    return RepMorphism(a, d.target, d.comps, check=False)


def _split_extension_closed(w: SubcategorySpec) -> tuple[bool, list]:
    """Every extension between members realizes with middle term in add W (basis classes)."""
    bad = []
    for wi in w.members:
        for wj in w.members:
            sp = ext_space(wi, wj)
            for e in sp.basis():
                mid = e.realize().middle
                if not w.contains(mid):
                    bad.append((repr(wj), repr(wi)))
                    break
    return not bad, bad


def twin_cotorsion_check(w: SubcategorySpec, universe: list[Representation], cert=None,
                         complete: bool = False, extension_closed: bool | None = None) -> Verdict:
    """Check that ((perp_left W, W), (W, perp_right W)) is a twin cotorsion pair."""
    scope = universe_scope(complete)
    if not w.members:
        return Verdict("twin-cotorsion", False, scope, {"rejected": "W is empty"})
    if not w.is_complement and all(w.contains_indecomposable(a) for a in universe):
        return Verdict("twin-cotorsion", False, scope,
                       {"rejected": "W must be a proper subcategory of the universe"})
    members = w.members
    left, right = perp_sets(w, universe)
    axioms: dict[str, bool] = {}
    failures: list[dict] = []

    axioms["left_pair_orthogonal"] = all(ext_vanishes_left(x, members) for x in left)
    axioms["right_pair_orthogonal"] = all(ext_vanishes_right(x, members) for x in right)
    twin = True
    for x in left:
        for y in right:
            if ext_space(x, y).dim:
                twin = False
                failures.append({"object": f"{x!r},{y!r}", "axiom": "Ext(left perp, right perp) != 0"})
    axioms["twin_orthogonal"] = twin
    axioms["left_perp_in_W"] = all(w.contains_indecomposable(x) for x in left)
    axioms["right_perp_in_W"] = all(w.contains_indecomposable(x) for x in right)

    def in_left_perp(m):
        return all(ext_vanishes_left(s, members) for s in _summands(m))

    def in_right_perp(m):
        return all(ext_vanishes_right(s, members) for s in _summands(m))

    ok_l1 = ok_l2 = ok_r1 = ok_r2 = True
    for a in universe:
        if cert is not None:
            data = cert.left_data(a)
            left_conf, right_conf = data.left, data.right
        else:
            from .certificate import object_data
            data, problems = object_data(a, w)
            if data is None:
                failures.append({"object": repr(a), "axiom": "; ".join(problems)})
                ok_l1 = ok_l2 = ok_r1 = ok_r2 = False
                continue
            left_conf, right_conf = data.left, data.right
        # A -> W^1 -> W^2 with W^2 in the left perpendicular
        if not in_left_perp(left_conf.right):
            ok_l1 = False
            failures.append({"object": repr(a), "axiom": "cone of left approximation not in left perp"})
        # W_2 -> W_1 -> A with W_2 in the right perpendicular
        if not in_right_perp(right_conf.left):
            ok_r1 = False
            failures.append({"object": repr(a), "axiom": "kernel of right approximation not in right perp"})
        # W' -> E -> A with E in the left perpendicular, from a projective cover
        cov = projective_cover(a)
        omega, iota = kernel(cov.map)
        if omega.total_dim:
            oc = cert.left_data(omega).left if cert is not None else object_data(omega, w)[0].left
            po = pushout_conflation(oc, iota)
            r = po.factor(cov.map, RepMorphism.zero(oc.middle, a))
            conf = Conflation(po.g, r) if r is not None else None
            e_mid = po.conflation.middle
        else:
            conf = Conflation(RepMorphism.zero(zero_module(a.alg), cov.module), cov.map)
            e_mid = cov.module
        if conf is None or not conf.is_valid() or not w.contains(conf.left) or not in_left_perp(e_mid):
            ok_l2 = False
            failures.append({"object": repr(a), "axiom": "no conflation W -> (left perp) -> A"})
        # A -> E -> W' with E in the right perpendicular, from an injective envelope
        env = injective_envelope(a)
        a1, p, _ = cokernel(env)
        if a1.total_dim:
            rc = cert.right_data(a1).right if cert is not None else object_data(a1, w)[0].right
            pb = pullback_conflation(rc, p)
            r = pb.factor(RepMorphism.zero(a, rc.middle), env)
            conf = Conflation(r, pb.g) if r is not None else None
            e_mid = pb.e.source
        else:
            conf = Conflation(env, RepMorphism.zero(env.target, zero_module(a.alg)))
            e_mid = env.target
        if conf is None or not conf.is_valid() or not w.contains(conf.right) or not in_right_perp(e_mid):
            ok_r2 = False
            failures.append({"object": repr(a), "axiom": "no conflation A -> (right perp) -> W"})
    axioms["left_pair_approximations"] = ok_l1 and ok_l2
    axioms["right_pair_approximations"] = ok_r1 and ok_r2
    if extension_closed is None:
        closed, bad = _split_extension_closed(w)
        ext_flag = {"extension_closed": closed, "source": "computed on Ext basis classes",
                    "violations": bad[:10]}
    else:
        ext_flag = {"extension_closed": extension_closed, "source": "supplied"}
    value = all(axioms.values())
    return Verdict("twin-cotorsion", value, scope, {
        "axioms": axioms,
        "left_perp": [repr(x) for x in left],
        "right_perp": [repr(x) for x in right],
        "extension_closed": ext_flag,
        "failures": failures,
    })
