"""Local finiteness counts and projective objects of the quotient."""

from __future__ import annotations

from ..approx import SubcategorySpec, quotient_hom, solve_modulo
from ..rep import certify_local, direct_sum, hom_basis, row_map
from .quotient import quotient_cokernel
from .scope import Verdict, universe_scope


def locally_finite_report(universe, w: SubcategorySpec, complete: bool = False) -> Verdict:
    """Per quotient-nonzero object: how many objects map to it and from it in E/W."""
    objs = [x for x in universe if not w.contains_indecomposable(x)]
    rows = {}
    for y in objs:
        preds = sum(1 for x in objs if quotient_hom(x, y, w).dim)
        succs = sum(1 for z in objs if quotient_hom(y, z, w).dim)
        rows[repr(y)] = {"predecessors": preds, "successors": succs}
    return Verdict("locally-finite", "counts", universe_scope(complete), {"objects": rows})


def projective_candidates(cert, sets) -> list:
    """Objects A whose minimal left approximation A -> W' -> W has W' free of eW and W in eW."""
    ew = sets.ew_spec()
    out = []
    for a in cert.non_w:
        conf = cert.left_data(a).left
        target, cone = conf.middle, conf.right
        if cone.total_dim == 0 or not certify_local(cone):
            continue
        if not ew.members or ew.has_summand_in(target):
            continue
        if ew.contains(cone):
            out.append(a)
    return out


def enough_projectives(cert, sets, seed: int = 1) -> Verdict:
    """Every quotient-nonzero object receives a quotient-epimorphism from projective candidates.

    Each candidate is also tested for the lifting property against the
    covering maps that are built.
    """
    w = cert.w
    plist = projective_candidates(cert, sets)
    covers, failures = {}, []
    for x in cert.non_w:
        mods, maps = [], []
        for p in plist:
            for h in quotient_hom(p, x, w).representatives():
                mods.append(p)
                maps.append(h)
        if not mods:
            failures.append({"object": repr(x), "reason": "no map from projective candidates"})
            continue
        src = direct_sum(mods)
        cover = row_map(src, x, maps)
        if not quotient_cokernel(cover, cert).in_w:
            failures.append({"object": repr(x), "reason": "sum of candidate maps is not a quotient epimorphism"})
            continue
        covers[repr(x)] = [repr(m) for m in mods]
        for p in plist:
            q = quotient_hom(p, x, w)
            for a in q.representatives():
                lift = solve_modulo(hom_basis(p, src), [(lambda h: cover @ h, a, q)])
                if lift is None:
                    failures.append({"object": repr(p), "reason": f"map to {x!r} does not lift"})
    return Verdict("enough-projectives", not failures, universe_scope(cert.complete), {
        "projectives": [repr(p) for p in plist],
        "covers": covers,
        "failures": failures,
    })
