"""Subcategories W of mod A, approximations, and quotient Hom spaces.

A subcategory is the additive closure of a finite list of indecomposables
(``members``).  It may instead be given as a complement: every indecomposable
not isomorphic to one of ``excluded``.  In that case the member list (taken
from a finite universe) is used for Hom-based constructions, and verdicts
that depend on it are universe-relative.
"""

from __future__ import annotations

from typing import Sequence

import numpy as np

from .linalg import Matrix, Subspace, solve_affine
from .rep import (
    HomSpace,
    Part,
    RepMorphism,
    Representation,
    _cache,
    certify_local,
    column_map,
    decompose,
    direct_sum,
    hom_basis,
    is_isomorphic,
    minimize_left,
    minimize_right,
    row_map,
    sum_inclusion,
    sum_projection,
    zero_module,
)


class SubcategorySpec:
    """add(members), or the complement of ``excluded`` among indecomposables."""

    def __init__(self, name: str, members: Sequence[Representation],
                 excluded: Sequence[Representation] | None = None):
        self.name = name
        self.members = list(members)
        self.excluded = list(excluded) if excluded is not None else None
        self._member_cache: dict = {}

    def __repr__(self):
        return f"SubcategorySpec({self.name!r}, {len(self.members)} members)"

    def __len__(self):
        return len(self.members)

    @property
    def indecomposables(self) -> list[Representation]:
        return self.members

    @property
    def is_complement(self) -> bool:
        return self.excluded is not None

    def problems(self) -> list[str]:
        """Members must be certified indecomposable and pairwise non-isomorphic."""
        out = []
        for m in self.members:
            if not certify_local(m):
                out.append(f"{m!r} is not certified indecomposable")
        for i, m in enumerate(self.members):
            for n in self.members[i + 1 :]:
                if is_isomorphic(m, n)[0]:
                    out.append(f"{m!r} and {n!r} are isomorphic")
        return out

    def member_index(self, x: Representation) -> int | None:
        for i, m in enumerate(self.members):
            if m.key == x.key:
                return i
        for i, m in enumerate(self.members):
            if m.dim_vector == x.dim_vector and is_isomorphic(x, m)[0]:
                return i
        return None

    def contains_indecomposable(self, x: Representation) -> bool:
        hit = self._member_cache.get(x.key)
        if hit is not None:
            return hit
        if self.excluded is not None:
            ok = not any(e.dim_vector == x.dim_vector and is_isomorphic(x, e)[0] for e in self.excluded)
        else:
            ok = self.member_index(x) is not None
        self._member_cache[x.key] = ok
        return ok

    def contains(self, m: Representation) -> bool:
        """Membership in add W: every indecomposable summand lies in W."""
        if m.total_dim == 0:
            return True
        if m.summands:
            return all(self.contains(s) for s in m.summands)
        if certify_local(m):
            return self.contains_indecomposable(m)
        return all(self.contains_indecomposable(p.module) for p in decompose(m).parts)

    def has_summand_in(self, m: Representation) -> bool:
        if m.total_dim == 0:
            return False
        if m.summands:
            return any(self.has_summand_in(s) for s in m.summands)
        if certify_local(m):
            return self.contains_indecomposable(m)
        return any(self.contains_indecomposable(p.module) for p in decompose(m).parts)

    def restrict(self, name: str, keep) -> "SubcategorySpec":
        """The list-mode subcategory on the members satisfying ``keep``."""
        return SubcategorySpec(name, [m for m in self.members if keep(m)])


def _objects(spec) -> list[Representation]:
    if isinstance(spec, SubcategorySpec):
        return spec.members
    return list(spec)


def is_relative_monic(x: RepMorphism, d_list) -> bool:
    """Hom(target, D) -> Hom(source, D) is onto for every D in d_list."""
    for d in _objects(d_list):
        src = hom_basis(x.source, d)
        if src.dim == 0:
            continue
        tgt = hom_basis(x.target, d)
        if tgt.dim == 0:
            return False
        rows = np.stack([src.coords(h @ x) for h in tgt.basis])
        if Matrix(x.field, rows).rank() < src.dim:
            return False
    return True


def is_relative_epic(y: RepMorphism, c_list) -> bool:
    """Hom(C, source) -> Hom(C, target) is onto for every C in c_list."""
    for c in _objects(c_list):
        tgt = hom_basis(c, y.target)
        if tgt.dim == 0:
            continue
        src = hom_basis(c, y.source)
        if src.dim == 0:
            return False
        rows = np.stack([tgt.coords(y @ h) for h in src.basis])
        if Matrix(y.field, rows).rank() < tgt.dim:
            return False
    return True


def _universal_left(a: Representation, w: SubcategorySpec):
    mods, comps = [], []
    for wi in w.members:
        for f in hom_basis(a, wi).basis:
            mods.append(wi)
            comps.append(f)
    if not mods:
        z = zero_module(a.alg)
        return RepMorphism.zero(a, z), []
    target = direct_sum(mods)
    f = column_map(a, target, comps)
    parts = [Part(m, sum_inclusion(target, i), sum_projection(target, i)) for i, m in enumerate(mods)]
    return f, parts


def _universal_right(a: Representation, w: SubcategorySpec):
    mods, comps = [], []
    for wi in w.members:
        for f in hom_basis(wi, a).basis:
            mods.append(wi)
            comps.append(f)
    if not mods:
        z = zero_module(a.alg)
        return RepMorphism.zero(z, a), []
    source = direct_sum(mods)
    f = row_map(source, a, comps)
    parts = [Part(m, sum_inclusion(source, i), sum_projection(source, i)) for i, m in enumerate(mods)]
    return f, parts


def _as_sum(a: Representation, member: Representation) -> RepMorphism:
    t = direct_sum([member])
    return RepMorphism(a, t, RepMorphism.identity(a).comps, check=False)


def left_approximation(a: Representation, w: SubcategorySpec, minimal: bool = True) -> RepMorphism:
    """A left W-approximation of ``a`` assembled from Hom bases into the members."""
    if a.total_dim == 0:
        return RepMorphism.zero(a, zero_module(a.alg))
    cache = _cache(a.alg, "left_approx")
    key = (id(w), a.key, minimal)
    hit = cache.get(key)
    if hit is not None and hit.source is a:
        return hit
    idx = next((i for i, m in enumerate(w.members) if m.key == a.key), None)
    if minimal and idx is not None:
        out = _as_sum(a, w.members[idx])
    else:
        f, parts = _universal_left(a, w)
        out = minimize_left(f, parts) if minimal and parts else f
    cache[key] = out
    return out


def right_approximation(a: Representation, w: SubcategorySpec, minimal: bool = True) -> RepMorphism:
    if a.total_dim == 0:
        return RepMorphism.zero(zero_module(a.alg), a)
    cache = _cache(a.alg, "right_approx")
    key = (id(w), a.key, minimal)
    hit = cache.get(key)
    if hit is not None and hit.target is a:
        return hit
    idx = next((i for i, m in enumerate(w.members) if m.key == a.key), None)
    if minimal and idx is not None:
        t = direct_sum([w.members[idx]])
        out = RepMorphism(t, a, RepMorphism.identity(a).comps, check=False)
    else:
        f, parts = _universal_right(a, w)
        out = minimize_right(f, parts) if minimal and parts else f
    cache[key] = out
    return out


def is_left_approximation(f: RepMorphism, w: SubcategorySpec) -> bool:
    """Every map from source(f) into a member factors through f."""
    return is_relative_monic(f, w)


def is_right_approximation(f: RepMorphism, w: SubcategorySpec) -> bool:
    return is_relative_epic(f, w)


# ---------------------------------------------------------------------------
# the ideal of maps factoring through W


def _ideal_subspace(a: Representation, b: Representation, w: SubcategorySpec, amb: HomSpace) -> Subspace:
    F = a.field
    if amb.dim == 0:
        return Subspace(F, 0)
    rows = []
    for wi in w.members:
        left = hom_basis(a, wi)
        if left.dim == 0:
            continue
        right = hom_basis(wi, b)
        if right.dim == 0:
            continue
        for f in left.basis:
            for g in right.basis:
                rows.append(amb.coords(g @ f))
        if len(rows) >= 4 * amb.dim:
            sub = Subspace(F, amb.dim, np.stack(rows))
            if sub.dim == amb.dim:
                return sub
            rows = list(sub.basis)
    if not rows:
        return Subspace(F, amb.dim)
    return Subspace(F, amb.dim, np.stack(rows))


def factoring_ideal(a: Representation, b: Representation, w: SubcategorySpec) -> list[RepMorphism]:
    """Basis of the maps a -> b that factor through add W."""
    q = quotient_hom(a, b, w)
    return [q.ambient.combine(r) for r in q.ideal.basis]


class QuotientHom:
    """Hom(a, b) modulo the maps factoring through W."""

    def __init__(self, a: Representation, b: Representation, w: SubcategorySpec):
        self.a, self.b, self.w = a, b, w
        self.ambient = hom_basis(a, b)
        if self.ambient.dim and (w.contains(a) or w.contains(b)):
            # every map out of (or into) an object of add W factors through it
            self.ideal = Subspace(a.field, self.ambient.dim, a.field.eye_array(self.ambient.dim))
        else:
            self.ideal = _ideal_subspace(a, b, w, self.ambient)
        self.positions = self.ideal.complement_positions()

    @property
    def field(self):
        return self.a.field

    @property
    def dim(self) -> int:
        return len(self.positions)

    def coords(self, f: RepMorphism) -> tuple:
        red = self.ideal.reduce(self.ambient.coords(f))
        F = self.field
        return tuple(F.scalar(red[i]) for i in self.positions)

    def is_zero(self, f: RepMorphism) -> bool:
        return all(c == 0 for c in self.coords(f))

    def equal(self, f: RepMorphism, g: RepMorphism) -> bool:
        return self.is_zero(f - g)

    def element(self, coords) -> RepMorphism:
        F = self.field
        vec = [F.zero()] * self.ambient.dim
        for p, c in zip(self.positions, coords):
            vec[p] = F.scalar(c)
        return self.ambient.combine(vec)

    def representatives(self) -> list[RepMorphism]:
        return [self.ambient.basis[p] for p in self.positions]

    def ideal_element(self, coeffs) -> RepMorphism:
        F = self.field
        vec = [F.zero()] * self.ambient.dim
        for r, c in zip(self.ideal.basis, coeffs):
            for i in range(self.ambient.dim):
                vec[i] = F.scalar(vec[i] + c * r[i])
        return self.ambient.combine(vec)

    def random_ideal_element(self, rng) -> RepMorphism:
        F = self.field
        return self.ideal_element([F.random_scalar(rng) for _ in range(self.ideal.dim)])

    def random(self, rng) -> RepMorphism:
        return self.ambient.random(rng)


def quotient_hom(a: Representation, b: Representation, w: SubcategorySpec) -> QuotientHom:
    cache = _cache(a.alg, "qhom")
    key = (id(w), a.key, b.key)
    hit = cache.get(key)
    if hit is not None and hit.a is a and hit.b is b:
        return hit
    if hit is not None:
        q = QuotientHom.__new__(QuotientHom)
        q.a, q.b, q.w = a, b, w
        q.ambient = hom_basis(a, b)
        q.ideal, q.positions = hit.ideal, hit.positions
        if q.ambient.free == hit.ambient.free:
            return q
    q = QuotientHom(a, b, w)
    cache[key] = q
    return q


def solve_modulo(space: HomSpace, constraints) -> RepMorphism | None:
    """Some h in ``space`` with fn(h) == rhs modulo W for each (fn, rhs, qhom).

    Each fn must be linear in h; ``qhom`` is the quotient space holding fn(h).
    """
    F = space.source.field
    rhs = [c for _, r, q in constraints for c in q.coords(r)]
    if space.dim == 0 or not rhs:
        if any(c != 0 for c in rhs):
            return None
        return RepMorphism.zero(space.source, space.target)
    cols = [[c for fn, _, q in constraints for c in q.coords(fn(b))] for b in space.basis]
    a = Matrix(F, np.array(cols, dtype=F.dtype).T.copy())
    sol = solve_affine(a, Matrix(F, np.array(rhs, dtype=F.dtype).reshape(-1, 1)))
    if sol is None:
        return None
    return space.combine(list(sol[0].a[:, 0]))
