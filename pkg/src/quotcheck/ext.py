"""Conflations, Ext^1 through projective presentations, and the AR translate.

Ext^1(C, A) is computed as the cokernel of Hom(P0, A) -> Hom(Omega C, A),
where Omega C is the kernel of a projective cover P0 -> C.  A class is held
as coordinates on the complement of that image, and realized by pushing the
inclusion Omega C -> P0 out along a cocycle.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from typing import Sequence

import numpy as np

from .linalg import Matrix, Subspace, solve_affine
from .quiver import BoundQuiverAlgebra, Path
from .rep import (
    HomSpace,
    RepMorphism,
    Representation,
    RepresentationError,
    _cache,
    cokernel,
    column_map,
    decompose,
    descend_through_epi,
    direct_sum,
    hom_basis,
    is_isomorphic,
    kernel,
    lift_through_mono,
    radical_and_top,
    row_map,
    solve_in_hom,
    standard_module,
    sum_inclusion,
    sum_projection,
    zero_module,
)


class ExtError(ValueError):
    pass


@dataclass
class Conflation:
    """A short exact sequence A -x-> B -y-> C."""

    x: RepMorphism
    y: RepMorphism

    @property
    def left(self) -> Representation:
        return self.x.source

    @property
    def middle(self) -> Representation:
        return self.x.target

    @property
    def right(self) -> Representation:
        return self.y.target

    def problems(self) -> list[str]:
        out = []
        if self.x.target.key != self.y.source.key:
            return ["maps are not composable"]
        if not self.x.is_injective():
            out.append("inflation is not injective")
        if not self.y.is_surjective():
            out.append("deflation is not surjective")
        if not (self.y @ self.x).is_zero():
            out.append("composite is not zero")
        for v in self.x.alg.vertices:
            if self.middle.dims[v] != self.left.dims[v] + self.right.dims[v]:
                out.append(f"not exact at vertex {v}")
        return out

    def is_valid(self) -> bool:
        return not self.problems()

    def splits(self) -> bool:
        """A section of the deflation exists."""
        sec = solve_in_hom(hom_basis(self.right, self.middle),
                           [(lambda h: self.y @ h, RepMorphism.identity(self.right))])
        return sec is not None

    def to_dict(self) -> dict:
        return {
            "left": list(self.left.dim_vector),
            "middle": list(self.middle.dim_vector),
            "right": list(self.right.dim_vector),
            "inflation": self.x.to_dict(),
            "deflation": self.y.to_dict(),
        }


def split_conflation(a: Representation, c: Representation) -> Conflation:
    s = direct_sum([a, c])
    return Conflation(sum_inclusion(s, 0), sum_projection(s, 1))


def equivalent(c1: Conflation, c2: Conflation) -> RepMorphism | None:
    """A middle map b with b x1 = x2 and y2 b = y1, or None."""
    space = hom_basis(c1.middle, c2.middle)
    return solve_in_hom(space, [(lambda h: h @ c1.x, c2.x), (lambda h: c2.y @ h, c1.y)])


# ---------------------------------------------------------------------------
# projective covers and presentations


def projective(alg: BoundQuiverAlgebra, v: str) -> Representation:
    cache = _cache(alg, "proj")
    if v not in cache:
        cache[v] = standard_module(alg, "projective", v)
    return cache[v]


def injective(alg: BoundQuiverAlgebra, v: str) -> Representation:
    cache = _cache(alg, "inj")
    if v not in cache:
        cache[v] = standard_module(alg, "injective", v)
    return cache[v]


def _generator_index(alg: BoundQuiverAlgebra, v: str) -> int:
    return alg.basis_between(v, v).index(Path(v, v, ()))


@dataclass
class ProjectiveCover:
    """P = sum of P(v_i) with generator e_{v_i} sent to ``elements[i]``."""

    vertices: list[str]
    module: Representation
    map: RepMorphism
    elements: list[Matrix]


def map_from_projectives(alg: BoundQuiverAlgebra, vertices: Sequence[str],
                         elements: Sequence[Matrix], target: Representation) -> ProjectiveCover:
    F = alg.field
    vertices = list(vertices)
    if not vertices:
        z = zero_module(alg)
        return ProjectiveCover([], z, RepMorphism.zero(z, target), [])
    mods = [projective(alg, v) for v in vertices]
    src = direct_sum(mods)
    comps = {}
    for u in alg.vertices:
        cols = []
        for v, m in zip(vertices, elements):
            for p in alg.basis_between(v, u):
                cols.append(target.path_matrix(p) @ m)
        comps[u] = Matrix.hstack(F, cols, rows=target.dims[u])
    return ProjectiveCover(vertices, src, RepMorphism(src, target, comps, check=False), list(elements))


def projective_cover(m: Representation) -> ProjectiveCover:
    """Projective cover lifting the standard basis of top(m)."""
    _, _, top, proj = radical_and_top(m)
    verts, elems = [], []
    for v in m.alg.vertices:
        if top.dims[v] == 0:
            continue
        sec = proj.comps[v].right_inverse()
        for k in range(top.dims[v]):
            verts.append(v)
            elems.append(Matrix(m.field, sec.a[:, [k]].copy()))
    return map_from_projectives(m.alg, verts, elems, m)


@dataclass
class Presentation:
    """Minimal presentation P1 -> P0 -> C with syzygy Omega = ker(P0 -> C)."""

    target: Representation
    cover0: ProjectiveCover
    omega: Representation
    iota: RepMorphism
    cover1: ProjectiveCover

    @property
    def p0(self) -> Representation:
        return self.cover0.module

    @property
    def p1(self) -> Representation:
        return self.cover1.module

    @property
    def pi(self) -> RepMorphism:
        return self.cover0.map

    @property
    def differential(self) -> RepMorphism:
        return self.iota @ self.cover1.map


def projective_presentation(c: Representation) -> Presentation:
    cache = _cache(c.alg, "presentation")
    hit = cache.get(c.key)
    if hit is not None and hit.target is c:
        return hit
    cov0 = projective_cover(c)
    omega, iota = kernel(cov0.map)
    cov1 = projective_cover(omega)
    pres = Presentation(c, cov0, omega, iota, cov1)
    cache[c.key] = pres
    return pres


def lift_to_projective(cover: ProjectiveCover, y: RepMorphism, g: RepMorphism) -> RepMorphism:
    """A map h: P -> source(y) with y h = g, for g: P -> target(y)."""
    alg = y.alg
    if not cover.vertices:
        return RepMorphism.zero(cover.module, y.source)
    elems = []
    for i, v in enumerate(cover.vertices):
        gen = _generator_column(cover, i)
        want = g.comps[v] @ gen
        sol = solve_affine(y.comps[v], want)
        if sol is None:
            raise ExtError("map does not lift: deflation is not surjective")
        elems.append(sol[0])
    return map_from_projectives(alg, cover.vertices, elems, y.source).map


def _generator_column(cover: ProjectiveCover, i: int) -> Matrix:
    alg = cover.module.alg
    F = alg.field
    v = cover.vertices[i]
    off = sum(len(alg.basis_between(w, v)) for w in cover.vertices[:i])
    col = F.zeros_array(cover.module.dims[v], 1)
    col[off + _generator_index(alg, v), 0] = F.one()
    return Matrix(F, col)


# ---------------------------------------------------------------------------
# Ext^1


class ExtSpace:
    """Ext^1(c, a) as a cokernel on Hom(Omega c, a)."""

    def __init__(self, c: Representation, a: Representation):
        if c.alg is not a.alg:
            raise RepresentationError("algebra mismatch")
        self.c, self.a = c, a
        self.pres = projective_presentation(c)
        self.hom_omega = hom_basis(self.pres.omega, a)
        hom_p0 = hom_basis(self.pres.p0, a)
        F = c.field
        n = self.hom_omega.dim
        rows = [self.hom_omega.coords(h @ self.pres.iota) for h in hom_p0.basis]
        self.image = Subspace(F, n, np.stack(rows)) if rows and n else Subspace(F, n)
        self.positions = self.image.complement_positions()

    @property
    def field(self):
        return self.c.field

    @property
    def dim(self) -> int:
        return len(self.positions)

    def coords_of_cocycle(self, phi: RepMorphism) -> tuple:
        red = self.image.reduce(self.hom_omega.coords(phi))
        F = self.field
        return tuple(F.scalar(red[i]) for i in self.positions)

    def cocycle(self, coords) -> RepMorphism:
        F = self.field
        vec = [F.zero()] * self.hom_omega.dim
        for pos, c in zip(self.positions, coords):
            vec[pos] = F.scalar(c)
        return self.hom_omega.combine(vec)

    def element(self, coords) -> "ExtClass":
        F = self.field
        coords = tuple(F.scalar(c) for c in coords)
        if len(coords) != self.dim:
            raise ExtError(f"expected {self.dim} coordinates")
        return ExtClass(self, coords)

    def zero(self) -> "ExtClass":
        return self.element([0] * self.dim)

    def basis(self) -> list["ExtClass"]:
        out = []
        for i in range(self.dim):
            v = [0] * self.dim
            v[i] = 1
            out.append(self.element(v))
        return out

    def random(self, rng) -> "ExtClass":
        return self.element([self.field.random_scalar(rng) for _ in range(self.dim)])


def ext_space(c: Representation, a: Representation) -> ExtSpace:
    cache = _cache(c.alg, "ext")
    key = (c.key, a.key)
    hit = cache.get(key)
    if hit is None or hit.c is not c or hit.a is not a:
        hit = ExtSpace(c, a)
        cache[key] = hit
    return hit


@dataclass(eq=False)
class ExtClass:
    space: ExtSpace
    coords: tuple
    _realization: Conflation | None = dc_field(default=None, repr=False)

    @property
    def left(self) -> Representation:
        return self.space.a

    @property
    def right(self) -> Representation:
        return self.space.c

    def is_zero(self) -> bool:
        return all(c == 0 for c in self.coords)

    def __eq__(self, other):
        return (isinstance(other, ExtClass) and self.space.c.key == other.space.c.key
                and self.space.a.key == other.space.a.key and self.coords == other.coords)

    __hash__ = None

    def cocycle(self) -> RepMorphism:
        return self.space.cocycle(self.coords)

    def realize(self) -> Conflation:
        if self._realization is None:
            self._realization = realize(self)
        return self._realization


def ext1_basis(c: Representation, a: Representation) -> list[ExtClass]:
    return ext_space(c, a).basis()


def realize(e: ExtClass) -> Conflation:
    """Push Omega -> P0 out along the cocycle: E = coker((-phi; iota))."""
    sp = e.space
    pres = sp.pres
    a, c = sp.a, sp.c
    phi = e.cocycle()
    x_sum = direct_sum([a, pres.p0])
    gamma = column_map(pres.omega, x_sum, [-phi, pres.iota])
    mid, q, sec = cokernel(gamma)
    x = q @ sum_inclusion(x_sum, 0)
    to_c = row_map(x_sum, c, [RepMorphism.zero(a, c), pres.pi])
    y = descend_through_epi(q, to_c, sec)
    return Conflation(x, y)


def class_of(conf: Conflation) -> ExtClass:
    sp = ext_space(conf.right, conf.left)
    pres = sp.pres
    g = lift_to_projective(pres.cover0, conf.y, pres.pi)
    phi = lift_through_mono(conf.x, g @ pres.iota)
    if phi is None:
        raise ExtError("not a conflation: image of the lift leaves the inflation")
    phi = RepMorphism(pres.omega, conf.left, phi.comps, check=False)
    return ExtClass(sp, sp.coords_of_cocycle(phi))


def _check_same(e1: ExtClass, e2: ExtClass):
    if e1.space.c.key != e2.space.c.key or e1.space.a.key != e2.space.a.key:
        raise ExtError("extension classes have different endpoints")


def baer_sum(e1: ExtClass, e2: ExtClass) -> ExtClass:
    _check_same(e1, e2)
    F = e1.space.field
    return e1.space.element([F.scalar(x + y) for x, y in zip(e1.coords, e2.coords)])


def scalar_mul(e: ExtClass, lam) -> ExtClass:
    F = e.space.field
    lam = F.scalar(lam)
    return e.space.element([F.scalar(x * lam) for x in e.coords])


def pushforward(e: ExtClass, f: RepMorphism) -> ExtClass:
    """f_* e for f: A -> A'."""
    if f.source.key != e.left.key:
        raise ExtError("pushforward map does not start at the left end")
    sp = ext_space(e.right, f.target)
    phi = f @ RepMorphism(e.space.pres.omega, f.source, e.cocycle().comps, check=False)
    phi = RepMorphism(sp.pres.omega, f.target, phi.comps, check=False)
    return ExtClass(sp, sp.coords_of_cocycle(phi))


def pullback(e: ExtClass, h: RepMorphism) -> ExtClass:
    """h^* e for h: C' -> C."""
    if h.target.key != e.right.key:
        raise ExtError("pullback map does not end at the right end")
    sp = ext_space(h.source, e.left)
    src_pres = sp.pres
    tgt_pres = e.space.pres
    h_t = RepMorphism(h.source, tgt_pres.target, h.comps, check=False)
    h0 = lift_to_projective(src_pres.cover0, tgt_pres.pi, h_t @ src_pres.pi)
    h1 = lift_through_mono(tgt_pres.iota, h0 @ src_pres.iota)
    phi = e.cocycle() @ h1
    return ExtClass(sp, sp.coords_of_cocycle(phi))


# ---------------------------------------------------------------------------
# pushouts and pullbacks of conflations


@dataclass
class PushoutResult:
    """Pushout of A -x-> B -y-> C along f: A -> D."""

    conflation: Conflation          # D -d-> E -> C
    g: RepMorphism                  # B -> E
    d: RepMorphism                  # D -> E
    mixed: Conflation               # A -(-f;x)-> D+B -(d,g)-> E
    section: dict

    def factor(self, s: RepMorphism, t: RepMorphism) -> RepMorphism | None:
        """r: E -> T with r d = s and r g = t, if s f = t x."""
        q = self.mixed.y
        st = row_map(q.source, s.target, [s, t])
        if not (st @ self.mixed.x).is_zero():
            return None
        return descend_through_epi(q, st, self.section)


def pushout_conflation(conf: Conflation, f: RepMorphism) -> PushoutResult:
    if f.source.key != conf.left.key:
        raise ExtError("pushout map must start at the left end")
    a, b, c, dmod = conf.left, conf.middle, conf.right, f.target
    f = RepMorphism(a, dmod, f.comps, check=False)
    s = direct_sum([dmod, b])
    gamma = column_map(a, s, [-f, conf.x])
    e, q, sec = cokernel(gamma)
    d = q @ sum_inclusion(s, 0)
    g = q @ sum_inclusion(s, 1)
    y2 = descend_through_epi(q, row_map(s, c, [RepMorphism.zero(dmod, c), conf.y]), sec)
    return PushoutResult(Conflation(d, y2), g, d, Conflation(gamma, q), sec)


@dataclass
class PullbackResult:
    """Pullback of A -x-> B -y-> C along h: D -> C."""

    conflation: Conflation          # A -> E -e-> D
    g: RepMorphism                  # E -> B
    e: RepMorphism                  # E -> D
    mixed: Conflation               # E -(g;e)-> B+D -(y,-h)-> C

    def factor(self, s: RepMorphism, t: RepMorphism) -> RepMorphism | None:
        """r: T -> E with e r = t and g r = s, if y s = h t."""
        k = self.mixed.x
        st = column_map(s.source, k.target, [s, t])
        if not (self.mixed.y @ st).is_zero():
            return None
        return lift_through_mono(k, st)


def pullback_conflation(conf: Conflation, h: RepMorphism) -> PullbackResult:
    if h.target.key != conf.right.key:
        raise ExtError("pullback map must end at the right end")
    a, b, c, dmod = conf.left, conf.middle, conf.right, h.source
    h = RepMorphism(dmod, c, h.comps, check=False)
    s = direct_sum([b, dmod])
    delta = row_map(s, c, [conf.y, -h])
    e, k = kernel(delta)
    g = sum_projection(s, 0) @ k
    emap = sum_projection(s, 1) @ k
    x_in = column_map(a, s, [conf.x, RepMorphism.zero(a, dmod)])
    x2 = lift_through_mono(k, x_in)
    return PullbackResult(Conflation(x2, emap), g, emap, Conflation(k, delta))


# ---------------------------------------------------------------------------
# duality and the AR translate


def dual(m: Representation) -> Representation:
    """Vector-space dual, a representation of the opposite algebra."""
    op = m.alg.opposite()
    return Representation(op, dict(m.dims), {a: mat.T for a, mat in m.maps.items()},
                          name=f"D({m!r})", check=False)


def dual_morphism(f: RepMorphism) -> RepMorphism:
    return RepMorphism(dual(f.target), dual(f.source), {v: c.T for v, c in f.comps.items()},
                       check=False)


def transpose(m: Representation) -> Representation:
    """Tr m: cokernel of Hom(P0, A) -> Hom(P1, A), over the opposite algebra."""
    alg = m.alg
    op = alg.opposite()
    pres = projective_presentation(m)
    p = pres.differential
    v0, v1 = pres.cover0.vertices, pres.cover1.vertices
    F = alg.field
    # image of generator j of P1 inside P0, split into the summands P(v_i)
    blocks = {}
    for j, u in enumerate(v1):
        gen = _generator_column(pres.cover1, j)
        vec = (p.comps[u] @ gen).a[:, 0]
        off = 0
        for i, v in enumerate(v0):
            paths = alg.basis_between(v, u)
            for k, path in enumerate(paths):
                if vec[off + k] != 0:
                    blocks.setdefault((i, j), {})[path] = vec[off + k]
            off += len(paths)
    if not v1:
        tgt = zero_module(op)
    else:
        tgt = direct_sum([projective(op, u) for u in v1])
    elems = []
    for i, v in enumerate(v0):
        col = []
        for j, u in enumerate(v1):
            basis = op.basis_between(u, v)
            coeff = [F.zero()] * len(basis)
            for path, c in blocks.get((i, j), {}).items():
                for q, d in op.normal_form(path.reversed()).items():
                    idx = basis.index(q)
                    coeff[idx] = F.scalar(coeff[idx] + c * d)
            col.extend(coeff)
        elems.append(Matrix.column(F, col) if col else Matrix.zeros(F, 0, 1))
    tmap = map_from_projectives(op, v0, elems, tgt)
    tr, _, _ = cokernel(tmap.map)
    return tr


def _has_summand_like(m: Representation, refs: list[Representation]) -> Representation | None:
    for part in decompose(m).parts:
        for r in refs:
            if is_isomorphic(part.module, r)[0]:
                return r
    return None


def ar_translate(m: Representation) -> Representation:
    """tau m = D Tr m."""
    bad = _has_summand_like(m, [projective(m.alg, v) for v in m.alg.vertices])
    if bad is not None:
        raise ExtError(f"ar_translate: input has a projective summand {bad!r}")
    out = dual(transpose(m))
    return out.with_name(f"tau({m!r})")


def ar_translate_inverse(m: Representation) -> Representation:
    """tau^- m = Tr D m."""
    bad = _has_summand_like(m, [injective(m.alg, v) for v in m.alg.vertices])
    if bad is not None:
        raise ExtError(f"ar_translate_inverse: input has an injective summand {bad!r}")
    out = transpose(dual(m))
    return out.with_name(f"tau^-({m!r})")
