"""Representations of bound quivers and the additive category mod A.

A :class:`Representation` stores one vector space per vertex and one matrix
per arrow (shape ``dims[target] x dims[source]``).  Morphisms are families of
vertex matrices.  Hom spaces are solved as a single linear system and cached
on the algebra by content keys.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Callable, Sequence

import numpy as np

from .linalg import Field, Matrix, Subspace, _nullspace_array, _rref_array, solve_affine
from .quiver import BoundQuiverAlgebra, Path, QuiverError, concat


class RepresentationError(ValueError):
    pass


class NotCertifiedError(RuntimeError):
    """Raised when indecomposability can neither be certified nor refuted."""


# ---------------------------------------------------------------------------
# objects


class Representation:
    """A finite-dimensional representation of a bound quiver."""

    def __init__(self, alg: BoundQuiverAlgebra, dims: dict, maps: dict | None = None,
                 name: str | None = None, check: bool = True):
        self.alg = alg
        F = alg.field
        unknown = set(dims) - set(alg.vertices)
        if unknown:
            raise RepresentationError(f"unknown vertices {sorted(unknown)}")
        self.dims = {v: int(dims.get(v, 0)) for v in alg.vertices}
        maps = dict(maps or {})
        bad = set(maps) - {a.name for a in alg.arrows}
        if bad:
            raise RepresentationError(f"unknown arrows {sorted(bad)}")
        self.maps: dict[str, Matrix] = {}
        for a in alg.arrows:
            shape = (self.dims[a.target], self.dims[a.source])
            m = maps.get(a.name)
            if m is None:
                m = Matrix.zeros(F, *shape)
            elif not isinstance(m, Matrix):
                m = Matrix.from_rows(F, m, cols=shape[1]) if len(m) else Matrix.zeros(F, *shape)
            if m.shape != shape:
                raise RepresentationError(f"arrow {a.name}: expected shape {shape}, got {m.shape}")
            self.maps[a.name] = m
        self.name = name
        self.summands: tuple[Representation, ...] | None = None
        self._key = None
        if check:
            self.check_relations()

    @property
    def field(self) -> Field:
        return self.alg.field

    @property
    def dim_vector(self) -> tuple[int, ...]:
        return tuple(self.dims[v] for v in self.alg.vertices)

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def is_zero(self) -> bool:
        return self.total_dim == 0

    @property
    def key(self):
        if self._key is None:
            self._key = (self.dim_vector, tuple(self.maps[a.name].key for a in self.alg.arrows))
        return self._key

    def __repr__(self):
        if self.name:
            return self.name
        return "Rep" + str(self.dim_vector)

    def path_matrix(self, p: Path) -> Matrix:
        F = self.field
        out = Matrix.identity(F, self.dims[p.source])
        for name in p.arrows:
            out = self.maps[name] @ out
        return out

    def act(self, element: dict[Path, object], source: str, target: str) -> Matrix:
        """Matrix of an algebra element (paths from ``source`` to ``target``)."""
        out = Matrix.zeros(self.field, self.dims[target], self.dims[source])
        for p, c in element.items():
            out = out + self.path_matrix(p).scale(c)
        return out

    def check_relations(self):
        for rel in self.alg.quiver.relations:
            total = Matrix.zeros(self.field, self.dims[rel.target], self.dims[rel.source])
            for c, p in rel.terms:
                total = total + self.path_matrix(p).scale(c)
            if not total.is_zero():
                terms = " + ".join(f"{c}*({p})" for c, p in rel.terms)
                raise RepresentationError(f"relation {terms} does not vanish")

    def offsets(self) -> dict[str, int]:
        out, k = {}, 0
        for v in self.alg.vertices:
            out[v] = k
            k += self.dims[v]
        return out

    def with_name(self, name: str | None) -> "Representation":
        r = Representation(self.alg, self.dims, self.maps, name=name, check=False)
        r.summands = self.summands
        return r


def zero_module(alg: BoundQuiverAlgebra) -> Representation:
    return Representation(alg, {}, name="0", check=False)


def standard_module(alg: BoundQuiverAlgebra, kind: str, v: str) -> Representation:
    """S(v), P(v) or I(v) built from the path basis."""
    if v not in alg.vertices:
        raise QuiverError(f"unknown vertex {v!r}")
    F = alg.field
    if kind == "simple":
        return Representation(alg, {v: 1}, name=f"S({v})", check=False)
    if kind == "projective":
        basis = {u: alg.basis_between(v, u) for u in alg.vertices}
        dims = {u: len(b) for u, b in basis.items()}
        maps = {}
        for a in alg.arrows:
            m = F.zeros_array(dims[a.target], dims[a.source])
            idx = {p: i for i, p in enumerate(basis[a.target])}
            for j, p in enumerate(basis[a.source]):
                pa = concat(p, Path(a.source, a.target, (a.name,)))
                for q, c in alg.normal_form(pa).items():
                    m[idx[q], j] = c
            maps[a.name] = Matrix(F, m)
        return Representation(alg, dims, maps, name=f"P({v})")
    if kind == "injective":
        basis = {u: alg.basis_between(u, v) for u in alg.vertices}
        dims = {u: len(b) for u, b in basis.items()}
        maps = {}
        for a in alg.arrows:
            m = F.zeros_array(dims[a.target], dims[a.source])
            idx = {p: i for i, p in enumerate(basis[a.source])}
            for i, q in enumerate(basis[a.target]):
                aq = concat(Path(a.source, a.target, (a.name,)), q)
                for p, c in alg.normal_form(aq).items():
                    m[i, idx[p]] = c
            maps[a.name] = Matrix(F, m)
        return Representation(alg, dims, maps, name=f"I({v})")
    raise ValueError(f"unknown module kind {kind!r}")


# ---------------------------------------------------------------------------
# morphisms


class RepMorphism:
    """A morphism of representations, one matrix per vertex."""

    def __init__(self, source: Representation, target: Representation, comps: dict,
                 check: bool = True):
        if source.alg is not target.alg:
            raise RepresentationError("algebra mismatch")
        self.source = source
        self.target = target
        F = source.field
        self.comps: dict[str, Matrix] = {}
        for v in source.alg.vertices:
            shape = (target.dims[v], source.dims[v])
            m = comps.get(v)
            if m is None:
                m = Matrix.zeros(F, *shape)
            if m.shape != shape:
                raise RepresentationError(f"vertex {v}: expected {shape}, got {m.shape}")
            self.comps[v] = m
        if check:
            self.check()

    @property
    def alg(self):
        return self.source.alg

    @property
    def field(self):
        return self.source.field

    def check(self):
        for a in self.alg.arrows:
            lhs = self.comps[a.target] @ self.source.maps[a.name]
            rhs = self.target.maps[a.name] @ self.comps[a.source]
            if lhs != rhs:
                raise RepresentationError(f"square at arrow {a.name} does not commute")

    @classmethod
    def identity(cls, m: Representation) -> "RepMorphism":
        return cls(m, m, {v: Matrix.identity(m.field, d) for v, d in m.dims.items()}, check=False)

    @classmethod
    def zero(cls, m: Representation, n: Representation) -> "RepMorphism":
        return cls(m, n, {}, check=False)

    def __matmul__(self, other: "RepMorphism") -> "RepMorphism":
        """``g @ f`` is the composite g after f."""
        if other.target.key != self.source.key:
            raise RepresentationError("morphisms are not composable")
        return RepMorphism(other.source, self.target,
                           {v: self.comps[v] @ other.comps[v] for v in self.comps}, check=False)

    def _same(self, other):
        if self.source.key != other.source.key or self.target.key != other.target.key:
            raise RepresentationError("morphisms are not parallel")

    def __add__(self, other: "RepMorphism") -> "RepMorphism":
        self._same(other)
        return RepMorphism(self.source, self.target,
                           {v: self.comps[v] + other.comps[v] for v in self.comps}, check=False)

    def __sub__(self, other: "RepMorphism") -> "RepMorphism":
        self._same(other)
        return RepMorphism(self.source, self.target,
                           {v: self.comps[v] - other.comps[v] for v in self.comps}, check=False)

    def __neg__(self) -> "RepMorphism":
        return RepMorphism(self.source, self.target, {v: -m for v, m in self.comps.items()}, check=False)

    def scale(self, c) -> "RepMorphism":
        return RepMorphism(self.source, self.target,
                           {v: m.scale(c) for v, m in self.comps.items()}, check=False)

    def __eq__(self, other):
        return (isinstance(other, RepMorphism) and self.source.key == other.source.key
                and self.target.key == other.target.key
                and all(self.comps[v] == other.comps[v] for v in self.comps))

    __hash__ = None

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.comps.values())

    def is_injective(self) -> bool:
        return all(m.rank() == m.cols for m in self.comps.values())

    def is_surjective(self) -> bool:
        return all(m.rank() == m.rows for m in self.comps.values())

    def is_iso(self) -> bool:
        return all(m.is_invertible() for m in self.comps.values())

    def inverse(self) -> "RepMorphism":
        return RepMorphism(self.target, self.source,
                           {v: m.inverse() for v, m in self.comps.items()}, check=False)

    def flat(self) -> np.ndarray:
        """Concatenated row-major entries of all vertex components."""
        parts = [m.a.reshape(-1) for m in self.comps.values()]
        if not parts:
            return self.field.zeros_array(1, 0)[0]
        return np.concatenate(parts)

    def rank(self) -> int:
        return sum(m.rank() for m in self.comps.values())

    def to_dict(self) -> dict:
        return {v: m.to_strings() for v, m in self.comps.items()}

    def __repr__(self):
        return f"RepMorphism({self.source!r} -> {self.target!r})"


def flat_to_comps(m: Representation, n: Representation, vec: np.ndarray) -> dict[str, Matrix]:
    F = m.field
    out, k = {}, 0
    for v in m.alg.vertices:
        r, c = n.dims[v], m.dims[v]
        out[v] = Matrix(F, np.array(vec[k : k + r * c], dtype=F.dtype).reshape(r, c))
        k += r * c
    return out


# ---------------------------------------------------------------------------
# Hom spaces


class HomSpace:
    """A basis of Hom(source, target).

    The basis matrix (flat unknowns x dim) restricts to the identity on the
    rows listed in ``free``, so the coordinates of a morphism are its flat
    entries at those positions.
    """

    def __init__(self, source: Representation, target: Representation, basis_mat: np.ndarray,
                 free: list[int]):
        self.source = source
        self.target = target
        self.basis_mat = basis_mat
        self.free = list(free)
        self._basis = None

    @property
    def dim(self) -> int:
        return len(self.free)

    def __len__(self):
        return self.dim

    @property
    def basis(self) -> list[RepMorphism]:
        if self._basis is None:
            self._basis = [
                RepMorphism(self.source, self.target,
                            flat_to_comps(self.source, self.target, self.basis_mat[:, k]), check=False)
                for k in range(self.dim)
            ]
        return self._basis

    def __iter__(self):
        return iter(self.basis)

    def __getitem__(self, i):
        return self.basis[i]

    def coords(self, f: RepMorphism) -> np.ndarray:
        if not self.free:
            return self.source.field.zeros_array(1, 0)[0]
        return f.flat()[self.free]

    def combine(self, coeffs) -> RepMorphism:
        F = self.source.field
        c = np.array([F.scalar(x) for x in coeffs], dtype=F.dtype).reshape(-1, 1)
        if self.dim == 0:
            return RepMorphism.zero(self.source, self.target)
        vec = F.mul(self.basis_mat, c)[:, 0]
        return RepMorphism(self.source, self.target, flat_to_comps(self.source, self.target, vec),
                           check=False)

    def random(self, rng: np.random.Generator) -> RepMorphism:
        F = self.source.field
        return self.combine([F.random_scalar(rng) for _ in range(self.dim)])


def _cache(alg, name):
    store = alg.__dict__.setdefault("_caches", {})
    return store.setdefault(name, {})


def _hom_system(m: Representation, n: Representation) -> np.ndarray:
    F = m.field
    verts = m.alg.vertices
    off, k = {}, 0
    for v in verts:
        off[v] = k
        k += n.dims[v] * m.dims[v]
    blocks = []
    for a in m.alg.arrows:
        i, j = a.source, a.target
        Mi, Nj = m.dims[i], n.dims[j]
        if Nj * Mi == 0:
            continue
        row = F.zeros_array(Nj * Mi, k)
        # phi_j M_a - N_a phi_i = 0 on row-major vec
        if n.dims[j] * m.dims[j]:
            left = np.kron(F.eye_array(Nj), m.maps[a.name].a.T)
            row[:, off[j] : off[j] + Nj * m.dims[j]] += left
        if n.dims[i] * Mi:
            right = np.kron(n.maps[a.name].a, F.eye_array(Mi))
            row[:, off[i] : off[i] + n.dims[i] * Mi] -= right
        blocks.append(F.reduce(row))
    if not blocks:
        return F.zeros_array(0, k)
    return np.vstack(blocks)


def _hom_direct(m: Representation, n: Representation) -> HomSpace:
    F = m.field
    system = _hom_system(m, n)
    k = system.shape[1]
    if system.shape[0] == 0:
        return HomSpace(m, n, F.eye_array(k), list(range(k)))
    red, piv = _rref_array(F, system)
    pivset = set(piv)
    free = [c for c in range(k) if c not in pivset]
    basis = F.zeros_array(k, len(free))
    for t, f in enumerate(free):
        basis[f, t] = F.one()
        for i, pc in enumerate(piv):
            basis[pc, t] = -red[i, f]
    return HomSpace(m, n, F.reduce(basis), free)


def _parts(m: Representation) -> tuple[Representation, ...]:
    return m.summands if m.summands else (m,)


def hom_basis(m: Representation, n: Representation) -> HomSpace:
    """Basis of Hom(m, n); direct sums are handled blockwise."""
    if m.alg is not n.alg:
        raise RepresentationError("algebra mismatch")
    cache = _cache(m.alg, "hom")
    key = (m.key, n.key, bool(m.summands), bool(n.summands))
    hit = cache.get(key)
    if hit is not None:
        if hit.source is m and hit.target is n:
            return hit
        return HomSpace(m, n, hit.basis_mat, hit.free)
    if not m.summands and not n.summands:
        space = _hom_direct(m, n)
    else:
        space = _hom_blockwise(m, n)
    cache[key] = space
    return space


def _hom_blockwise(m: Representation, n: Representation) -> HomSpace:
    F = m.field
    verts = m.alg.vertices
    ms, ns = _parts(m), _parts(n)
    voff, k = {}, 0
    for v in verts:
        voff[v] = k
        k += n.dims[v] * m.dims[v]
    cols, free = [], []
    coloff = {v: np.cumsum([0] + [x.dims[v] for x in ms]) for v in verts}
    rowoff = {v: np.cumsum([0] + [x.dims[v] for x in ns]) for v in verts}
    for jn, b in enumerate(ns):
        for im, a in enumerate(ms):
            sub = hom_basis(a, b)
            if sub.dim == 0:
                continue
            # map each local flat index to the global one
            idx, lk = [], 0
            for v in verts:
                r, c = b.dims[v], a.dims[v]
                for rr in range(r):
                    for cc in range(c):
                        idx.append(voff[v] + (rowoff[v][jn] + rr) * m.dims[v] + coloff[v][im] + cc)
                lk += r * c
            idx = np.array(idx, dtype=np.int64)
            block = F.zeros_array(k, sub.dim)
            block[idx, :] = sub.basis_mat
            cols.append(block)
            free.extend(int(idx[f]) for f in sub.free)
    if not cols:
        return HomSpace(m, n, F.zeros_array(k, 0), [])
    return HomSpace(m, n, np.hstack(cols), free)


def solve_morphism(images: Sequence[RepMorphism], rhs: RepMorphism):
    """Coefficients c with sum c_k images[k] == rhs, or None."""
    F = rhs.field
    b = Matrix(F, rhs.flat().reshape(-1, 1))
    if not images:
        return [] if rhs.is_zero() else None
    a = Matrix(F, np.stack([im.flat() for im in images], axis=1))
    sol = solve_affine(a, b)
    if sol is None:
        return None
    return list(sol[0].a[:, 0])


# ---------------------------------------------------------------------------
# direct sums, kernels, cokernels


def direct_sum(mods: Sequence[Representation], name: str | None = None) -> Representation:
    mods = list(mods)
    if not mods:
        raise RepresentationError("direct_sum of nothing needs an algebra; use zero_module")
    alg = mods[0].alg
    F = alg.field
    dims = {v: sum(x.dims[v] for x in mods) for v in alg.vertices}
    maps = {a.name: Matrix.block_diag(F, [x.maps[a.name] for x in mods]) for a in alg.arrows}
    out = Representation(alg, dims, maps, name=name, check=False)
    out.summands = tuple(mods)
    if name is None:
        out.name = " + ".join(repr(x) for x in mods) if len(mods) > 1 else repr(mods[0])
    return out


def sum_inclusion(s: Representation, i: int) -> RepMorphism:
    parts = _parts(s)
    F = s.field
    comps = {}
    for v in s.alg.vertices:
        off = sum(p.dims[v] for p in parts[:i])
        m = F.zeros_array(s.dims[v], parts[i].dims[v])
        for t in range(parts[i].dims[v]):
            m[off + t, t] = F.one()
        comps[v] = Matrix(F, m)
    return RepMorphism(parts[i], s, comps, check=False)


def sum_projection(s: Representation, i: int) -> RepMorphism:
    inc = sum_inclusion(s, i)
    return RepMorphism(s, inc.source, {v: m.T for v, m in inc.comps.items()}, check=False)


def column_map(source: Representation, target: Representation, maps: Sequence[RepMorphism]) -> RepMorphism:
    """The map source -> (sum of parts of target) with the given components."""
    F = source.field
    comps = {v: Matrix.vstack(F, [f.comps[v] for f in maps], cols=source.dims[v])
             for v in source.alg.vertices}
    return RepMorphism(source, target, comps, check=False)


def row_map(source: Representation, target: Representation, maps: Sequence[RepMorphism]) -> RepMorphism:
    """The map (sum of parts of source) -> target with the given components."""
    F = source.field
    comps = {v: Matrix.hstack(F, [f.comps[v] for f in maps], rows=target.dims[v])
             for v in source.alg.vertices}
    return RepMorphism(source, target, comps, check=False)


def subrepresentation(m: Representation, bases: dict[str, Matrix], name=None):
    """Sub-representation spanned vertex-wise by the columns of ``bases``.

    Returns ``(sub, inclusion)``; the spans must be arrow-stable.
    """
    F = m.field
    maps = {}
    lefts = {v: b.left_inverse() for v, b in bases.items()}
    for a in m.alg.arrows:
        maps[a.name] = lefts[a.target] @ m.maps[a.name] @ bases[a.source]
    sub = Representation(m.alg, {v: b.cols for v, b in bases.items()}, maps, name=name, check=False)
    inc = RepMorphism(sub, m, bases, check=False)
    return sub, inc


def quotient_representation(m: Representation, spans: dict[str, Matrix], name=None):
    """Quotient of ``m`` by the vertex-wise column spans (arrow-stable).

    Returns ``(quotient, projection, section)`` with the section a vertex-wise
    right inverse of the projection.
    """
    F = m.field
    proj, sect = {}, {}
    for v in m.alg.vertices:
        n = m.dims[v]
        s = spans[v]
        if s.cols and n:
            sub = Subspace(F, n, s.a.T.copy())
        else:
            sub = Subspace(F, n)
        comp = sub.complement_positions()
        red = sub.basis
        # v -> v - R^T v[P], then keep the complement coordinates
        q = F.eye_array(n)
        if sub.dim:
            sel = F.zeros_array(sub.dim, n)
            for i, pc in enumerate(sub.pivots):
                sel[i, pc] = F.one()
            q = F.reduce(q - F.mul(red.T.copy(), sel))
        proj[v] = Matrix(F, q[comp, :].copy())
        sec = F.zeros_array(n, len(comp))
        for t, c in enumerate(comp):
            sec[c, t] = F.one()
        sect[v] = Matrix(F, sec)
    maps = {a.name: proj[a.target] @ m.maps[a.name] @ sect[a.source] for a in m.alg.arrows}
    quo = Representation(m.alg, {v: proj[v].rows for v in m.alg.vertices}, maps, name=name, check=False)
    return quo, RepMorphism(m, quo, proj, check=False), sect


def kernel(f: RepMorphism):
    """(K, inclusion K -> source)."""
    return subrepresentation(f.source, {v: m.kernel_matrix() for v, m in f.comps.items()})


def image(f: RepMorphism):
    return subrepresentation(f.target, {v: m.column_space() for v, m in f.comps.items()})


def cokernel(f: RepMorphism):
    """(C, projection target -> C, section)."""
    return quotient_representation(f.target, {v: m for v, m in f.comps.items()})


def lift_through_mono(mono: RepMorphism, g: RepMorphism) -> RepMorphism | None:
    """h with mono @ h == g, when the image of g lies in the image of mono."""
    comps = {}
    for v in mono.alg.vertices:
        sol = solve_affine(mono.comps[v], g.comps[v])
        if sol is None:
            return None
        comps[v] = sol[0]
    return RepMorphism(g.source, mono.source, comps, check=False)


def descend_through_epi(epi: RepMorphism, g: RepMorphism, section=None) -> RepMorphism:
    """h with h @ epi == g, assuming g vanishes on the kernel of epi."""
    comps = {}
    for v in epi.alg.vertices:
        s = section[v] if section is not None else epi.comps[v].right_inverse()
        comps[v] = g.comps[v] @ s
    return RepMorphism(epi.target, g.target, comps, check=False)


def radical_and_top(m: Representation):
    """(rad m, inclusion, top m, projection)."""
    F = m.field
    spans = {}
    for v in m.alg.vertices:
        ims = [m.maps[a.name] for a in m.alg.arrows if a.target == v]
        stacked = Matrix.hstack(F, ims, rows=m.dims[v])
        spans[v] = stacked.column_space() if stacked.cols else Matrix.zeros(F, m.dims[v], 0)
    rad, inc = subrepresentation(m, spans)
    top, proj, _ = quotient_representation(m, spans)
    return rad, inc, top, proj


# ---------------------------------------------------------------------------
# endomorphism algebras, locality and decomposition


def _block(f: RepMorphism) -> Matrix:
    return Matrix.block_diag(f.field, [f.comps[v] for v in f.alg.vertices])


def _span_rows(F: Field, mats: list[Matrix], n: int) -> Subspace:
    if not mats:
        return Subspace(F, n * n)
    return Subspace(F, n * n, np.stack([m.a.reshape(-1) for m in mats]))


def _nilpotent_span(F: Field, gens: list[Matrix], n: int) -> bool:
    """True if the multiplicatively closed span of ``gens`` is nilpotent."""
    if not gens:
        return True
    cur = _span_rows(F, gens, n)
    base = [Matrix(F, r.reshape(n, n).copy()) for r in cur.basis]
    while cur.dim:
        prods = [Matrix(F, x.reshape(n, n).copy()) @ y for x in cur.basis for y in base]
        nxt = _span_rows(F, prods, n)
        if nxt.dim >= cur.dim:
            return False
        cur = nxt
    return True


def _eigenvalue(F: Field, b: Matrix, dims: list[int]):
    """The unique eigenvalue of b if b - lambda is nilpotent, else None."""
    n = b.rows
    cands = []
    if F.characteristic == 0 or n % F.characteristic:
        cands.append(F.scalar(np.sum(np.diagonal(b.a))) * F.inv(F.scalar(n)) if F.characteristic else
                     sum(np.diagonal(b.a), F.zero()) / n)
    else:
        off = 0
        for d in dims:
            if d and d % F.characteristic:
                tr = sum(int(x) for x in np.diagonal(b.a)[off : off + d])
                cands.append(F.scalar(tr) * F.inv(d) % F.characteristic)
                break
            off += d
        if not cands:
            cands = list(F.elements())
    eye = Matrix.identity(F, n)
    for lam in cands:
        if (b - eye.scale(lam)).power(n).is_zero():
            return lam
    return None


def certify_local(m: Representation) -> bool:
    """Exact test that End(m) is local with residue field k.

    Every endomorphism basis element must be lambda + nilpotent, and the span
    of the nilpotent parts must be a nilpotent subalgebra of codimension one.
    """
    if m.total_dim == 0:
        return False
    cache = _cache(m.alg, "local")
    hit = cache.get(m.key)
    if hit is not None:
        return hit
    F = m.field
    end = hom_basis(m, m)
    ok = True
    if end.dim > 1:
        n = m.total_dim
        dims = [m.dims[v] for v in m.alg.vertices]
        eye = Matrix.identity(F, n)
        nils = []
        for f in end.basis:
            b = _block(f)
            lam = _eigenvalue(F, b, dims)
            if lam is None:
                ok = False
                break
            nils.append(b - eye.scale(lam))
        if ok:
            span = _span_rows(F, nils, n)
            ok = span.dim == end.dim - 1 and not span.contains(eye.a.reshape(-1)) \
                and _nilpotent_span(F, nils, n)
    cache[m.key] = ok
    return ok


def is_indecomposable(m: Representation) -> bool:
    if certify_local(m):
        return True
    return len(decompose(m).parts) == 1


@dataclass
class Part:
    module: Representation
    inclusion: RepMorphism
    projection: RepMorphism


@dataclass
class DecompositionResult:
    """Krull-Schmidt decomposition with witnesses.

    ``parts`` lists every indecomposable summand with maps into and out of the
    original module; ``summands`` groups them up to isomorphism.
    """

    module: Representation
    parts: list[Part]
    summands: list[tuple[Representation, int]]

    @property
    def direct_sum(self) -> Representation:
        return direct_sum([p.module for p in self.parts])

    def to_sum(self) -> RepMorphism:
        s = self.direct_sum
        return column_map(self.module, s, [p.projection for p in self.parts])

    def from_sum(self) -> RepMorphism:
        s = self.direct_sum
        return row_map(s, self.module, [p.inclusion for p in self.parts])


def _split(m: Representation, e: RepMorphism):
    """Fitting splitting along e^N, or None if e is nilpotent or invertible."""
    F = m.field
    n = m.total_dim
    en = {v: c.power(n) for v, c in e.comps.items()}
    ker = {v: c.kernel_matrix() for v, c in en.items()}
    im = {v: c.column_space() for v, c in en.items()}
    kd = sum(k.cols for k in ker.values())
    if kd == 0 or kd == n:
        return None
    k_mod, k_inc = subrepresentation(m, ker)
    i_mod, i_inc = subrepresentation(m, im)
    kproj, iproj = {}, {}
    for v in m.alg.vertices:
        both = Matrix.hstack(F, [ker[v], im[v]], rows=m.dims[v])
        inv = both.inverse() if both.rows else both
        kc = ker[v].cols
        kproj[v] = Matrix(F, inv.a[:kc, :].copy())
        iproj[v] = Matrix(F, inv.a[kc:, :].copy())
    return (
        Part(k_mod, k_inc, RepMorphism(m, k_mod, kproj, check=False)),
        Part(i_mod, i_inc, RepMorphism(m, i_mod, iproj, check=False)),
    )


def _candidates(end: HomSpace, rng, tries: int, enum_bound: int):
    yield from end.basis
    F = end.source.field
    for _ in range(tries):
        yield end.random(rng)
    if F.is_finite and F.characteristic ** end.dim <= enum_bound:
        for c in product(range(F.characteristic), repeat=end.dim):
            yield end.combine(c)


def _decompose_parts(m: Representation, rng, tries, enum_bound) -> list[Part]:
    if m.total_dim == 0:
        return []
    if certify_local(m):
        return [Part(m, RepMorphism.identity(m), RepMorphism.identity(m))]
    end = hom_basis(m, m)
    for e in _candidates(end, rng, tries, enum_bound):
        split = _split(m, e)
        if split is None:
            continue
        out = []
        for part in split:
            for sub in _decompose_parts(part.module, rng, tries, enum_bound):
                out.append(Part(sub.module, part.inclusion @ sub.inclusion,
                                 sub.projection @ part.projection))
        return out
    raise NotCertifiedError(f"indecomposability not certified for {m!r}")


def decompose(m: Representation, seed: int = 0, tries: int = 16, enum_bound: int = 4096) -> DecompositionResult:
    """Split ``m`` into indecomposables by Fitting's lemma."""
    cache = _cache(m.alg, "decompose")
    key = (m.key, seed, tries, enum_bound)
    hit = cache.get(key)
    if hit is not None and hit.module is m:
        return hit
    if m.summands and all(certify_local(s) for s in m.summands):
        parts = [Part(s, sum_inclusion(m, i), sum_projection(m, i)) for i, s in enumerate(m.summands)]
    else:
        rng = np.random.default_rng(seed)
        parts = _decompose_parts(m, rng, tries, enum_bound)
    parts.sort(key=lambda p: (p.module.total_dim, p.module.dim_vector))
    groups: list[list] = []
    for p in parts:
        for g in groups:
            if is_isomorphic(g[0], p.module)[0]:
                g[1] += 1
                break
        else:
            groups.append([p.module, 1])
    res = DecompositionResult(m, parts, [(g[0], g[1]) for g in groups])
    cache[key] = res
    return res


def is_isomorphic(m: Representation, n: Representation):
    """Return ``(bool, witness)``; the witness is an isomorphism m -> n."""
    if m.alg is not n.alg or m.dim_vector != n.dim_vector:
        return False, None
    if m.key == n.key:
        return True, RepMorphism(m, n, RepMorphism.identity(m).comps, check=False)
    if m.total_dim == 0:
        return True, RepMorphism.zero(m, n)
    if certify_local(m):
        mn, nm = hom_basis(m, n), hom_basis(n, m)
        for f in mn.basis:
            for g in nm.basis:
                if (g @ f).is_iso():
                    return True, f
        return False, None
    dm, dn = decompose(m), decompose(n)
    if len(dm.parts) != len(dn.parts):
        return False, None
    used = [False] * len(dn.parts)
    pieces = []
    for p in dm.parts:
        for j, q in enumerate(dn.parts):
            if used[j]:
                continue
            ok, w = is_isomorphic(p.module, q.module)
            if ok:
                used[j] = True
                pieces.append(q.inclusion @ w @ p.projection)
                break
        else:
            return False, None
    total = pieces[0]
    for x in pieces[1:]:
        total = total + x
    return True, total


# ---------------------------------------------------------------------------
# minimality


def _left_annihilator(f: RepMorphism) -> list[Matrix]:
    """Block matrices spanning {h in End(target) : h f = 0}."""
    end = hom_basis(f.target, f.target)
    if end.dim == 0:
        return []
    F = f.field
    imgs = np.stack([(h @ f).flat() for h in end.basis], axis=1)
    if imgs.shape[0] == 0:
        ker = F.eye_array(end.dim)
    else:
        ker = _nullspace_array(F, imgs)
    return [_block(end.combine(ker[:, k])) for k in range(ker.shape[1])]


def is_left_minimal(f: RepMorphism) -> bool:
    """f is left minimal iff {h : h f = 0} lies in the radical of End(target)."""
    return _nilpotent_span(f.field, _left_annihilator(f), f.target.total_dim)


def is_right_minimal(f: RepMorphism) -> bool:
    end = hom_basis(f.source, f.source)
    F = f.field
    if end.dim == 0:
        return True
    imgs = np.stack([(f @ h).flat() for h in end.basis], axis=1)
    ker = F.eye_array(end.dim) if imgs.shape[0] == 0 else _nullspace_array(F, imgs)
    mats = [_block(end.combine(ker[:, k])) for k in range(ker.shape[1])]
    return _nilpotent_span(F, mats, f.source.total_dim)


def _target_parts(f: RepMorphism, parts):
    if parts is not None:
        return list(parts)
    t = f.target
    if t.summands and all(certify_local(s) for s in t.summands):
        return [Part(s, sum_inclusion(t, i), sum_projection(t, i)) for i, s in enumerate(t.summands)]
    return list(decompose(t).parts)


def minimize_left(f: RepMorphism, parts: Sequence[Part] | None = None) -> RepMorphism:
    """Drop redundant target summands of f until it is left minimal.

    A summand is dropped when its component factors through the components
    into the remaining summands; summands are visited in ascending order.
    The result maps into the direct sum of the kept summands.
    """
    parts = _target_parts(f, parts)
    comps = [p.projection @ f for p in parts]
    keep = list(range(len(parts)))
    for i in range(len(parts)):
        rest = [j for j in keep if j != i]
        if comps[i].is_zero():
            keep.remove(i)
            continue
        images = []
        for j in rest:
            for h in hom_basis(parts[j].module, parts[i].module).basis:
                images.append(h @ comps[j])
        if solve_morphism(images, comps[i]) is not None:
            keep.remove(i)
    if not keep:
        return RepMorphism.zero(f.source, zero_module(f.alg))
    target = direct_sum([parts[j].module for j in keep])
    g = column_map(f.source, target, [comps[j] for j in keep])
    while not is_left_minimal(g):
        g = _fitting_shrink_left(g)
    return g


def _fitting_shrink_left(g: RepMorphism) -> RepMorphism:
    F = g.field
    n = g.target.total_dim
    for h in _left_annihilator(g):
        if not h.power(n).is_zero():
            e = RepMorphism.identity(g.target)
            comps, k = {}, 0
            for v in g.alg.vertices:
                d = g.target.dims[v]
                comps[v] = Matrix(F, h.a[k : k + d, k : k + d].copy())
                k += d
            e = RepMorphism(g.target, g.target, comps, check=False)
            split = _split(g.target, e)
            if split is None:
                continue
            kpart = split[0]
            # h^N g = 0, so g lands in ker h^N
            return minimize_left(kpart.projection @ g)
    raise NotCertifiedError("could not shrink a non-minimal map")


def minimize_right(f: RepMorphism, parts: Sequence[Part] | None = None) -> RepMorphism:
    """Dual of :func:`minimize_left` on the source of f."""
    if parts is None:
        s = f.source
        if s.summands and all(certify_local(x) for x in s.summands):
            parts = [Part(x, sum_inclusion(s, i), sum_projection(s, i)) for i, x in enumerate(s.summands)]
        else:
            parts = decompose(s).parts
    parts = list(parts)
    comps = [f @ p.inclusion for p in parts]
    keep = list(range(len(parts)))
    for i in range(len(parts)):
        rest = [j for j in keep if j != i]
        if comps[i].is_zero():
            keep.remove(i)
            continue
        images = []
        for j in rest:
            for h in hom_basis(parts[i].module, parts[j].module).basis:
                images.append(comps[j] @ h)
        if solve_morphism(images, comps[i]) is not None:
            keep.remove(i)
    if not keep:
        return RepMorphism.zero(zero_module(f.alg), f.target)
    source = direct_sum([parts[j].module for j in keep])
    g = row_map(source, f.target, [comps[j] for j in keep])
    if not is_right_minimal(g):
        raise NotCertifiedError("right minimization did not reach a minimal map")
    return g


def solve_in_hom(space: HomSpace, constraints: Sequence[tuple[Callable, RepMorphism]]) -> RepMorphism | None:
    """Some h in ``space`` with fn(h) == rhs for every (fn, rhs), or None.

    Each fn must be linear in h (composition with fixed maps).
    """
    F = space.source.field
    rhs = np.concatenate([r.flat() for _, r in constraints]) if constraints else F.zeros_array(1, 0)[0]
    if space.dim == 0:
        return RepMorphism.zero(space.source, space.target) if not np.any(rhs != 0) else None
    cols = [np.concatenate([fn(b).flat() for fn, _ in constraints]) for b in space.basis]
    if rhs.shape[0] == 0:
        return RepMorphism.zero(space.source, space.target)
    sol = solve_affine(Matrix(F, np.stack(cols, axis=1)), Matrix(F, rhs.reshape(-1, 1)))
    if sol is None:
        return None
    return space.combine(list(sol[0].a[:, 0]))
