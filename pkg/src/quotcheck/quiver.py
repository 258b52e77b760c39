"""Bound quivers, path bases of kQ/I and the standard modules P(v), I(v), S(v).

Conventions: a path is read left to right, so ``Path("1", ("a", "b"))`` is
"a then b".  Modules are covariant representations: an arrow a: i -> j acts
as a linear map V_i -> V_j, and P(v) has basis the paths starting at v.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from functools import cached_property
from typing import Iterable, Sequence

import numpy as np

from .linalg import Field, Matrix, _rref_array


class QuiverError(ValueError):
    pass


class InfiniteDimensionalError(QuiverError):
    pass


@dataclass(frozen=True)
class Arrow:
    name: str
    source: str
    target: str


@dataclass(frozen=True)
class Path:
    source: str
    target: str
    arrows: tuple[str, ...] = ()

    def __len__(self):
        return len(self.arrows)

    def __str__(self):
        return " ".join(self.arrows) if self.arrows else f"e{self.source}"

    def reversed(self) -> "Path":
        return Path(self.target, self.source, tuple(reversed(self.arrows)))


@dataclass(frozen=True)
class Relation:
    """A linear combination of parallel paths, each of length >= 2."""

    terms: tuple[tuple[object, Path], ...]

    @property
    def source(self):
        return self.terms[0][1].source

    @property
    def target(self):
        return self.terms[0][1].target


@dataclass(frozen=True)
class BoundQuiver:
    vertices: tuple[str, ...]
    arrows: tuple[Arrow, ...]
    relations: tuple[Relation, ...] = ()

    def __post_init__(self):
        vs = set(self.vertices)
        if len(vs) != len(self.vertices):
            raise QuiverError("duplicate vertex ids")
        names = [a.name for a in self.arrows]
        if len(set(names)) != len(names):
            raise QuiverError("duplicate arrow names")
        for a in self.arrows:
            if a.source not in vs or a.target not in vs:
                raise QuiverError(f"arrow {a.name} has an undeclared endpoint")
        for rel in self.relations:
            if not rel.terms:
                raise QuiverError("empty relation")
            s, t = rel.source, rel.target
            for _, p in rel.terms:
                if len(p) < 2:
                    raise QuiverError(
                        f"relation term '{p}' has length {len(p)}; admissible relations need length >= 2"
                    )
                if (p.source, p.target) != (s, t):
                    raise QuiverError("relation paths are not parallel")

    @cached_property
    def arrow_map(self) -> dict[str, Arrow]:
        return {a.name: a for a in self.arrows}

    def path(self, arrows: Sequence[str] | str, start: str | None = None) -> Path:
        """Build a path from arrow names; ``start`` is needed for trivial paths."""
        if isinstance(arrows, str):
            arrows = arrows.split()
        arrows = tuple(arrows)
        if not arrows:
            if start is None or start not in self.vertices:
                raise QuiverError("a trivial path needs a vertex")
            return Path(start, start, ())
        try:
            objs = [self.arrow_map[a] for a in arrows]
        except KeyError as exc:
            raise QuiverError(f"unknown arrow {exc.args[0]}") from None
        for x, y in zip(objs, objs[1:]):
            if x.target != y.source:
                raise QuiverError(f"arrows {x.name} and {y.name} are not composable")
        if start is not None and start != objs[0].source:
            raise QuiverError("path does not start at the given vertex")
        return Path(objs[0].source, objs[-1].target, arrows)

    def opposite(self) -> "BoundQuiver":
        return BoundQuiver(
            self.vertices,
            tuple(Arrow(a.name, a.target, a.source) for a in self.arrows),
            tuple(
                Relation(tuple((c, p.reversed()) for c, p in r.terms)) for r in self.relations
            ),
        )

    def paths_up_to(self, max_len: int) -> list[Path]:
        out = [Path(v, v, ()) for v in self.vertices]
        frontier = [p for p in out]
        for _ in range(max_len):
            nxt = []
            for p in frontier:
                for a in self.arrows:
                    if a.source == p.target:
                        nxt.append(Path(p.source, a.target, p.arrows + (a.name,)))
            out.extend(nxt)
            frontier = nxt
        return out


def concat(p: Path, q: Path) -> Path | None:
    if p.target != q.source:
        return None
    return Path(p.source, q.target, p.arrows + q.arrows)


class BoundQuiverAlgebra:
    """The finite-dimensional algebra kQ/I with a chosen path basis.

    Construct through :func:`validate_algebra`.
    """

    def __init__(self, quiver: BoundQuiver, field: Field, basis, normal_forms, max_path_len, nilpotency_bound):
        self.quiver = quiver
        self.field = field
        self.path_basis: tuple[Path, ...] = tuple(basis)
        self._index = {p: i for i, p in enumerate(self.path_basis)}
        self._nf = normal_forms
        self.max_path_len = max_path_len
        self.nilpotency_bound = nilpotency_bound
        self._opposite: BoundQuiverAlgebra | None = None

    def __repr__(self):
        return f"BoundQuiverAlgebra({len(self.quiver.vertices)} vertices, dim {self.dim}, {self.field})"

    @property
    def vertices(self) -> tuple[str, ...]:
        return self.quiver.vertices

    @property
    def arrows(self) -> tuple[Arrow, ...]:
        return self.quiver.arrows

    @property
    def dim(self) -> int:
        return len(self.path_basis)

    def arrow(self, name: str) -> Arrow:
        return self.quiver.arrow_map[name]

    def basis_from(self, v: str) -> list[Path]:
        return [p for p in self.path_basis if p.source == v]

    def basis_to(self, v: str) -> list[Path]:
        return [p for p in self.path_basis if p.target == v]

    def basis_between(self, s: str, t: str) -> list[Path]:
        return [p for p in self.path_basis if p.source == s and p.target == t]

    def normal_form(self, p: Path) -> dict[Path, object]:
        """The residue of a path as {basis path: nonzero coefficient}."""
        if len(p) >= self.max_path_len:
            return {}
        return dict(self._nf[p])

    def multiply(self, x: dict[Path, object], y: dict[Path, object]) -> dict[Path, object]:
        f = self.field
        out: dict[Path, object] = {}
        for p, c in x.items():
            for q, d in y.items():
                pq = concat(p, q)
                if pq is None:
                    continue
                for r, e in self.normal_form(pq).items():
                    out[r] = f.scalar(out.get(r, 0) + c * d * e)
        return {k: v for k, v in out.items() if v != 0}

    def opposite(self) -> "BoundQuiverAlgebra":
        if self._opposite is None:
            op = validate_algebra(self.quiver.opposite(), self.field, self.max_path_len)
            op._opposite = self
            self._opposite = op
        return self._opposite


def validate_algebra(q: BoundQuiver, f: Field, max_path_len: int) -> BoundQuiverAlgebra:
    """Compute a path basis of kQ/I, checking finite dimensionality.

    Every path of length ``max_path_len`` must lie in the span of the relation
    consequences u*rho*w (all terms of length <= max_path_len); then every
    longer path is in I as well, and the quotient is computed inside the span
    of paths shorter than the bound.
    """
    if max_path_len < 1:
        raise QuiverError("max_path_len must be >= 1")
    L = max_path_len
    paths = q.paths_up_to(L)
    # longest paths first so they become pivots and short paths form the basis
    order = sorted(paths, key=lambda p: (-len(p), p.source, p.arrows))
    col = {p: i for i, p in enumerate(order)}
    n = len(order)
    starts: dict[str, list[Path]] = {}
    ends: dict[str, list[Path]] = {}
    for p in paths:
        starts.setdefault(p.source, []).append(p)
        ends.setdefault(p.target, []).append(p)

    full_rows, fitting_rows = [], []
    for rel in q.relations:
        terms = [(f.scalar(c), p) for c, p in rel.terms]
        shortest = min(len(p) for _, p in terms)
        longest = max(len(p) for _, p in terms)
        for u in ends.get(rel.source, []):
            for w in starts.get(rel.target, []):
                extra = len(u) + len(w)
                if extra + shortest > L:
                    continue
                row = f.zeros_array(1, n)[0]
                for c, p in terms:
                    if extra + len(p) <= L:
                        full = Path(u.source, w.target, u.arrows + p.arrows + w.arrows)
                        row[col[full]] = f.scalar(row[col[full]] + c)
                if np.any(row != 0):
                    full_rows.append(row)
                    if extra + longest <= L:
                        fitting_rows.append(row)

    top = [p for p in paths if len(p) == L]
    if top:
        span = np.array(fitting_rows, dtype=f.dtype) if fitting_rows else f.zeros_array(0, n)
        red, piv = _rref_array(f, span) if fitting_rows else (span, [])
        red = red[: len(piv)]
        for p in top:
            v = f.zeros_array(1, n)[0]
            v[col[p]] = f.one()
            for i, pc in enumerate(piv):
                if v[pc] != 0:
                    v = f.reduce(v - v[pc] * red[i])
            if np.any(v != 0):
                raise InfiniteDimensionalError(
                    f"path '{p}' of length {L} is not in the ideal: possibly infinite-dimensional, raise the bound"
                )

    gens = list(full_rows)
    for p in top:
        v = f.zeros_array(1, n)[0]
        v[col[p]] = f.one()
        gens.append(v)
    if gens:
        red, piv = _rref_array(f, np.array(gens, dtype=f.dtype))
        red = red[: len(piv)]
    else:
        red, piv = f.zeros_array(0, n), []
    pivset = set(piv)
    basis = [p for p in order if col[p] not in pivset]
    basis.sort(key=lambda p: (len(p), q.vertices.index(p.source), p.arrows))

    nf: dict[Path, dict[Path, object]] = {}
    pivot_row = {pc: i for i, pc in enumerate(piv)}
    for p in paths:
        c = col[p]
        if c in pivot_row:
            r = red[pivot_row[c]]
            nf[p] = {order[j]: f.scalar(-r[j]) for j in range(n) if j != c and r[j] != 0}
        else:
            nf[p] = {p: f.one()}

    nil = None
    for k in range(1, L + 1):
        if all(not nf[p] for p in paths if len(p) == k):
            nil = k
            break
    return BoundQuiverAlgebra(q, f, basis, nf, L, nil)


def enumerate_path_maps(alg: BoundQuiverAlgebra, p: Path | Sequence[str], start: str | None = None):
    """Residue of a composable arrow sequence in the path basis."""
    if not isinstance(p, Path):
        p = alg.quiver.path(p, start)
    return alg.normal_form(p)
