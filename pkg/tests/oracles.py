"""Independent reference computations used to pin down derived values.

Nothing here calls the package's linear algebra: the eliminator is plain
Python over Fractions or residues, and Hom spaces over F_2 are found by
enumerating every vertex-wise map.
"""

from __future__ import annotations

from fractions import Fraction
from itertools import product
from math import log2


def naive_rref(rows, p: int = 0):
    """Reduced row echelon form and pivot columns (p = 0 means Q)."""
    if p:
        norm = lambda x: int(x) % p
        inv = lambda x: pow(int(x), p - 2, p)
    else:
        norm = Fraction
        inv = lambda x: 1 / Fraction(x)
    m = [[norm(x) for x in r] for r in rows]
    ncols = len(m[0]) if m else 0
    pivots, r = [], 0
    for c in range(ncols):
        pr = next((i for i in range(r, len(m)) if m[i][c] != 0), None)
        if pr is None:
            continue
        m[r], m[pr] = m[pr], m[r]
        s = inv(m[r][c])
        m[r] = [norm(x * s) for x in m[r]]
        for i in range(len(m)):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [norm(a - f * b) for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return m, pivots


def naive_rank(rows, p: int = 0) -> int:
    return len(naive_rref(rows, p)[1]) if rows else 0


def _ints(mat) -> list[list[int]]:
    return [[int(x) for x in row] for row in mat.to_strings()]


def _mm(a, b, r: int, k: int, c: int, p: int = 2):
    """(r x k) times (k x c) mod p, valid when any dimension is 0."""
    return tuple(tuple(sum(a[i][j] * b[j][l] for j in range(k)) % p for l in range(c)) for i in range(r))


def brute_force_homs(m, n, p: int = 2) -> list[dict]:
    """Every vertex-wise map m -> n over F_p whose squares commute."""
    verts = list(m.alg.vertices)
    shapes = [(n.dims[v], m.dims[v]) for v in verts]
    arrows = [(a.name, a.source, a.target) for a in m.alg.arrows]
    mm = {a: _ints(m.maps[a]) for a, _, _ in arrows}
    nm = {a: _ints(n.maps[a]) for a, _, _ in arrows}
    out = []
    for bits in product(range(p), repeat=sum(r * c for r, c in shapes)):
        comps, k = {}, 0
        for v, (r, c) in zip(verts, shapes):
            comps[v] = tuple(tuple(bits[k + i * c : k + (i + 1) * c]) for i in range(r))
            k += r * c
        if all(_mm(comps[t], mm[a], n.dims[t], m.dims[t], m.dims[s], p)
               == _mm(nm[a], comps[s], n.dims[t], n.dims[s], m.dims[s], p) for a, s, t in arrows):
            out.append(comps)
    return out


def brute_force_homs_f2(m, n) -> list[dict]:
    return brute_force_homs(m, n, 2)


def brute_force_hom_dim_f2(m, n) -> int:
    return int(log2(len(brute_force_homs_f2(m, n))))


def ext_dim_by_cokernel_f2(omega, iota, p0, a) -> int:
    """dim coker(Hom(P0, a) -> Hom(Omega, a)) over F_2, by enumeration.

    The restriction along iota: Omega -> P0 is applied to every map P0 -> a,
    and the cokernel has |Hom(Omega, a)| / |image| elements.
    """
    verts = list(a.alg.vertices)
    i_comps = {v: _ints(iota.comps[v]) for v in verts}
    total = len(brute_force_homs_f2(omega, a))
    image = {tuple(_mm(phi[v], i_comps[v], a.dims[v], p0.dims[v], omega.dims[v]) for v in verts)
             for phi in brute_force_homs_f2(p0, a)}
    return int(log2(total // len(image)))


def _flatten(comps, verts) -> tuple:
    return tuple(x for v in verts for row in comps[v] for x in row)


def brute_force_ideal_dim(a, b, members, p: int = 2) -> int:
    """dim of the span of all composites a -> W_i -> b over F_p, by enumeration."""
    verts = list(a.alg.vertices)
    rows = set()
    for w in members:
        homs_in = brute_force_homs(w, b, p)
        for f in brute_force_homs(a, w, p):
            for g in homs_in:
                comp = {v: _mm(g[v], f[v], b.dims[v], w.dims[v], a.dims[v], p) for v in verts}
                rows.add(_flatten(comp, verts))
    rows = [list(r) for r in rows if any(r)]
    return naive_rank(rows, p)
