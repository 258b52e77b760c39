"""String algebras: detection, string enumeration, string and band modules.

Words use arrow names separated by spaces; an inverse letter carries the
suffix ``^-1``.  A direct letter ``a`` walks from source(a) to target(a), an
inverse letter ``a^-1`` walks back.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .linalg import Matrix
from .quiver import BoundQuiverAlgebra, Path
from .rep import Representation


class StringError(ValueError):
    pass


Letter = tuple[str, int]   # (arrow name, +1 direct / -1 inverse)


def parse_word(text: str) -> tuple[Letter, ...]:
    out = []
    for tok in text.split():
        if tok.endswith("^-1"):
            out.append((tok[:-3], -1))
        else:
            out.append((tok, 1))
    return tuple(out)


def format_word(letters: Iterable[Letter]) -> str:
    return " ".join(n if s == 1 else f"{n}^-1" for n, s in letters)


@dataclass(frozen=True)
class StringWord:
    start: str
    letters: tuple[Letter, ...]

    def __str__(self):
        return format_word(self.letters) if self.letters else f"e{self.start}"

    def __len__(self):
        return len(self.letters)


@dataclass(frozen=True)
class BandWord:
    letters: tuple[Letter, ...]

    def __str__(self):
        return format_word(self.letters)


@dataclass
class StringAlgebraInfo:
    kind: str                 # "gentle", "string" or "neither"
    witness: str | None = None


def _ends(alg: BoundQuiverAlgebra, letter: Letter) -> tuple[str, str]:
    a = alg.arrow(letter[0])
    return (a.source, a.target) if letter[1] == 1 else (a.target, a.source)


def _monomials(alg: BoundQuiverAlgebra) -> list[tuple[str, ...]] | None:
    out = []
    for rel in alg.quiver.relations:
        terms = [(c, p) for c, p in rel.terms if alg.field.scalar(c) != 0]
        if len(terms) != 1:
            return None
        out.append(terms[0][1].arrows)
    return out


def detect_string_algebra(alg: BoundQuiverAlgebra) -> StringAlgebraInfo:
    """Classify the algebra as gentle, string (special biserial monomial) or neither."""
    arrows = alg.arrows
    for v in alg.vertices:
        outs = [a for a in arrows if a.source == v]
        ins = [a for a in arrows if a.target == v]
        if len(outs) > 2:
            return StringAlgebraInfo("neither", f"vertex {v} has {len(outs)} outgoing arrows")
        if len(ins) > 2:
            return StringAlgebraInfo("neither", f"vertex {v} has {len(ins)} incoming arrows")
    mons = _monomials(alg)
    if mons is None:
        return StringAlgebraInfo("neither", "ideal is not monomial")
    rel2 = {m for m in mons if len(m) == 2}

    def zero(x, y):
        return not alg.normal_form(Path(x.source, y.target, (x.name, y.name)))

    for b in arrows:
        after = [g for g in arrows if g.source == b.target and not zero(b, g)]
        before = [g for g in arrows if g.target == b.source and not zero(g, b)]
        if len(after) > 1:
            return StringAlgebraInfo("neither", f"arrow {b.name} has {len(after)} non-zero continuations")
        if len(before) > 1:
            return StringAlgebraInfo("neither", f"arrow {b.name} has {len(before)} non-zero predecessors")
    gentle = all(len(m) == 2 for m in mons)
    witness = None
    if gentle:
        for b in arrows:
            after = [g for g in arrows if g.source == b.target and (b.name, g.name) in rel2]
            before = [g for g in arrows if g.target == b.source and (g.name, b.name) in rel2]
            if len(after) > 1 or len(before) > 1:
                gentle, witness = False, f"arrow {b.name} lies in more than one relation on one side"
                break
    else:
        witness = "a relation has length > 2"
    return StringAlgebraInfo("gentle" if gentle else "string", None if gentle else witness)


def _require_string(alg):
    info = detect_string_algebra(alg)
    if info.kind == "neither":
        raise StringError(f"not a string algebra: {info.witness}")
    return _monomials(alg)


def _contains(run: tuple[str, ...], mons) -> bool:
    for m in mons:
        k = len(m)
        for i in range(len(run) - k + 1):
            if run[i : i + k] == m:
                return True
    return False


def is_valid_string(alg: BoundQuiverAlgebra, start: str, letters: tuple[Letter, ...], mons=None) -> bool:
    if mons is None:
        mons = _monomials(alg) or []
    cur = start
    for i, l in enumerate(letters):
        if l[0] not in alg.quiver.arrow_map:
            return False
        s, t = _ends(alg, l)
        if s != cur:
            return False
        cur = t
        if i and letters[i - 1] == (l[0], -l[1]):
            return False
    # direct runs and inverse runs must avoid the relations
    run, sign = [], 0
    for l in letters + (("", 0),):
        if l[1] == sign and sign != 0:
            run.append(l[0])
            continue
        if sign == 1 and _contains(tuple(run), mons):
            return False
        if sign == -1 and _contains(tuple(reversed(run)), mons):
            return False
        run, sign = [l[0]], l[1]
    return True


def inverse_word(s: StringWord, alg: BoundQuiverAlgebra) -> StringWord:
    if not s.letters:
        return s
    end = _ends(alg, s.letters[-1])[1]
    return StringWord(end, tuple((n, -e) for n, e in reversed(s.letters)))


def make_string(alg: BoundQuiverAlgebra, text: str, start: str | None = None) -> StringWord:
    letters = parse_word(text)
    if not letters:
        if start is None:
            raise StringError("an empty string needs a start vertex")
        return StringWord(start, ())
    for n, _ in letters:
        if n not in alg.quiver.arrow_map:
            raise StringError(f"unknown arrow {n!r}")
    st = _ends(alg, letters[0])[0]
    mons = _require_string(alg)
    if not is_valid_string(alg, st, letters, mons):
        raise StringError(f"'{text}' is not a valid string")
    return StringWord(st, letters)


def canonical(s: StringWord, alg: BoundQuiverAlgebra) -> StringWord:
    if not s.letters:
        return s
    inv = inverse_word(s, alg)
    return min(s, inv, key=lambda w: format_word(w.letters))


def enumerate_strings(alg: BoundQuiverAlgebra, max_len: int) -> list[StringWord]:
    """All strings of length <= max_len, one per {word, inverse} pair."""
    mons = _require_string(alg)
    found: dict[str, StringWord] = {}
    frontier = [StringWord(v, ()) for v in alg.vertices]
    out = list(frontier)
    letters = [(a.name, 1) for a in alg.arrows] + [(a.name, -1) for a in alg.arrows]
    for _ in range(max_len):
        nxt = []
        for s in frontier:
            cur = _ends(alg, s.letters[-1])[1] if s.letters else s.start
            for l in letters:
                if _ends(alg, l)[0] != cur:
                    continue
                w = s.letters + (l,)
                if is_valid_string(alg, s.start, w, mons):
                    nxt.append(StringWord(s.start, w))
        for s in nxt:
            c = canonical(s, alg)
            found.setdefault(format_word(c.letters), c)
        frontier = nxt
    strings = sorted(found.values(), key=lambda w: (len(w), format_word(w.letters)))
    return out + strings


def _walk(alg, start, letters):
    verts = [start]
    for l in letters:
        verts.append(_ends(alg, l)[1])
    return verts


def string_module(alg: BoundQuiverAlgebra, s: StringWord | str, name: str | None = None) -> Representation:
    if isinstance(s, str):
        s = make_string(alg, s)
    F = alg.field
    verts = _walk(alg, s.start, s.letters)
    slot, dims = [], {v: 0 for v in alg.vertices}
    for v in verts:
        slot.append(dims[v])
        dims[v] += 1
    arrs = {a.name: F.zeros_array(dims[a.target], dims[a.source]) for a in alg.arrows}
    for k, (n, e) in enumerate(s.letters):
        if e == 1:
            arrs[n][slot[k + 1], slot[k]] = F.one()
        else:
            arrs[n][slot[k], slot[k + 1]] = F.one()
    maps = {n: Matrix(F, m) for n, m in arrs.items()}
    return Representation(alg, dims, maps, name=name or f"M({s})")


def make_band(alg: BoundQuiverAlgebra, text: str) -> BandWord:
    letters = parse_word(text)
    mons = _require_string(alg)
    if not letters:
        raise StringError("empty band")
    for n, _ in letters:
        if n not in alg.quiver.arrow_map:
            raise StringError(f"unknown arrow {n!r}")
    signs = {e for _, e in letters}
    if signs != {1, -1}:
        raise StringError("a band needs both direct and inverse letters")
    m = len(letters)
    for d in range(1, m):
        if m % d == 0 and letters == letters[:d] * (m // d):
            raise StringError("band word is a proper power")
    st = _ends(alg, letters[0])[0]
    if not is_valid_string(alg, st, letters + letters, mons):
        raise StringError(f"'{text}' is not a cyclic string")
    rots = [letters[i:] + letters[:i] for i in range(m)]
    return BandWord(min(rots, key=format_word))


def jordan_block(F, n: int, lam) -> Matrix:
    m = F.zeros_array(n, n)
    for i in range(n):
        m[i, i] = F.scalar(lam)
        if i + 1 < n:
            m[i, i + 1] = F.one()
    return Matrix(F, m)


def band_module(alg: BoundQuiverAlgebra, b: BandWord | str, lam, n: int = 1,
                name: str | None = None) -> Representation:
    """B(b, n, lam): k^n at every walk position, J_n(lam) on the first direct letter."""
    if isinstance(b, str):
        b = make_band(alg, b)
    F = alg.field
    lam = F.scalar(lam)
    if lam == 0:
        raise StringError("band parameter must be nonzero")
    if n < 1:
        raise StringError("band multiplicity must be >= 1")
    letters = b.letters
    st = _ends(alg, letters[0])[0]
    verts = _walk(alg, st, letters)[:-1]
    m = len(letters)
    slot, dims = [], {v: 0 for v in alg.vertices}
    for v in verts:
        slot.append(dims[v])
        dims[v] += n
    first = next(i for i, l in enumerate(letters) if l[1] == 1)
    eye = F.eye_array(n)
    jb = jordan_block(F, n, lam).a
    arrs = {a.name: F.zeros_array(dims[a.target], dims[a.source]) for a in alg.arrows}
    for k, (nm, e) in enumerate(letters):
        blk = jb if k == first else eye
        i, j = slot[k], slot[(k + 1) % m]
        if e == 1:
            arrs[nm][j : j + n, i : i + n] = blk
        else:
            arrs[nm][i : i + n, j : j + n] = blk
    maps = {nm: Matrix(F, x) for nm, x in arrs.items()}
    return Representation(alg, dims, maps, name=name or f"B({b},{n},{F.format(lam)})")
