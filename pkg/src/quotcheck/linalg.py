"""Exact scalar fields and dense matrices over them.

Two kinds of field are supported: the rationals (characteristic 0, stored as
``fractions.Fraction`` inside numpy object arrays) and prime fields F_p
(stored as least non-negative residues in ``int64`` arrays).  Every exported
matrix holds canonical entries, so equality of matrices is equality of arrays.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from itertools import product
from typing import Iterable, Iterator, Sequence

import numpy as np

MAX_CHARACTERISTIC = 2**16


class FieldError(ValueError):
    pass


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class Field:
    """The ground field: ``characteristic == 0`` means Q, otherwise F_p."""

    characteristic: int

    def __post_init__(self):
        p = self.characteristic
        if p != 0 and (not _is_prime(p) or p > MAX_CHARACTERISTIC):
            raise FieldError(f"characteristic must be 0 or a prime <= 2^16, got {p}")

    @property
    def is_finite(self) -> bool:
        return self.characteristic != 0

    @property
    def order(self) -> int | None:
        return self.characteristic or None

    @cached_property
    def dtype(self):
        return np.int64 if self.characteristic else object

    def __str__(self):
        return f"F_{self.characteristic}" if self.characteristic else "Q"

    # -- scalars ---------------------------------------------------------
    def scalar(self, x) -> int | Fraction:
        p = self.characteristic
        if isinstance(x, str):
            x = Fraction(x.strip())
        if p:
            x = Fraction(x)
            num = x.numerator % p
            den = x.denominator % p
            if den == 0:
                raise FieldError(f"{x} has no image in F_{p}")
            return (num * pow(den, p - 2, p)) % p
        return Fraction(x)

    def zero(self):
        return 0 if self.characteristic else Fraction(0)

    def one(self):
        return 1 if self.characteristic else Fraction(1)

    def inv(self, x):
        p = self.characteristic
        if p:
            x = int(x) % p
            if x == 0:
                raise ZeroDivisionError("inverse of zero")
            return pow(x, p - 2, p)
        return 1 / Fraction(x)

    def elements(self) -> Iterator:
        if not self.characteristic:
            raise FieldError("Q is infinite")
        return iter(range(self.characteristic))

    def nonzero_elements(self) -> Iterator:
        return iter(range(1, self.characteristic)) if self.characteristic else iter(())

    def random_scalar(self, rng: np.random.Generator, nonzero: bool = False):
        p = self.characteristic
        if p:
            lo = 1 if nonzero else 0
            return int(rng.integers(lo, p))
        while True:
            v = Fraction(int(rng.integers(-4, 5)), int(rng.integers(1, 3)))
            if v or not nonzero:
                return v

    def format(self, x) -> str:
        return str(int(x)) if self.characteristic else str(Fraction(x))

    # -- raw arrays --------------------------------------------------------
    def array(self, rows) -> np.ndarray:
        rows = [list(r) for r in rows]
        if self.characteristic:
            out = np.array(
                [[self.scalar(v) for v in r] for r in rows], dtype=np.int64
            )
        else:
            out = np.empty((len(rows), len(rows[0]) if rows else 0), dtype=object)
            for i, r in enumerate(rows):
                for j, v in enumerate(r):
                    out[i, j] = self.scalar(v)
        return out

    def zeros_array(self, r: int, c: int) -> np.ndarray:
        if self.characteristic:
            return np.zeros((r, c), dtype=np.int64)
        out = np.empty((r, c), dtype=object)
        out.fill(Fraction(0))
        return out

    def eye_array(self, n: int) -> np.ndarray:
        out = self.zeros_array(n, n)
        for i in range(n):
            out[i, i] = self.one()
        return out

    def reduce(self, arr: np.ndarray) -> np.ndarray:
        if self.characteristic:
            return np.mod(arr, self.characteristic)
        return arr

    def mul(self, a: np.ndarray, b: np.ndarray) -> np.ndarray:
        if a.shape[1] == 0 or a.shape[0] == 0 or b.shape[1] == 0:
            return self.zeros_array(a.shape[0], b.shape[1])
        if self.characteristic:
            return np.mod(a @ b, self.characteristic)
        return a.dot(b)


# ---------------------------------------------------------------------------
# elimination kernels on raw arrays


def _rref_array(field: Field, arr: np.ndarray) -> tuple[np.ndarray, list[int]]:
    a = arr.copy()
    m, n = a.shape
    p = field.characteristic
    pivots: list[int] = []
    r = 0
    for c in range(n):
        if r == m:
            break
        col = a[r:, c]
        nz = np.flatnonzero(col != 0)
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i]] = a[[i, r]]
        inv = field.inv(a[r, c])
        if p:
            a[r] = (a[r] * inv) % p
        else:
            a[r] = a[r] * inv
        colv = a[:, c].copy()
        colv[r] = 0
        rows = np.flatnonzero(colv != 0)
        if rows.size:
            upd = a[rows] - np.outer(colv[rows], a[r])
            a[rows] = upd % p if p else upd
        pivots.append(c)
        r += 1
    return a, pivots


def _nullspace_array(field: Field, arr: np.ndarray) -> np.ndarray:
    """Columns spanning the right null space; identity on the free columns."""
    m, n = arr.shape
    if m == 0:
        return field.eye_array(n)
    red, pivots = _rref_array(field, arr)
    free = [c for c in range(n) if c not in set(pivots)]
    out = field.zeros_array(n, len(free))
    for k, f in enumerate(free):
        out[f, k] = field.one()
        for i, pc in enumerate(pivots):
            out[pc, k] = -red[i, f]
    return field.reduce(out)


# ---------------------------------------------------------------------------


class Matrix:
    """Immutable dense matrix over a :class:`Field`."""

    __slots__ = ("field", "a", "_key")

    def __init__(self, field: Field, arr: np.ndarray):
        self.field = field
        if arr.ndim != 2:
            raise ValueError("matrices are two-dimensional")
        self.a = arr
        self._key = None

    # construction
    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: int | None = None):
        rows = list(rows)
        if not rows:
            return cls.zeros(field, 0, cols or 0)
        return cls(field, field.array(rows))

    @classmethod
    def zeros(cls, field: Field, r: int, c: int):
        return cls(field, field.zeros_array(r, c))

    @classmethod
    def identity(cls, field: Field, n: int):
        return cls(field, field.eye_array(n))

    @classmethod
    def column(cls, field: Field, values: Iterable):
        values = list(values)
        return cls(field, field.array([[v] for v in values]) if values else field.zeros_array(0, 1))

    @classmethod
    def hstack(cls, field: Field, mats: Sequence["Matrix"], rows: int | None = None):
        mats = list(mats)
        if not mats:
            return cls.zeros(field, rows or 0, 0)
        return cls(field, np.hstack([m.a for m in mats]))

    @classmethod
    def vstack(cls, field: Field, mats: Sequence["Matrix"], cols: int | None = None):
        mats = list(mats)
        if not mats:
            return cls.zeros(field, 0, cols or 0)
        return cls(field, np.vstack([m.a for m in mats]))

    @classmethod
    def block_diag(cls, field: Field, mats: Sequence["Matrix"]):
        r = sum(m.rows for m in mats)
        c = sum(m.cols for m in mats)
        out = field.zeros_array(r, c)
        i = j = 0
        for m in mats:
            out[i : i + m.rows, j : j + m.cols] = m.a
            i += m.rows
            j += m.cols
        return cls(field, out)

    # shape / access
    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    @property
    def shape(self) -> tuple[int, int]:
        return self.a.shape

    def __getitem__(self, idx):
        return self.a[idx]

    def entries(self) -> list:
        return [self.a[i, j] for i in range(self.rows) for j in range(self.cols)]

    def to_strings(self) -> list[list[str]]:
        return [[self.field.format(v) for v in row] for row in self.a]

    @property
    def key(self):
        if self._key is None:
            if self.field.characteristic:
                self._key = (self.shape, self.a.tobytes())
            else:
                self._key = (self.shape, tuple(self.a.flat))
        return self._key

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.shape == other.shape
            and self.key == other.key
        )

    def __hash__(self):
        return hash(self.key)

    def __repr__(self):
        return f"Matrix({self.field}, {self.to_strings()})"

    # arithmetic
    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        return Matrix(self.field, self.field.mul(self.a, other.a))

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} + {other.shape}")
        return Matrix(self.field, self.field.reduce(self.a + other.a))

    def __sub__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} - {other.shape}")
        return Matrix(self.field, self.field.reduce(self.a - other.a))

    def __neg__(self) -> "Matrix":
        return Matrix(self.field, self.field.reduce(-self.a))

    def scale(self, c) -> "Matrix":
        c = self.field.scalar(c)
        return Matrix(self.field, self.field.reduce(self.a * c))

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.a.T.copy())

    def is_zero(self) -> bool:
        return not np.any(self.a != 0)

    def power(self, k: int) -> "Matrix":
        out = Matrix.identity(self.field, self.rows)
        base = self
        while k:
            if k & 1:
                out = out @ base
            base = base @ base
            k >>= 1
        return out

    # elimination
    def rref(self) -> tuple["Matrix", list[int]]:
        red, piv = _rref_array(self.field, self.a)
        return Matrix(self.field, red), piv

    def rank(self) -> int:
        if self.rows == 0 or self.cols == 0:
            return 0
        return len(_rref_array(self.field, self.a)[1])

    def kernel_matrix(self) -> "Matrix":
        return Matrix(self.field, _nullspace_array(self.field, self.a))

    def kernel_basis(self) -> list["Matrix"]:
        k = self.kernel_matrix()
        return [Matrix(self.field, k.a[:, [j]]) for j in range(k.cols)]

    def column_space(self) -> "Matrix":
        """Columns forming a basis of the image (pivot columns of ``self``)."""
        if self.rows == 0:
            return Matrix.zeros(self.field, 0, 0)
        _, piv = _rref_array(self.field, self.a)
        return Matrix(self.field, self.a[:, piv])

    def left_kernel_matrix(self) -> "Matrix":
        """Rows spanning {y : y @ self == 0}."""
        return self.T.kernel_matrix().T

    def is_invertible(self) -> bool:
        return self.rows == self.cols and self.rank() == self.rows

    def inverse(self) -> "Matrix":
        n = self.rows
        if n != self.cols:
            raise ValueError("inverse of a non-square matrix")
        if n == 0:
            return self
        aug = np.hstack([self.a, self.field.eye_array(n)])
        red, piv = _rref_array(self.field, aug)
        if piv[:n] != list(range(n)):
            raise ZeroDivisionError("singular matrix")
        return Matrix(self.field, red[:, n:].copy())

    def left_inverse(self) -> "Matrix":
        """Some L with L @ self == I (self must have full column rank)."""
        m, k = self.shape
        if k == 0:
            return Matrix.zeros(self.field, 0, m)
        _, piv = _rref_array(self.field, self.a.T)
        if len(piv) != k:
            raise ValueError("matrix does not have full column rank")
        sq = Matrix(self.field, self.a[piv, :]).inverse()
        out = self.field.zeros_array(k, m)
        out[:, piv] = sq.a
        return Matrix(self.field, out)

    def right_inverse(self) -> "Matrix":
        return self.T.left_inverse().T


def rref(m: Matrix) -> tuple[Matrix, list[int]]:
    return m.rref()


def kernel_basis(m: Matrix) -> list[Matrix]:
    return m.kernel_basis()


def solve_affine(a: Matrix, b: Matrix) -> tuple[Matrix, Matrix] | None:
    """Solve ``a @ x == b`` for a column (or block of columns) ``b``.

    Returns ``(x0, kernel)`` where ``kernel`` has the null-space basis as
    columns, or ``None`` if the system is inconsistent.
    """
    if b.rows != a.rows:
        raise ValueError(f"dimension mismatch: {a.shape} vs right-hand side {b.shape}")
    field = a.field
    n = a.cols
    kern = a.kernel_matrix()
    if a.rows == 0:
        return Matrix.zeros(field, n, b.cols), kern
    aug = np.hstack([a.a, b.a])
    red, piv = _rref_array(field, aug)
    if any(p >= n for p in piv):
        return None
    x = field.zeros_array(n, b.cols)
    for i, pc in enumerate(piv):
        x[pc] = red[i, n:]
    return Matrix(field, x), kern


class Subspace:
    """A subspace of k^n held in reduced echelon form (rows span it)."""

    def __init__(self, field: Field, n: int, spanning: np.ndarray | None = None):
        self.field = field
        self.n = n
        if spanning is None or spanning.shape[0] == 0:
            self.basis = field.zeros_array(0, n)
            self.pivots: list[int] = []
        else:
            red, piv = _rref_array(field, spanning)
            self.basis = red[: len(piv)].copy()
            self.pivots = piv

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, v: np.ndarray) -> np.ndarray:
        """Canonical coset representative (zero at pivot positions)."""
        v = np.array(v, dtype=self.field.dtype).reshape(-1).copy()
        for i, pc in enumerate(self.pivots):
            c = v[pc]
            if c != 0:
                v = v - c * self.basis[i]
                if self.field.characteristic:
                    v %= self.field.characteristic
        return v

    def contains(self, v: np.ndarray) -> bool:
        return not np.any(self.reduce(v) != 0)

    def complement_positions(self) -> list[int]:
        piv = set(self.pivots)
        return [i for i in range(self.n) if i not in piv]


def enumerate_vectors(field: Field, n: int) -> Iterator[tuple]:
    """Every vector of F_p^n (finite fields only)."""
    return product(range(field.characteristic), repeat=n)


def projective_points(field: Field, n: int) -> Iterator[tuple]:
    """One nonzero vector per line of F_p^n (first nonzero coordinate is 1)."""
    p = field.characteristic
    for lead in range(n):
        for tail in product(range(p), repeat=n - lead - 1):
            yield (0,) * lead + (1,) + tail
