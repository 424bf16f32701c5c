"""Deterministic exact linear algebra over Q and F_p.

Everything downstream (hom spaces, Ext groups, coset spaces) reduces to the
four primitives here: ``rref``, ``kernel_basis``, ``solve`` and
``quotient_reps``.  All arithmetic is exact: rationals are
``fractions.Fraction`` held in numpy object arrays, prime fields are int64
residues.  Pivoting is leftmost-column-first, topmost-row-first, so every
basis produced anywhere in the package is reproducible across runs.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

__all__ = [
    "Field", "QQ", "GF", "FieldMismatch", "Matrix",
    "rref", "rank", "kernel_basis", "solve", "quotient_reps",
]


class FieldMismatch(ValueError):
    """Raised when matrices over different fields are combined."""


class Field:
    """A field descriptor: the rationals or a prime field F_p."""

    def __init__(self, p: int | None = None):
        if p is not None:
            if p < 2 or p >= 2**31:
                raise ValueError(f"prime must satisfy 2 <= p < 2^31, got {p}")
            for d in range(2, p):
                if d * d > p:
                    break
                if p % d == 0:
                    raise ValueError(f"{p} is not prime")
        self.p = p

    @property
    def is_prime_field(self) -> bool:
        return self.p is not None

    def __eq__(self, other):
        return isinstance(other, Field) and self.p == other.p

    def __hash__(self):
        return hash(("Field", self.p))

    def __repr__(self):
        return "QQ" if self.p is None else f"GF({self.p})"

    # -- scalar helpers -------------------------------------------------

    def of(self, x):
        """Coerce an int / Fraction / string like '3/2' into this field."""
        if self.p is None:
            return Fraction(x)
        if isinstance(x, str):
            x = Fraction(x)
        if isinstance(x, Fraction):
            if x.denominator % self.p == 0:
                raise ZeroDivisionError(f"{x} has no image in GF({self.p})")
            return (x.numerator * pow(x.denominator, -1, self.p)) % self.p
        return int(x) % self.p

    def inv(self, x):
        if self.p is None:
            if x == 0:
                raise ZeroDivisionError("inverse of 0")
            return Fraction(1) / x
        return pow(int(x), -1, self.p)

    def zeros(self, rows: int, cols: int) -> np.ndarray:
        if self.p is None:
            a = np.empty((rows, cols), dtype=object)
            a[:, :] = Fraction(0)
            return a
        return np.zeros((rows, cols), dtype=np.int64)

    def array(self, rows) -> np.ndarray:
        data = [[self.of(x) for x in row] for row in rows]
        ncols = len(data[0]) if data else 0
        if self.p is None:
            a = np.empty((len(data), ncols), dtype=object)
            for i, row in enumerate(data):
                for j, x in enumerate(row):
                    a[i, j] = x
            return a
        return np.array(data, dtype=np.int64).reshape(len(data), ncols)


QQ = Field()


def GF(p: int) -> Field:
    return Field(p)


class Matrix:
    """Dense exact matrix over a fixed field.

    Immutable by convention: no method mutates ``self``; all operations
    return fresh matrices.  ``a`` is an int64 array for F_p (entries reduced
    to [0, p)) and an object array of Fractions for Q.
    """

    __slots__ = ("field", "a")

    def __init__(self, field: Field, a: np.ndarray):
        self.field = field
        self.a = a

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_rows(cls, field: Field, rows) -> "Matrix":
        return cls(field, field.array(rows))

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, field.zeros(rows, cols))

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        a = field.zeros(n, n)
        for i in range(n):
            a[i, i] = field.of(1)
        return cls(field, a)

    @classmethod
    def column(cls, field: Field, entries) -> "Matrix":
        return cls.from_rows(field, [[x] for x in entries])

    # -- shape ----------------------------------------------------------

    @property
    def rows(self) -> int:
        return self.a.shape[0]

    @property
    def cols(self) -> int:
        return self.a.shape[1]

    def __getitem__(self, ij):
        return self.a[ij]

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return (self.field == other.field and self.a.shape == other.a.shape
                and bool(np.all(self.a == other.a)))

    def __repr__(self):
        return f"Matrix({self.field}, {self.a.tolist()})"

    def is_zero(self) -> bool:
        return self.a.size == 0 or bool(np.all(self.a == self.field.of(0)))

    def copy_array(self) -> np.ndarray:
        return self.a.copy()

    # -- arithmetic -----------------------------------------------------

    def _check(self, other: "Matrix"):
        if self.field != other.field:
            raise FieldMismatch(f"{self.field} vs {other.field}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.a.shape != other.a.shape:
            raise ValueError("shape mismatch in +")
        c = self.a + other.a
        if self.field.is_prime_field:
            c %= self.field.p
        return Matrix(self.field, c)

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.a.shape != other.a.shape:
            raise ValueError("shape mismatch in -")
        c = self.a - other.a
        if self.field.is_prime_field:
            c %= self.field.p
        return Matrix(self.field, c)

    def __neg__(self) -> "Matrix":
        c = -self.a
        if self.field.is_prime_field:
            c %= self.field.p
        return Matrix(self.field, c)

    def __mul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch in *: {self.a.shape} x {other.a.shape}")
        if self.a.size == 0 or other.a.size == 0:
            return Matrix.zeros(self.field, self.rows, other.cols)
        c = self.a @ other.a
        if self.field.is_prime_field:
            c %= self.field.p
        return Matrix(self.field, c)

    def scale(self, s) -> "Matrix":
        s = self.field.of(s)
        c = self.a * s
        if self.field.is_prime_field:
            c %= self.field.p
        return Matrix(self.field, c)

    def transpose(self) -> "Matrix":
        return Matrix(self.field, self.a.T.copy())

    def hstack(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix(self.field, np.hstack([self.a, other.a]))

    def vstack(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix(self.field, np.vstack([self.a, other.a]))

    def take_columns(self, idx) -> "Matrix":
        return Matrix(self.field, self.a[:, list(idx)])

    def kron(self, other: "Matrix") -> "Matrix":
        self._check(other)
        c = np.kron(self.a, other.a)
        if self.field.is_prime_field:
            c %= self.field.p
        return Matrix(self.field, c.reshape(self.rows * other.rows, self.cols * other.cols))

    @staticmethod
    def block_diag(field: Field, blocks) -> "Matrix":
        rows = sum(b.rows for b in blocks)
        cols = sum(b.cols for b in blocks)
        a = field.zeros(rows, cols)
        r = c = 0
        for b in blocks:
            if b.field != field:
                raise FieldMismatch(f"{b.field} vs {field}")
            a[r:r + b.rows, c:c + b.cols] = b.a
            r += b.rows
            c += b.cols
        return Matrix(field, a)

    def flatten(self) -> "Matrix":
        """Row-major flattening into a single column."""
        return Matrix(self.field, self.a.reshape(self.rows * self.cols, 1).copy())

    def unflatten(self, rows: int, cols: int) -> "Matrix":
        return Matrix(self.field, self.a.reshape(rows, cols).copy())


# ----------------------------------------------------------------------
# Elimination primitives
# ----------------------------------------------------------------------

def _rref_array(field: Field, a: np.ndarray):
    """In-place reduced row echelon form; returns pivot column list."""
    nrows, ncols = a.shape
    pivots = []
    r = 0
    zero = field.of(0)
    for c in range(ncols):
        if r >= nrows:
            break
        # topmost nonzero entry in column c at or below row r
        sub = a[r:, c]
        nz = np.nonzero(sub != zero)[0]
        if nz.size == 0:
            continue
        i = r + int(nz[0])
        if i != r:
            a[[r, i], :] = a[[i, r], :]
        piv = a[r, c]
        if piv != field.of(1):
            a[r, :] = a[r, :] * field.inv(piv)
            if field.is_prime_field:
                a[r, :] %= field.p
        col = a[:, c].copy()
        col[r] = zero
        hit = np.nonzero(col != zero)[0]
        if hit.size:
            a[hit, :] = a[hit, :] - np.outer(col[hit], a[r, :])
            if field.is_prime_field:
                a[hit, :] %= field.p
        pivots.append(c)
        r += 1
    return pivots


def rref(A: Matrix):
    """Reduced row echelon form.  Returns (R, pivot column indices)."""
    a = A.copy_array()
    pivots = _rref_array(A.field, a)
    return Matrix(A.field, a), pivots


def rank(A: Matrix) -> int:
    return len(rref(A)[1])


def kernel_basis(A: Matrix) -> Matrix:
    """Columns form the canonical free-variable basis of {x : Ax = 0}."""
    R, pivots = rref(A)
    n = A.cols
    free = [j for j in range(n) if j not in pivots]
    K = A.field.zeros(n, len(free))
    one = A.field.of(1)
    for k, j in enumerate(free):
        K[j, k] = one
        for i, c in enumerate(pivots):
            v = -R.a[i, j]
            if A.field.is_prime_field:
                v %= A.field.p
            K[c, k] = v
    return Matrix(A.field, K)


def solve(A: Matrix, b: Matrix):
    """A particular solution x of Ax = b (free variables 0), or None.

    ``b`` may have several columns; solutions are found column by column and
    None is returned if any column is inconsistent.
    """
    if A.field != b.field:
        raise FieldMismatch(f"{A.field} vs {b.field}")
    if A.rows != b.rows:
        raise ValueError(f"solve: {A.rows} rows vs rhs {b.rows}")
    aug = np.hstack([A.copy_array(), b.copy_array()])
    pivots = _rref_array(A.field, aug)
    n = A.cols
    # any pivot landing in the rhs block marks inconsistency
    if any(c >= n for c in pivots):
        return None
    X = A.field.zeros(n, b.cols)
    for i, c in enumerate(pivots):
        X[c, :] = aug[i, n:]
    return Matrix(A.field, X)


def quotient_reps(ambient_dim: int, sub: Matrix):
    """Coset representatives and projection for k^ambient / span(sub columns).

    Returns (reps, project): ``reps`` has one column per quotient basis
    vector (a standard basis vector of the ambient space), and ``project``
    maps an ambient vector to its coordinate vector in that basis.
    ``project * sub == 0`` and ``project * reps == identity``.
    """
    field = sub.field
    if sub.rows != ambient_dim:
        raise ValueError(f"sub lives in k^{sub.rows}, expected k^{ambient_dim}")
    R, pivots = rref(sub.transpose())
    free = [j for j in range(ambient_dim) if j not in pivots]
    reps = field.zeros(ambient_dim, len(free))
    one = field.of(1)
    for k, j in enumerate(free):
        reps[j, k] = one
    # One reduction pass v -> v - sum_i v[c_i] R_i zeroes every pivot
    # coordinate (rows are fully reduced), so the free coordinates of the
    # result are the quotient coordinates:
    #   project[k, m] = delta(m, free_k) - R_i[free_k] when m = pivot c_i.
    proj = field.zeros(len(free), ambient_dim)
    for k, j in enumerate(free):
        proj[k, j] = one
        for i, c in enumerate(pivots):
            v = -R.a[i, j]
            if field.is_prime_field:
                v %= field.p
            proj[k, c] = v
    return Matrix(field, reps), Matrix(field, proj)
