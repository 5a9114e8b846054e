"""Exact linear algebra over Z and Z/m.

Matrices hold Python ints (arbitrary precision).  Everything over Z/m is
answered by lifting to Z and appending ``m * I`` columns, so a single Smith
normal form routine drives kernels, solving and diagonalization for both
rings.

Homomorphisms act on column vectors: column ``j`` of a matrix is the image
of generator ``j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from math import gcd
from typing import Iterable, Sequence

from .errors import DimensionError

__all__ = [
    "RingSpec",
    "ZZ",
    "Zmod",
    "Matrix",
    "SmithForm",
    "snf",
    "kernel_basis",
    "solve",
    "LinearSystem",
]


@dataclass(frozen=True)
class RingSpec:
    """Either the integers (``modulus is None``) or Z/modulus."""

    modulus: int | None = None

    def __post_init__(self):
        if self.modulus is not None and self.modulus < 2:
            raise ValueError(f"modulus must be >= 2, got {self.modulus}")

    @property
    def is_integers(self) -> bool:
        return self.modulus is None

    def reduce(self, x: int) -> int:
        return x if self.modulus is None else x % self.modulus

    def __str__(self):
        return "Z" if self.modulus is None else f"Z/{self.modulus}"


ZZ = RingSpec()


def Zmod(m: int) -> RingSpec:
    return RingSpec(m)


@dataclass(frozen=True)
class Matrix:
    """Dense immutable matrix, row-major entries."""

    ring: RingSpec
    rows: int
    cols: int
    entries: tuple = field(repr=False)

    def __post_init__(self):
        if self.rows < 0 or self.cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        entries = tuple(int(x) for x in self.entries)
        if len(entries) != self.rows * self.cols:
            raise ValueError(
                f"expected {self.rows * self.cols} entries, got {len(entries)}"
            )
        if self.ring.modulus is not None:
            m = self.ring.modulus
            entries = tuple(x % m for x in entries)
        object.__setattr__(self, "entries", entries)

    # construction

    @classmethod
    def from_rows(cls, ring: RingSpec, rows: Sequence[Sequence[int]], cols: int | None = None) -> "Matrix":
        rows = [list(r) for r in rows]
        if cols is None:
            cols = len(rows[0]) if rows else 0
        for r in rows:
            if len(r) != cols:
                raise ValueError("ragged rows")
        return cls(ring, len(rows), cols, tuple(x for r in rows for x in r))

    @classmethod
    def from_columns(cls, ring: RingSpec, columns: Sequence[Sequence[int]], rows: int) -> "Matrix":
        columns = [list(c) for c in columns]
        for c in columns:
            if len(c) != rows:
                raise ValueError("ragged columns")
        return cls.from_rows(ring, [[c[i] for c in columns] for i in range(rows)], len(columns))

    @classmethod
    def column_vector(cls, ring: RingSpec, values: Iterable[int]) -> "Matrix":
        values = tuple(values)
        return cls(ring, len(values), 1, values)

    @classmethod
    def zeros(cls, ring: RingSpec, rows: int, cols: int) -> "Matrix":
        return cls(ring, rows, cols, (0,) * (rows * cols))

    @classmethod
    def identity(cls, ring: RingSpec, n: int) -> "Matrix":
        return cls.diagonal(ring, [1] * n)

    @classmethod
    def diagonal(cls, ring: RingSpec, values: Sequence[int], rows: int | None = None, cols: int | None = None) -> "Matrix":
        n = len(values)
        rows = n if rows is None else rows
        cols = n if cols is None else cols
        data = [[0] * cols for _ in range(rows)]
        for i, x in enumerate(values):
            data[i][i] = x
        return cls.from_rows(ring, data, cols)

    @classmethod
    def scalar(cls, ring: RingSpec, n: int, x: int) -> "Matrix":
        return cls.diagonal(ring, [x] * n)

    # access

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i * self.cols + j]

    def to_rows(self) -> list[list[int]]:
        c = self.cols
        return [list(self.entries[i * c:(i + 1) * c]) for i in range(self.rows)]

    def row(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def column(self, j: int) -> tuple:
        return self.entries[j::self.cols] if self.cols else ()

    def columns(self) -> list[tuple]:
        return [self.column(j) for j in range(self.cols)]

    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def is_zero(self) -> bool:
        return not any(self.entries)

    # algebra

    def _check_ring(self, other: "Matrix"):
        if self.ring != other.ring:
            raise ValueError(f"ring mismatch: {self.ring} vs {other.ring}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_ring(other)
        if self.shape != other.shape:
            raise DimensionError(f"cannot add {self.shape} and {other.shape}")
        return Matrix(self.ring, self.rows, self.cols,
                      tuple(x + y for x, y in zip(self.entries, other.entries)))

    def __neg__(self) -> "Matrix":
        return Matrix(self.ring, self.rows, self.cols, tuple(-x for x in self.entries))

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check_ring(other)
        if self.cols != other.rows:
            raise DimensionError(f"cannot multiply {self.shape} by {other.shape}")
        cols = other.columns()
        out = []
        for i in range(self.rows):
            r = self.row(i)
            for c in cols:
                out.append(sum(x * y for x, y in zip(r, c) if x and y))
        return Matrix(self.ring, self.rows, other.cols, tuple(out))

    def scale(self, k: int) -> "Matrix":
        return Matrix(self.ring, self.rows, self.cols, tuple(k * x for x in self.entries))

    @property
    def T(self) -> "Matrix":
        return Matrix.from_rows(self.ring, self.columns(), self.rows)

    def lift(self) -> "Matrix":
        """The same entries viewed over Z."""
        return Matrix(ZZ, self.rows, self.cols, self.entries)

    def over(self, ring: RingSpec) -> "Matrix":
        return Matrix(ring, self.rows, self.cols, self.entries)

    def hstack(self, *others: "Matrix") -> "Matrix":
        mats = (self,) + others
        for m in others:
            self._check_ring(m)
            if m.rows != self.rows:
                raise DimensionError("hstack needs equal row counts")
        data = [[x for m in mats for x in m.row(i)] for i in range(self.rows)]
        return Matrix.from_rows(self.ring, data, sum(m.cols for m in mats))

    def vstack(self, *others: "Matrix") -> "Matrix":
        mats = (self,) + others
        for m in others:
            self._check_ring(m)
            if m.cols != self.cols:
                raise DimensionError("vstack needs equal column counts")
        return Matrix(self.ring, sum(m.rows for m in mats), self.cols,
                      tuple(x for m in mats for x in m.entries))

    def block_diag(self, *others: "Matrix") -> "Matrix":
        mats = (self,) + others
        rows = sum(m.rows for m in mats)
        cols = sum(m.cols for m in mats)
        data = [[0] * cols for _ in range(rows)]
        r0 = c0 = 0
        for m in mats:
            self._check_ring(m)
            for i in range(m.rows):
                data[r0 + i][c0:c0 + m.cols] = m.row(i)
            r0 += m.rows
            c0 += m.cols
        return Matrix.from_rows(self.ring, data, cols)

    def kron(self, other: "Matrix") -> "Matrix":
        self._check_ring(other)
        rows = self.rows * other.rows
        cols = self.cols * other.cols
        data = [[0] * cols for _ in range(rows)]
        for i in range(self.rows):
            for j in range(self.cols):
                a = self[i, j]
                if not a:
                    continue
                for k in range(other.rows):
                    rk = data[i * other.rows + k]
                    for l in range(other.cols):
                        rk[j * other.cols + l] = a * other[k, l]
        return Matrix.from_rows(self.ring, data, cols)

    def select(self, rows: Sequence[int] | None = None, cols: Sequence[int] | None = None) -> "Matrix":
        rows = range(self.rows) if rows is None else rows
        cols = range(self.cols) if cols is None else cols
        return Matrix.from_rows(self.ring, [[self[i, j] for j in cols] for i in rows], len(cols))

    def __str__(self):
        if not self.rows or not self.cols:
            return f"<{self.rows}x{self.cols} over {self.ring}>"
        rows = self.to_rows()
        w = max(len(str(x)) for r in rows for x in r)
        return "\n".join("[" + " ".join(str(x).rjust(w) for x in r) + "]" for r in rows)


@dataclass(frozen=True)
class SmithForm:
    """``u @ a @ v == d`` with ``d`` diagonal and ``u``, ``v`` invertible."""

    d: Matrix
    u: Matrix
    v: Matrix
    rank: int

    @property
    def diagonal(self) -> list[int]:
        return [self.d[i, i] for i in range(min(self.d.rows, self.d.cols))]

    @property
    def invariant_factors(self) -> list[int]:
        return self.diagonal[:self.rank]


def _identity_rows(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


class _Smith:
    """In-place Smith reduction of an integer matrix given as a list of rows.

    Tracks ``u`` (row operations), ``uinv`` and ``v`` (column operations).
    Pivot is always the nonzero entry of least absolute value, ties broken by
    row then column.
    """

    def __init__(self, rows: list[list[int]], nrows: int, ncols: int, track_uinv: bool = False):
        self.d = [list(r) for r in rows]
        self.m, self.n = nrows, ncols
        self.u = _identity_rows(nrows)
        self.uinv = _identity_rows(nrows) if track_uinv else None
        self.v = _identity_rows(ncols)
        self.rank = 0
        self._run()

    # elementary operations, mirrored on the transforms

    def _row_add(self, i, j, q):
        # row_i += q * row_j
        d, u = self.d, self.u
        di, dj = d[i], d[j]
        for k in range(self.n):
            if dj[k]:
                di[k] += q * dj[k]
        ui, uj = u[i], u[j]
        for k in range(self.m):
            if uj[k]:
                ui[k] += q * uj[k]
        if self.uinv is not None:
            for r in self.uinv:
                if r[i]:
                    r[j] -= q * r[i]

    def _row_swap(self, i, j):
        if i == j:
            return
        self.d[i], self.d[j] = self.d[j], self.d[i]
        self.u[i], self.u[j] = self.u[j], self.u[i]
        if self.uinv is not None:
            for r in self.uinv:
                r[i], r[j] = r[j], r[i]

    def _row_negate(self, i):
        self.d[i] = [-x for x in self.d[i]]
        self.u[i] = [-x for x in self.u[i]]
        if self.uinv is not None:
            for r in self.uinv:
                r[i] = -r[i]

    def _col_add(self, i, j, q):
        # col_i += q * col_j
        for r in self.d:
            if r[j]:
                r[i] += q * r[j]
        for r in self.v:
            if r[j]:
                r[i] += q * r[j]

    def _col_swap(self, i, j):
        if i == j:
            return
        for r in self.d:
            r[i], r[j] = r[j], r[i]
        for r in self.v:
            r[i], r[j] = r[j], r[i]

    def _min_pivot(self, t):
        best = None
        d = self.d
        for i in range(t, self.m):
            row = d[i]
            for j in range(t, self.n):
                x = row[j]
                if x and (best is None or abs(x) < best[0]):
                    best = (abs(x), i, j)
                    if best[0] == 1:
                        return best
        return best

    def _run(self):
        d = self.d
        t = 0
        while t < min(self.m, self.n):
            piv = self._min_pivot(t)
            if piv is None:
                break
            self._row_swap(t, piv[1])
            self._col_swap(t, piv[2])
            while True:
                p = d[t][t]
                clean = True
                for i in range(t + 1, self.m):
                    if d[i][t]:
                        self._row_add(i, t, -(d[i][t] // p))
                        if d[i][t]:
                            clean = False
                for j in range(t + 1, self.n):
                    if d[t][j]:
                        self._col_add(j, t, -(d[t][j] // p))
                        if d[t][j]:
                            clean = False
                if not clean:
                    best = (abs(p), t, t)
                    for i in range(t + 1, self.m):
                        x = d[i][t]
                        if x and abs(x) < best[0]:
                            best = (abs(x), i, t)
                    for j in range(t + 1, self.n):
                        x = d[t][j]
                        if x and abs(x) < best[0]:
                            best = (abs(x), t, j)
                    self._row_swap(t, best[1])
                    self._col_swap(t, best[2])
                    continue
                bad = None
                for i in range(t + 1, self.m):
                    row = d[i]
                    for j in range(t + 1, self.n):
                        if row[j] % p:
                            bad = i
                            break
                    if bad is not None:
                        break
                if bad is None:
                    break
                self._row_add(t, bad, 1)
            if d[t][t] < 0:
                self._row_negate(t)
            t += 1
        self.rank = t


def _smith_rows(rows, nrows, ncols, track_uinv=False) -> _Smith:
    return _Smith(rows, nrows, ncols, track_uinv)


def _unit_normalizer(x: int, m: int) -> int:
    """A unit ``w`` of Z/m with ``x * w = gcd(x, m)`` modulo ``m``."""
    g = gcd(x, m)
    mp = m // g
    if mp == 1:
        return 1
    w = pow((x // g) % mp, -1, mp)
    while gcd(w, m) != 1:
        w += mp
    return w


def snf(a: Matrix) -> SmithForm:
    """Smith normal form with transforms.

    Over Z/m the integer form of the lift is reduced mod m and each diagonal
    entry is rescaled by a unit to ``gcd(d_i, m)``, which keeps the
    divisibility chain.
    """
    s = _smith_rows(a.lift().to_rows(), a.rows, a.cols)
    ring = a.ring
    if ring.is_integers:
        return SmithForm(
            Matrix.from_rows(ring, s.d, a.cols),
            Matrix.from_rows(ring, s.u, a.rows),
            Matrix.from_rows(ring, s.v, a.cols),
            s.rank,
        )
    m = ring.modulus
    u = [list(r) for r in s.u]
    d = [list(r) for r in s.d]
    rank = 0
    for i in range(s.rank):
        x = d[i][i] % m
        if x == 0:
            d[i][i] = 0
            continue
        w = _unit_normalizer(x, m)
        u[i] = [w * y for y in u[i]]
        d[i][i] = (x * w) % m
        rank += 1
    return SmithForm(
        Matrix.from_rows(ring, d, a.cols),
        Matrix.from_rows(ring, u, a.rows),
        Matrix.from_rows(ring, s.v, a.cols),
        rank,
    )


def _augmented(a: Matrix) -> Matrix:
    """Integer lift of ``[a | m*I]`` for a matrix over Z/m."""
    m = a.ring.modulus
    return a.lift().hstack(Matrix.scalar(ZZ, a.rows, m))


def _integer_kernel_columns(a: Matrix) -> list[list[int]]:
    if a.rows == 0:
        return [[int(i == j) for i in range(a.cols)] for j in range(a.cols)]
    s = _smith_rows(a.to_rows(), a.rows, a.cols)
    return [[s.v[i][j] for i in range(a.cols)] for j in range(s.rank, a.cols)]


def kernel_basis(a: Matrix) -> Matrix:
    """Columns generating ``{x : a x = 0}``.

    Over Z the columns are a lattice basis.  Over Z/m they only generate.
    """
    if a.ring.is_integers:
        cols = _integer_kernel_columns(a)
        return Matrix.from_columns(ZZ, cols, a.cols)
    m = a.ring.modulus
    seen = set()
    cols = []
    for c in _integer_kernel_columns(_augmented(a)):
        x = tuple(v % m for v in c[:a.cols])
        if any(x) and x not in seen:
            seen.add(x)
            cols.append(x)
    return Matrix.from_columns(a.ring, cols, a.cols)


def _solve_integer(a: Matrix, b: Sequence[int]) -> list[int] | None:
    if a.rows == 0:
        return [0] * a.cols
    s = _smith_rows(a.to_rows(), a.rows, a.cols)
    c = [sum(x * y for x, y in zip(row, b)) for row in s.u]
    y = [0] * a.cols
    for i in range(s.rank):
        q, r = divmod(c[i], s.d[i][i])
        if r:
            return None
        y[i] = q
    if any(c[s.rank:]):
        return None
    return [sum(x * yy for x, yy in zip(row, y) if yy) for row in s.v]


def solve(a: Matrix, b) -> Matrix | None:
    """Some ``x`` with ``a x = b``, or ``None`` when there is no solution.

    ``b`` is a column matrix or a sequence of ring elements.  The general
    solution is ``x + span(kernel_basis(a))``.
    """
    if isinstance(b, Matrix):
        if b.cols != 1:
            raise DimensionError(f"right-hand side must be a column, got {b.shape}")
        b = b.entries
    b = list(b)
    if len(b) != a.rows:
        raise DimensionError(f"right-hand side has length {len(b)}, matrix has {a.rows} rows")
    if a.ring.is_integers:
        x = _solve_integer(a, b)
    else:
        x = _solve_integer(_augmented(a), b)
        if x is not None:
            x = x[:a.cols]
    if x is None:
        return None
    return Matrix.column_vector(a.ring, x)


class LinearSystem:
    """Collects matrix equations ``sum_k P_k X_k Q_k = B`` in unknown
    matrices ``X_k`` and solves them jointly.

    Congruences modulo a relation matrix ``R`` are written by adding a term
    ``R W`` with a fresh unknown ``W``.
    """

    def __init__(self, ring: RingSpec):
        self.ring = ring
        self._shapes: list[tuple[int, int]] = []
        self._offsets: list[int] = []
        self._nvars = 0
        self._blocks: list[tuple[list[tuple[int, Matrix]], Matrix]] = []

    def unknown(self, rows: int, cols: int) -> int:
        self._shapes.append((rows, cols))
        self._offsets.append(self._nvars)
        self._nvars += rows * cols
        return len(self._shapes) - 1

    def equation(self, terms, rhs: Matrix):
        """``terms`` is a list of ``(P, X, Q)``; ``P`` or ``Q`` may be None for identity."""
        rows = []
        for p, x, q in terms:
            xr, xc = self._shapes[x]
            p = Matrix.identity(self.ring, xr) if p is None else p
            q = Matrix.identity(self.ring, xc) if q is None else q
            if (p.rows, q.cols) != rhs.shape or p.cols != xr or q.rows != xc:
                raise DimensionError(
                    f"term {p.shape} X{self._shapes[x]} {q.shape} does not fit {rhs.shape}")
            rows.append((x, q.T.kron(p)))
        self._blocks.append((rows, rhs))

    def solve(self) -> list[Matrix] | None:
        nrows = sum(rhs.rows * rhs.cols for _, rhs in self._blocks)
        data = [[0] * self._nvars for _ in range(nrows)]
        b = []
        r0 = 0
        for terms, rhs in self._blocks:
            for x, k in terms:
                off = self._offsets[x]
                for i in range(k.rows):
                    row = data[r0 + i]
                    for j, v in enumerate(k.row(i)):
                        if v:
                            row[off + j] += v
            # column-major vec of rhs
            b.extend(rhs[i, j] for j in range(rhs.cols) for i in range(rhs.rows))
            r0 += rhs.rows * rhs.cols
        if self._nvars == 0:
            if any(self.ring.reduce(x) for x in b):
                return None
            return [Matrix.zeros(self.ring, r, c) for r, c in self._shapes]
        a = Matrix.from_rows(self.ring, data, self._nvars)
        x = solve(a, b)
        if x is None:
            return None
        out = []
        for (r, c), off in zip(self._shapes, self._offsets):
            vals = x.entries[off:off + r * c]
            out.append(Matrix.from_rows(self.ring, [[vals[i + j * r] for j in range(c)] for i in range(r)], c))
        return out
