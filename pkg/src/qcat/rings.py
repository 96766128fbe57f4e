"""Exact dense matrices over the integers and prime fields.

Everything follows the row convention: an ``a x b`` matrix is a morphism
from the free row module of rank ``a`` to the one of rank ``b``, acting by
right multiplication on row vectors.  Matrices with 0 rows or 0 columns are
legal and stand for maps to or from the zero module.

Scalars are plain Python ints; the ring object attached to a matrix
interprets them (arbitrary precision over ``ZZ``, reduced into ``[0, p)``
over ``GF(p)``).  All values are immutable and every routine is
deterministic: the normal forms below fix their pivot choices, so equal
inputs produce identical outputs.
"""

from __future__ import annotations

from typing import Optional


class IntegerRing:
    """The ring of integers, with lifts and syzygies via Hermite normal form."""

    name = "Z"
    finite_syzygies = True
    zero = 0
    one = 1

    def coerce(self, v):
        if not isinstance(v, int):
            raise TypeError(f"integer entry expected, got {v!r}")
        return v

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def neg(self, a):
        return -a

    def mul(self, a, b):
        return a * b

    def is_zero(self, a):
        return a == 0

    def format_element(self, a):
        return str(a)

    def __eq__(self, other):
        return isinstance(other, IntegerRing)

    def __hash__(self):
        return hash("Z")

    def __repr__(self):
        return "ZZ"

    def decide_lift(self, A: "Matrix", B: "Matrix") -> Optional["Matrix"]:
        _check_lift_dims(A, B)
        H, U = hermite_normal_form(A)
        return _solve_echelon(H, U, B, pivot_divide=_int_pivot_divide)

    def row_syzygies(self, A: "Matrix") -> "Matrix":
        H, U = hermite_normal_form(A)
        return _kernel_rows(H, U)


class PrimeField:
    """GF(p) for a prime p < 2**31; elements are ints reduced into [0, p)."""

    finite_syzygies = True
    zero = 0
    one = 1

    def __init__(self, p: int = 101):
        if not isinstance(p, int) or p < 2 or p >= 2**31:
            raise ValueError(f"prime expected in [2, 2^31), got {p!r}")
        d = 2
        while d * d <= p:
            if p % d == 0:
                raise ValueError(f"{p} is not prime")
            d += 1
        self.p = p
        self.name = f"GF({p})"

    def coerce(self, v):
        if not isinstance(v, int):
            raise TypeError(f"integer entry expected, got {v!r}")
        return v % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise ZeroDivisionError("inverse of 0 in GF(p)")
        return pow(a, self.p - 2, self.p)

    def is_zero(self, a):
        return a % self.p == 0

    def format_element(self, a):
        return str(a % self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"

    def decide_lift(self, A: "Matrix", B: "Matrix") -> Optional["Matrix"]:
        _check_lift_dims(A, B)
        E, U = _row_reduce(A)
        return _solve_echelon(E, U, B, pivot_divide=self._field_pivot_divide)

    def row_syzygies(self, A: "Matrix") -> "Matrix":
        E, U = _row_reduce(A)
        return _kernel_rows(E, U)

    def _field_pivot_divide(self, value, pivot):
        # pivots of the reduced echelon form are 1
        return value


ZZ = IntegerRing()


def GF(p: int = 101) -> PrimeField:
    return PrimeField(p)


class Matrix:
    """Immutable dense matrix over a ring backend, stored row-major."""

    __slots__ = ("ring", "rows", "cols", "entries")

    def __init__(self, ring, rows: int, cols: int, entries):
        if rows < 0 or cols < 0:
            raise ValueError("negative dimension")
        ent = tuple(ring.coerce(v) for v in entries)
        if len(ent) != rows * cols:
            raise ValueError(
                f"expected {rows * cols} entries for a {rows}x{cols} matrix, got {len(ent)}"
            )
        object.__setattr__(self, "ring", ring)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "entries", ent)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @classmethod
    def from_rows(cls, ring, rows) -> "Matrix":
        rows = [list(r) for r in rows]
        n = len(rows[0]) if rows else 0
        if any(len(r) != n for r in rows):
            raise ValueError("ragged rows")
        return cls(ring, len(rows), n, [v for r in rows for v in r])

    @classmethod
    def identity(cls, ring, n: int) -> "Matrix":
        return cls(ring, n, n, [ring.one if i == j else ring.zero for i in range(n) for j in range(n)])

    @classmethod
    def zero(cls, ring, rows: int, cols: int) -> "Matrix":
        return cls(ring, rows, cols, [ring.zero] * (rows * cols))

    def __getitem__(self, ij):
        i, j = ij
        if not (0 <= i < self.rows and 0 <= j < self.cols):
            raise IndexError(ij)
        return self.entries[i * self.cols + j]

    def row(self, i: int) -> "Matrix":
        return Matrix(self.ring, 1, self.cols, self.entries[i * self.cols:(i + 1) * self.cols])

    def row_tuple(self, i: int) -> tuple:
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def to_lists(self):
        return [list(self.row_tuple(i)) for i in range(self.rows)]

    def block(self, r0: int, r1: int, c0: int, c1: int) -> "Matrix":
        """Submatrix of rows [r0, r1) and columns [c0, c1)."""
        if not (0 <= r0 <= r1 <= self.rows and 0 <= c0 <= c1 <= self.cols):
            raise IndexError((r0, r1, c0, c1))
        ent = []
        for i in range(r0, r1):
            ent.extend(self.entries[i * self.cols + c0:i * self.cols + c1])
        return Matrix(self.ring, r1 - r0, c1 - c0, ent)

    def is_zero(self) -> bool:
        ring = self.ring
        return all(ring.is_zero(v) for v in self.entries)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        return matmul(self, other)

    def __add__(self, other: "Matrix") -> "Matrix":
        _check_same_shape(self, other)
        r = self.ring
        return Matrix(r, self.rows, self.cols,
                      [r.add(a, b) for a, b in zip(self.entries, other.entries)])

    def __sub__(self, other: "Matrix") -> "Matrix":
        _check_same_shape(self, other)
        r = self.ring
        return Matrix(r, self.rows, self.cols,
                      [r.sub(a, b) for a, b in zip(self.entries, other.entries)])

    def __neg__(self) -> "Matrix":
        r = self.ring
        return Matrix(r, self.rows, self.cols, [r.neg(a) for a in self.entries])

    def scale(self, c) -> "Matrix":
        r = self.ring
        c = r.coerce(c)
        return Matrix(r, self.rows, self.cols, [r.mul(c, a) for a in self.entries])

    def __eq__(self, other) -> bool:
        return (isinstance(other, Matrix) and self.ring == other.ring
                and self.rows == other.rows and self.cols == other.cols
                and self.entries == other.entries)

    def __repr__(self):
        body = "; ".join(
            ", ".join(self.ring.format_element(v) for v in self.row_tuple(i))
            for i in range(self.rows)
        )
        return f"Matrix({self.ring.name} {self.rows}x{self.cols}: [{body}])"


def matmul(A: Matrix, B: Matrix) -> Matrix:
    """Exact product of an m x n and an n x q matrix over the same backend."""
    if A.ring != B.ring:
        raise ValueError(f"backend mismatch: {A.ring.name} vs {B.ring.name}")
    if A.cols != B.rows:
        raise ValueError(f"dimension mismatch: {A.rows}x{A.cols} @ {B.rows}x{B.cols}")
    ring = A.ring
    m, n, q = A.rows, A.cols, B.cols
    ent = []
    for i in range(m):
        arow = A.row_tuple(i)
        for j in range(q):
            acc = ring.zero
            for k in range(n):
                acc = ring.add(acc, ring.mul(arow[k], B.entries[k * q + j]))
            ent.append(acc)
    return Matrix(ring, m, q, ent)


def vstack(*mats: Matrix) -> Matrix:
    if not mats:
        raise ValueError("vstack of nothing")
    ring, cols = mats[0].ring, mats[0].cols
    for m in mats[1:]:
        if m.ring != ring or m.cols != cols:
            raise ValueError("vstack: incompatible blocks")
    ent = []
    for m in mats:
        ent.extend(m.entries)
    return Matrix(ring, sum(m.rows for m in mats), cols, ent)


def hstack(*mats: Matrix) -> Matrix:
    if not mats:
        raise ValueError("hstack of nothing")
    ring, rows = mats[0].ring, mats[0].rows
    for m in mats[1:]:
        if m.ring != ring or m.rows != rows:
            raise ValueError("hstack: incompatible blocks")
    ent = []
    for i in range(rows):
        for m in mats:
            ent.extend(m.row_tuple(i))
    return Matrix(ring, rows, sum(m.cols for m in mats), ent)


def block_diag(mats) -> Matrix:
    mats = list(mats)
    if not mats:
        raise ValueError("block_diag of nothing")
    ring = mats[0].ring
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = [[ring.zero] * cols for _ in range(rows)]
    r0 = c0 = 0
    for m in mats:
        for i in range(m.rows):
            out[r0 + i][c0:c0 + m.cols] = list(m.row_tuple(i))
        r0 += m.rows
        c0 += m.cols
    return Matrix.from_rows(ring, out) if rows else Matrix(ring, 0, cols, [])


def decide_lift(A: Matrix, B: Matrix) -> Optional[Matrix]:
    """Solve X @ A == B exactly, or return None when no solution exists."""
    return A.ring.decide_lift(A, B)


def row_syzygies(A: Matrix) -> Matrix:
    """A matrix L with L @ A == 0 through which every other syzygy factors."""
    return A.ring.row_syzygies(A)


def _check_lift_dims(A: Matrix, B: Matrix):
    if A.ring != B.ring:
        raise ValueError(f"backend mismatch: {A.ring.name} vs {B.ring.name}")
    if A.cols != B.cols:
        raise ValueError(f"dimension mismatch: lift of {B.rows}x{B.cols} through {A.rows}x{A.cols}")


def _check_same_shape(A: Matrix, B: Matrix):
    if A.ring != B.ring or A.rows != B.rows or A.cols != B.cols:
        raise ValueError("shape or backend mismatch")


# ---------------------------------------------------------------------------
# Integer normal forms
# ---------------------------------------------------------------------------

def hermite_normal_form(A: Matrix):
    """Row-style Hermite normal form (H, U) with U @ A == H.

    U is unimodular.  Pivots are positive, entries above each pivot are
    reduced into [0, pivot), and pivot columns increase strictly from top to
    bottom; zero rows sit at the bottom.
    """
    if not isinstance(A.ring, IntegerRing):
        raise ValueError(f"hermite_normal_form needs the Z backend, got {A.ring.name}")
    m, n = A.rows, A.cols
    H = A.to_lists()
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    r = 0
    for j in range(n):
        if r == m:
            break
        while True:
            nz = [i for i in range(r, m) if H[i][j] != 0]
            if not nz:
                break
            i0 = min(nz, key=lambda i: (abs(H[i][j]), i))
            if i0 != r:
                H[r], H[i0] = H[i0], H[r]
                U[r], U[i0] = U[i0], U[r]
            clean = True
            for i in range(r + 1, m):
                if H[i][j]:
                    q = H[i][j] // H[r][j]
                    _row_axpy(H[i], H[r], -q)
                    _row_axpy(U[i], U[r], -q)
                    if H[i][j]:
                        clean = False
            if clean:
                break
        if r < m and H[r][j] != 0:
            if H[r][j] < 0:
                H[r] = [-v for v in H[r]]
                U[r] = [-v for v in U[r]]
            p = H[r][j]
            for i in range(r):
                q = H[i][j] // p
                if q:
                    _row_axpy(H[i], H[r], -q)
                    _row_axpy(U[i], U[r], -q)
            r += 1
    Hm = Matrix(ZZ, m, n, [v for row in H for v in row])
    Um = Matrix(ZZ, m, m, [v for row in U for v in row])
    return Hm, Um


def smith_normal_form(A: Matrix):
    """Smith normal form (D, U, V) with U @ A @ V == D.

    D is diagonal with nonnegative entries and d_i | d_{i+1}; U and V are
    unimodular.
    """
    if not isinstance(A.ring, IntegerRing):
        raise ValueError(f"smith_normal_form needs the Z backend, got {A.ring.name}")
    m, n = A.rows, A.cols
    D = A.to_lists()
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    V = [[1 if i == j else 0 for j in range(n)] for i in range(n)]
    t = 0
    while t < min(m, n):
        cand = [(i, j) for i in range(t, m) for j in range(t, n) if D[i][j] != 0]
        if not cand:
            break
        while True:
            i0, j0 = min(cand, key=lambda ij: (abs(D[ij[0]][ij[1]]), ij))
            if i0 != t:
                D[t], D[i0] = D[i0], D[t]
                U[t], U[i0] = U[i0], U[t]
            if j0 != t:
                for row in D:
                    row[t], row[j0] = row[j0], row[t]
                for row in V:
                    row[t], row[j0] = row[j0], row[t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // D[t][t]
                    _row_axpy(D[i], D[t], -q)
                    _row_axpy(U[i], U[t], -q)
                    if D[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // D[t][t]
                    _col_axpy(D, j, t, -q)
                    _col_axpy(V, j, t, -q)
                    if D[t][j]:
                        clean = False
            if not clean:
                cand = [(i, j) for i in range(t, m) for j in range(t, n) if D[i][j] != 0]
                continue
            d = D[t][t]
            viol = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n)
                         if D[i][j] % d != 0), None)
            if viol is None:
                break
            # pull the offending row up so the next gcd round shrinks the pivot
            _row_axpy(D[t], D[viol[0]], 1)
            _row_axpy(U[t], U[viol[0]], 1)
            cand = [(i, j) for i in range(t, m) for j in range(t, n) if D[i][j] != 0]
        if D[t][t] < 0:
            D[t] = [-v for v in D[t]]
            U[t] = [-v for v in U[t]]
        t += 1
    Dm = Matrix(ZZ, m, n, [v for row in D for v in row])
    Um = Matrix(ZZ, m, m, [v for row in U for v in row])
    Vm = Matrix(ZZ, n, n, [v for row in V for v in row])
    return Dm, Um, Vm


def determinant(A: Matrix) -> int:
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    if not isinstance(A.ring, IntegerRing):
        raise ValueError("determinant needs the Z backend")
    if A.rows != A.cols:
        raise ValueError("determinant of a non-square matrix")
    n = A.rows
    if n == 0:
        return 1
    M = A.to_lists()
    sign = 1
    prev = 1
    for k in range(n - 1):
        if M[k][k] == 0:
            piv = next((i for i in range(k + 1, n) if M[i][k] != 0), None)
            if piv is None:
                return 0
            M[k], M[piv] = M[piv], M[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                M[i][j] = (M[i][j] * M[k][k] - M[i][k] * M[k][j]) // prev
            M[i][k] = 0
        prev = M[k][k]
    return sign * M[n - 1][n - 1]


def _row_axpy(target, source, c):
    for k in range(len(target)):
        target[k] += c * source[k]


def _col_axpy(rows, j, jsrc, c):
    for row in rows:
        row[j] += c * row[jsrc]


def _int_pivot_divide(value, pivot):
    if value % pivot != 0:
        return None
    return value // pivot


def _row_reduce(A: Matrix):
    """Reduced row echelon form (E, U) over GF(p) with U @ A == E."""
    p = A.ring.p
    m, n = A.rows, A.cols
    E = A.to_lists()
    U = [[1 if i == j else 0 for j in range(m)] for i in range(m)]
    r = 0
    for j in range(n):
        if r == m:
            break
        piv = next((i for i in range(r, m) if E[i][j] % p != 0), None)
        if piv is None:
            continue
        if piv != r:
            E[r], E[piv] = E[piv], E[r]
            U[r], U[piv] = U[piv], U[r]
        inv = pow(E[r][j], p - 2, p)
        E[r] = [(v * inv) % p for v in E[r]]
        U[r] = [(v * inv) % p for v in U[r]]
        for i in range(m):
            if i != r and E[i][j]:
                c = E[i][j]
                E[i] = [(a - c * b) % p for a, b in zip(E[i], E[r])]
                U[i] = [(a - c * b) % p for a, b in zip(U[i], U[r])]
        r += 1
    ring = A.ring
    Em = Matrix(ring, m, n, [v for row in E for v in row])
    Um = Matrix(ring, m, m, [v for row in U for v in row])
    return Em, Um


def _pivots(E: Matrix):
    """(row, col) pivot positions of a row echelon matrix, top to bottom."""
    out = []
    for i in range(E.rows):
        row = E.row_tuple(i)
        j = next((k for k, v in enumerate(row) if not E.ring.is_zero(v)), None)
        if j is not None:
            out.append((i, j))
    return out


def _solve_echelon(E: Matrix, U: Matrix, B: Matrix, pivot_divide) -> Optional[Matrix]:
    """Given U @ A == E in echelon form, solve X @ A == B row by row."""
    ring = E.ring
    pivots = _pivots(E)
    m = E.rows
    xrows = []
    for bi in range(B.rows):
        res = list(B.row_tuple(bi))
        y = [ring.zero] * m
        for (r, j) in pivots:
            v = res[j]
            if ring.is_zero(v):
                continue
            t = pivot_divide(v, E[r, j])
            if t is None:
                return None
            y[r] = t
            erow = E.row_tuple(r)
            for k in range(len(res)):
                res[k] = ring.sub(res[k], ring.mul(t, erow[k]))
        if any(not ring.is_zero(v) for v in res):
            return None
        # x = y @ U
        xrow = [ring.zero] * m
        for r in range(m):
            if ring.is_zero(y[r]):
                continue
            urow = U.row_tuple(r)
            for k in range(m):
                xrow[k] = ring.add(xrow[k], ring.mul(y[r], urow[k]))
        xrows.append(xrow)
    out = [v for row in xrows for v in row]
    return Matrix(ring, B.rows, m, out)


def _kernel_rows(E: Matrix, U: Matrix) -> Matrix:
    """Rows of U over the zero rows of E: a basis of the left kernel."""
    ring = E.ring
    rows = []
    for i in range(E.rows):
        if all(ring.is_zero(v) for v in E.row_tuple(i)):
            rows.append(U.row_tuple(i))
    ent = [v for row in rows for v in row]
    return Matrix(ring, len(rows), E.rows, ent)
