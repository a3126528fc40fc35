"""Dense exact rational matrices and the small linear-algebra kernels we need.

Operator matrices follow the column-action convention: column n holds the
expansion coefficients of (operator applied to basis vector n) over the
standard basis, so composition reads left to right as matrix product.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd

Q = Fraction


class RationalMatrix:
    """Immutable dense matrix over Fraction."""

    __slots__ = ("rows", "cols", "_e")

    def __init__(self, entries):
        rows = tuple(tuple(Q(x) for x in row) for row in entries)
        if not rows or not rows[0]:
            raise ValueError("matrix must have at least one row and column")
        width = len(rows[0])
        if any(len(r) != width for r in rows):
            raise ValueError("ragged rows")
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", width)
        object.__setattr__(self, "_e", rows)

    # -- constructors ------------------------------------------------------

    @classmethod
    def zeros(cls, rows: int, cols: int | None = None):
        cols = rows if cols is None else cols
        return cls([[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, n: int):
        return cls([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def diagonal(cls, values):
        values = list(values)
        n = len(values)
        return cls([[values[i] if i == j else 0 for j in range(n)] for i in range(n)])

    @classmethod
    def from_columns(cls, columns):
        columns = [list(c) for c in columns]
        return cls([[columns[j][i] for j in range(len(columns))] for i in range(len(columns[0]))])

    # -- access ------------------------------------------------------------

    def __getitem__(self, ij):
        i, j = ij
        return self._e[i][j]

    def row(self, i):
        return self._e[i]

    def column(self, j):
        return tuple(self._e[i][j] for i in range(self.rows))

    @property
    def shape(self):
        return (self.rows, self.cols)

    def to_strings(self):
        """Row-major entries as canonical 'p/q' strings."""
        return [[str(x) for x in row] for row in self._e]

    # -- structure tests ----------------------------------------------------

    def is_zero(self) -> bool:
        return all(x == 0 for row in self._e for x in row)

    def first_nonzero(self):
        """(i, j, value) of the first nonzero entry in row-major order, or None."""
        for i, row in enumerate(self._e):
            for j, x in enumerate(row):
                if x != 0:
                    return (i, j, x)
        return None

    def is_diagonal(self) -> bool:
        return all(x == 0 for i, row in enumerate(self._e) for j, x in enumerate(row) if i != j)

    def is_tridiagonal(self) -> bool:
        return all(
            x == 0 for i, row in enumerate(self._e) for j, x in enumerate(row) if abs(i - j) > 1
        )

    def is_lower_bidiagonal(self) -> bool:
        """Nonzero entries confined to the diagonal and the first subdiagonal."""
        return all(
            x == 0 for i, row in enumerate(self._e) for j, x in enumerate(row) if i - j not in (0, 1)
        )

    def is_upper_bidiagonal(self) -> bool:
        return all(
            x == 0 for i, row in enumerate(self._e) for j, x in enumerate(row) if j - i not in (0, 1)
        )

    # -- arithmetic ----------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, RationalMatrix)
            and self.shape == other.shape
            and self._e == other._e
        )

    def __hash__(self):
        return hash(self._e)

    def __neg__(self):
        return RationalMatrix([[-x for x in row] for row in self._e])

    def __add__(self, other):
        self._check_shape(other)
        return RationalMatrix(
            [[a + b for a, b in zip(ra, rb)] for ra, rb in zip(self._e, other._e)]
        )

    def __sub__(self, other):
        self._check_shape(other)
        return RationalMatrix(
            [[a - b for a, b in zip(ra, rb)] for ra, rb in zip(self._e, other._e)]
        )

    def _check_shape(self, other):
        if self.shape != other.shape:
            raise ValueError(f"shape mismatch {self.shape} vs {other.shape}")

    def __mul__(self, other):
        if isinstance(other, RationalMatrix):
            if self.cols != other.rows:
                raise ValueError(f"cannot multiply {self.shape} by {other.shape}")
            out = [[Q(0)] * other.cols for _ in range(self.rows)]
            for i in range(self.rows):
                row = self._e[i]
                acc = out[i]
                for k in range(self.cols):
                    x = row[k]
                    if x == 0:
                        continue
                    brow = other._e[k]
                    for j in range(other.cols):
                        if brow[j] != 0:
                            acc[j] += x * brow[j]
            return RationalMatrix(out)
        return RationalMatrix([[x * other for x in row] for row in self._e])

    def __rmul__(self, scalar):
        return RationalMatrix([[scalar * x for x in row] for row in self._e])

    def transpose(self):
        return RationalMatrix(
            [[self._e[i][j] for i in range(self.rows)] for j in range(self.cols)]
        )

    def apply(self, vector):
        """Matrix-vector product, vector given as a sequence."""
        vector = list(vector)
        if len(vector) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(
            sum((row[k] * vector[k] for k in range(self.cols)), Q(0)) for row in self._e
        )

    def __repr__(self):
        body = "; ".join(" ".join(str(x) for x in row) for row in self._e)
        return f"RationalMatrix([{body}])"


def commutator(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    return a * b - b * a


def anticommutator(a: RationalMatrix, b: RationalMatrix) -> RationalMatrix:
    return a * b + b * a


def dot(u, v) -> Fraction:
    """Plain bilinear pairing sum_i u_i v_i (no conjugation)."""
    u, v = list(u), list(v)
    if len(u) != len(v):
        raise ValueError("length mismatch")
    return sum((a * b for a, b in zip(u, v)), Q(0))


# -- elimination kernels -----------------------------------------------------


def _integer_rows(m: RationalMatrix):
    """Scale each row by the lcm of its denominators; kernel is unchanged."""
    out = []
    for row in m._e:
        scale = 1
        for x in row:
            scale = scale * x.denominator // gcd(scale, x.denominator)
        out.append([int(x * scale) for x in row])
    return out


def nullspace(m: RationalMatrix):
    """Basis of the right kernel, via fraction-free (Bareiss) elimination.

    Rows are first scaled to integers, then reduced with the two-step
    division-free pivoting rule; back substitution runs over Fraction.
    Returns a list of tuples, one per free column.
    """
    a = _integer_rows(m)
    rows, cols = len(a), len(a[0])
    pivots = []  # (row, col) in echelon order
    prev = 1
    r = 0
    for c in range(cols):
        pivot_row = None
        for i in range(r, rows):
            if a[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        a[r], a[pivot_row] = a[pivot_row], a[r]
        for i in range(r + 1, rows):
            for j in range(c + 1, cols):
                num = a[r][c] * a[i][j] - a[i][c] * a[r][j]
                q, rem = divmod(num, prev)
                if rem:  # Bareiss guarantees exact division
                    raise ArithmeticError("fraction-free elimination lost exactness")
                a[i][j] = q
            a[i][c] = 0
        prev = a[r][c]
        pivots.append((r, c))
        r += 1
        if r == rows:
            break
    pivot_cols = [c for (_, c) in pivots]
    free_cols = [c for c in range(cols) if c not in pivot_cols]
    basis = []
    for fc in free_cols:
        v = [Q(0)] * cols
        v[fc] = Q(1)
        for (pr, pc) in reversed(pivots):
            s = sum((Q(a[pr][j]) * v[j] for j in range(pc + 1, cols)), Q(0))
            v[pc] = -s / a[pr][pc]
        basis.append(tuple(v))
    return basis


def solve(m: RationalMatrix, rhs):
    """Solve m x = rhs exactly; m must be square and nonsingular."""
    if m.rows != m.cols:
        raise ValueError("solve needs a square matrix")
    n = m.rows
    a = [list(row) + [Q(rhs[i])] for i, row in enumerate(m._e)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        a[c], a[pivot] = a[pivot], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return tuple(a[i][n] for i in range(n))


def inverse(m: RationalMatrix) -> RationalMatrix:
    """Exact inverse via Gauss-Jordan; raises ValueError when singular."""
    if m.rows != m.cols:
        raise ValueError("inverse needs a square matrix")
    n = m.rows
    a = [list(row) + [Q(1) if i == j else Q(0) for j in range(n)] for i, row in enumerate(m._e)]
    for c in range(n):
        pivot = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pivot is None:
            raise ValueError("matrix is singular")
        a[c], a[pivot] = a[pivot], a[c]
        inv = 1 / a[c][c]
        a[c] = [x * inv for x in a[c]]
        for i in range(n):
            if i != c and a[i][c] != 0:
                f = a[i][c]
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return RationalMatrix([row[n:] for row in a])


def determinant(m: RationalMatrix) -> Fraction:
    """Exact determinant by fraction Gaussian elimination."""
    if m.rows != m.cols:
        raise ValueError("determinant needs a square matrix")
    n = m.rows
    a = [list(row) for row in m._e]
    det = Q(1)
    for c in range(n):
        pivot = next((i for i in range(c, n) if a[i][c] != 0), None)
        if pivot is None:
            return Q(0)
        if pivot != c:
            a[c], a[pivot] = a[pivot], a[c]
            det = -det
        det *= a[c][c]
        inv = 1 / a[c][c]
        for i in range(c + 1, n):
            if a[i][c] != 0:
                f = a[i][c] * inv
                a[i] = [x - f * y for x, y in zip(a[i], a[c])]
    return det
