"""Exact linear algebra over the rationals.

Scalars are :class:`fractions.Fraction`; vectors and square matrices are small
immutable containers around tuples of fractions.  Nothing here ever rounds.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence, Union

Rational = Fraction
RationalLike = Union[int, Fraction, str]


class DimensionError(ValueError):
    """Operands of incompatible dimension."""


class DependentBasisError(ValueError):
    """A supposed basis is linearly dependent.

    ``index`` is the position of the first element lying in the span of the
    elements before it.
    """

    def __init__(self, index: int):
        super().__init__(f"basis element {index} lies in the span of the previous ones")
        self.index = index


class NotSymmetricError(ValueError):
    pass


def to_rational(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction or ``"p/q"`` string to a Fraction.

    Floats are refused: a float has already been rounded.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rationals")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        text = value.strip()
        num, sep, den = text.partition("/")
        try:
            p = int(num)
            q = int(den) if sep else 1
        except ValueError:
            raise ValueError(f"malformed rational {value!r}") from None
        if q == 0:
            raise ValueError(f"zero denominator in {value!r}")
        return Fraction(p, q)
    raise TypeError(f"cannot read {type(value).__name__} {value!r} as an exact rational")


def rational_to_json(q: Fraction) -> Union[int, str]:
    if q.denominator == 1:
        return q.numerator
    return f"{q.numerator}/{q.denominator}"


@dataclass(frozen=True)
class Vector:
    entries: tuple

    def __init__(self, entries: Iterable[RationalLike]):
        object.__setattr__(self, "entries", tuple(to_rational(x) for x in entries))

    @classmethod
    def zero(cls, n: int) -> "Vector":
        return cls._raw((Fraction(0),) * n)

    @classmethod
    def basis(cls, n: int, i: int) -> "Vector":
        return cls._raw(tuple(Fraction(int(k == i)) for k in range(n)))

    @classmethod
    def _raw(cls, entries: tuple) -> "Vector":
        v = object.__new__(cls)
        object.__setattr__(v, "entries", entries)
        return v

    @property
    def n(self) -> int:
        return len(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    def __iter__(self):
        return iter(self.entries)

    def __getitem__(self, i: int) -> Fraction:
        return self.entries[i]

    def _check(self, other: "Vector") -> None:
        if len(other.entries) != len(self.entries):
            raise DimensionError(f"vector lengths {len(self.entries)} and {len(other.entries)}")

    def __add__(self, other: "Vector") -> "Vector":
        self._check(other)
        return Vector._raw(tuple(a + b for a, b in zip(self.entries, other.entries)))

    def __sub__(self, other: "Vector") -> "Vector":
        self._check(other)
        return Vector._raw(tuple(a - b for a, b in zip(self.entries, other.entries)))

    def __neg__(self) -> "Vector":
        return Vector._raw(tuple(-a for a in self.entries))

    def __mul__(self, c: RationalLike) -> "Vector":
        c = to_rational(c)
        return Vector._raw(tuple(c * a for a in self.entries))

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return not any(self.entries)

    def dot(self, other: "Vector") -> Fraction:
        self._check(other)
        return sum((a * b for a, b in zip(self.entries, other.entries)), Fraction(0))

    def cross(self, other: "Vector") -> "Vector":
        if self.n != 3 or other.n != 3:
            raise DimensionError("cross product needs 3-vectors")
        a1, a2, a3 = self.entries
        b1, b2, b3 = other.entries
        return Vector._raw((a2 * b3 - a3 * b2, a3 * b1 - a1 * b3, a1 * b2 - a2 * b1))

    def to_json(self) -> list:
        return [rational_to_json(x) for x in self.entries]


@dataclass(frozen=True)
class Matrix:
    """Square matrix over Q, row-major."""

    rows: tuple

    def __init__(self, rows: Sequence[Sequence[RationalLike]]):
        rows = tuple(tuple(to_rational(x) for x in row) for row in rows)
        n = len(rows)
        if any(len(r) != n for r in rows):
            raise DimensionError(f"matrix is not square: row lengths {[len(r) for r in rows]}")
        object.__setattr__(self, "rows", rows)

    @classmethod
    def _raw(cls, rows: tuple) -> "Matrix":
        m = object.__new__(cls)
        object.__setattr__(m, "rows", rows)
        return m

    @classmethod
    def zero(cls, n: int) -> "Matrix":
        z = Fraction(0)
        return cls._raw(tuple((z,) * n for _ in range(n)))

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls._raw(tuple(tuple(Fraction(int(i == j)) for j in range(n)) for i in range(n)))

    @classmethod
    def unit(cls, n: int, i: int, j: int) -> "Matrix":
        """Elementary matrix E_ij."""
        return cls._raw(
            tuple(tuple(Fraction(int(r == i and c == j)) for c in range(n)) for r in range(n))
        )

    @classmethod
    def from_flat(cls, n: int, flat: Sequence[Fraction]) -> "Matrix":
        return cls._raw(tuple(tuple(flat[i * n:(i + 1) * n]) for i in range(n)))

    @classmethod
    def from_columns(cls, cols: Sequence[Vector]) -> "Matrix":
        n = len(cols)
        return cls._raw(tuple(tuple(cols[j][i] for j in range(n)) for i in range(n)))

    @property
    def n(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def flat(self) -> tuple:
        return tuple(x for row in self.rows for x in row)

    def column(self, j: int) -> Vector:
        return Vector._raw(tuple(row[j] for row in self.rows))

    def _check(self, other: "Matrix") -> None:
        if other.n != self.n:
            raise DimensionError(f"matrix dimensions {self.n} and {other.n}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix._raw(
            tuple(tuple(a + b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        return Matrix._raw(
            tuple(tuple(a - b for a, b in zip(r, s)) for r, s in zip(self.rows, other.rows))
        )

    def __neg__(self) -> "Matrix":
        return Matrix._raw(tuple(tuple(-a for a in r) for r in self.rows))

    def __mul__(self, c: RationalLike) -> "Matrix":
        c = to_rational(c)
        return Matrix._raw(tuple(tuple(c * a for a in r) for r in self.rows))

    __rmul__ = __mul__

    def __matmul__(self, other):
        if isinstance(other, Vector):
            if other.n != self.n:
                raise DimensionError(f"matrix of size {self.n} applied to vector of length {other.n}")
            v = other.entries
            return Vector._raw(
                tuple(sum((a * b for a, b in zip(row, v)), Fraction(0)) for row in self.rows)
            )
        self._check(other)
        cols = tuple(zip(*other.rows))
        return Matrix._raw(
            tuple(
                tuple(sum((a * b for a, b in zip(row, col)), Fraction(0)) for col in cols)
                for row in self.rows
            )
        )

    def transpose(self) -> "Matrix":
        return Matrix._raw(tuple(zip(*self.rows)))

    def trace(self) -> Fraction:
        return sum((self.rows[i][i] for i in range(self.n)), Fraction(0))

    def is_zero(self) -> bool:
        return not any(x for row in self.rows for x in row)

    def is_symmetric(self) -> bool:
        return self.rows == tuple(zip(*self.rows))

    def determinant(self) -> Fraction:
        a = [list(r) for r in self.rows]
        n = self.n
        det = Fraction(1)
        for c in range(n):
            p = next((r for r in range(c, n) if a[r][c] != 0), None)
            if p is None:
                return Fraction(0)
            if p != c:
                a[c], a[p] = a[p], a[c]
                det = -det
            det *= a[c][c]
            for r in range(c + 1, n):
                f = a[r][c] / a[c][c]
                if f:
                    a[r] = [x - f * y for x, y in zip(a[r], a[c])]
        return det

    def inverse(self) -> "Matrix":
        n = self.n
        sol = solve_linear([list(r) for r in self.rows], None, rhs_columns=Matrix.identity(n).rows)
        if sol is None:
            raise ZeroDivisionError("matrix is singular")
        return sol

    def to_json(self) -> list:
        return [[rational_to_json(x) for x in row] for row in self.rows]


def mat_bracket(a: Matrix, b: Matrix) -> Matrix:
    """Commutator ``ab - ba``."""
    if a.n != b.n:
        raise DimensionError(f"cannot bracket {a.n}x{a.n} with {b.n}x{b.n}")
    return a @ b - b @ a


class SpanSolver:
    """Exact coordinates with respect to a fixed list of independent vectors.

    The basis is reduced once, incrementally and in the given order, so the
    first dependent element can be named.  Each query then costs one
    reduction against the stored echelon rows.
    """

    def __init__(self, basis: Sequence[Sequence[Fraction]], length: int | None = None):
        self.k = len(basis)
        if length is None:
            if not basis:
                raise ValueError("length is required for an empty basis")
            length = len(basis[0])
        self.length = length
        # each row: (pivot column, reduced vector, combination of the original basis)
        self._rows: list[tuple[int, list, list]] = []
        for idx, b in enumerate(basis):
            if len(b) != length:
                raise DimensionError(f"basis element {idx} has length {len(b)}, expected {length}")
            vec = list(b)
            combo = [Fraction(0)] * self.k
            combo[idx] = Fraction(1)
            self._reduce(vec, combo)
            pivot = next((c for c, x in enumerate(vec) if x), None)
            if pivot is None:
                raise DependentBasisError(idx)
            inv = 1 / vec[pivot]
            vec = [x * inv for x in vec]
            combo = [x * inv for x in combo]
            for r, (p, rv, rc) in enumerate(self._rows):
                f = rv[pivot]
                if f:
                    self._rows[r] = (p, [x - f * y for x, y in zip(rv, vec)],
                                     [x - f * y for x, y in zip(rc, combo)])
            self._rows.append((pivot, vec, combo))

    def _reduce(self, vec: list, combo: list | None) -> None:
        for p, rv, rc in self._rows:
            f = vec[p]
            if f:
                for i, y in enumerate(rv):
                    if y:
                        vec[i] -= f * y
                if combo is not None:
                    for i, y in enumerate(rc):
                        if y:
                            combo[i] -= f * y

    def coordinates(self, candidate: Sequence[Fraction]) -> list[Fraction] | None:
        """Coefficients c with candidate = sum c_i basis_i, or None if outside the span."""
        if len(candidate) != self.length:
            raise DimensionError(f"candidate has length {len(candidate)}, expected {self.length}")
        vec = list(candidate)
        coeffs = [Fraction(0)] * self.k
        for p, rv, rc in self._rows:
            f = vec[p]
            if f:
                for i, y in enumerate(rv):
                    if y:
                        vec[i] -= f * y
                for i, y in enumerate(rc):
                    if y:
                        coeffs[i] += f * y
        if any(vec):
            return None
        return coeffs

    def residual(self, candidate: Sequence[Fraction]) -> list[Fraction]:
        """Component of candidate left after removing its reducible part."""
        vec = list(candidate)
        self._reduce(vec, None)
        return vec


def span_membership(basis: Sequence[Matrix], candidate: Matrix) -> list[Fraction] | None:
    """Coefficients of ``candidate`` in the span of ``basis`` or ``None``."""
    for b in basis:
        if b.n != candidate.n:
            raise DimensionError(f"basis matrix of size {b.n} vs candidate of size {candidate.n}")
    solver = SpanSolver([b.flat() for b in basis], candidate.n ** 2)
    return solver.coordinates(candidate.flat())


def rank(vectors: Sequence[Sequence[Fraction]]) -> int:
    """Rank of a list of equal-length rational vectors."""
    rows = [list(v) for v in vectors if any(v)]
    r = 0
    if not rows:
        return 0
    ncols = len(rows[0])
    for c in range(ncols):
        p = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if p is None:
            continue
        rows[r], rows[p] = rows[p], rows[r]
        for i in range(r + 1, len(rows)):
            f = rows[i][c] / rows[r][c]
            if f:
                rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
        r += 1
        if r == len(rows):
            break
    return r


def _height(q: Fraction) -> int:
    return q.numerator.bit_length() + q.denominator.bit_length()


@dataclass(frozen=True)
class LinearSolution:
    solution: tuple
    kernel: tuple

    def __iter__(self):
        return iter((self.solution, self.kernel))


def solve_linear(a, b, rhs_columns=None, ncols: int | None = None):
    """Solve ``a x = b`` exactly by Gauss-Jordan elimination with full pivoting.

    ``a`` is a rectangular list of rows of rationals (or a :class:`Matrix`).
    Returns a :class:`LinearSolution` holding one solution and a basis of the
    kernel of ``a``, or ``None`` if the system is inconsistent.

    ``ncols`` gives the number of unknowns when ``a`` has no rows.
    ``rhs_columns`` (internal) solves for several right-hand sides at once
    and returns the solution matrix; used by :meth:`Matrix.inverse`.
    """
    if isinstance(a, Matrix):
        a = a.rows
    rows = [[to_rational(x) for x in r] for r in a]
    m = len(rows)
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    if any(len(r) != ncols for r in rows):
        raise DimensionError("ragged coefficient matrix")
    if rhs_columns is not None:
        rhs = [list(r) for r in rhs_columns]
    else:
        if isinstance(b, Vector):
            b = b.entries
        if len(b) != m:
            raise DimensionError(f"{m} equations but right-hand side of length {len(b)}")
        rhs = [[to_rational(x)] for x in b]

    col_order = list(range(ncols))
    r = 0
    while r < m and r < ncols:
        best = None
        for i in range(r, m):
            for jj in range(r, ncols):
                x = rows[i][col_order[jj]]
                if x and (best is None or _height(x) < best[0]):
                    best = (_height(x), i, jj)
        if best is None:
            break
        _, pi, pj = best
        rows[r], rows[pi] = rows[pi], rows[r]
        rhs[r], rhs[pi] = rhs[pi], rhs[r]
        col_order[r], col_order[pj] = col_order[pj], col_order[r]
        c = col_order[r]
        inv = 1 / rows[r][c]
        rows[r] = [x * inv for x in rows[r]]
        rhs[r] = [x * inv for x in rhs[r]]
        for i in range(m):
            if i != r:
                f = rows[i][c]
                if f:
                    rows[i] = [x - f * y for x, y in zip(rows[i], rows[r])]
                    rhs[i] = [x - f * y for x, y in zip(rhs[i], rhs[r])]
        r += 1

    if any(any(v) for v in rhs[r:]):
        return None

    pivots = col_order[:r]
    free = col_order[r:]
    nrhs = len(rhs[0]) if rhs else (len(rhs_columns[0]) if rhs_columns else 1)
    x = [[Fraction(0)] * nrhs for _ in range(ncols)]
    for i, c in enumerate(pivots):
        x[c] = list(rhs[i])

    if rhs_columns is not None:
        if free:
            return None
        return Matrix._raw(tuple(tuple(row) for row in x))

    kernel = []
    for f in free:
        v = [Fraction(0)] * ncols
        v[f] = Fraction(1)
        for i, c in enumerate(pivots):
            v[c] = -rows[i][f]
        kernel.append(Vector._raw(tuple(v)))
    return LinearSolution(Vector._raw(tuple(row[0] for row in x)), tuple(kernel))


def symmetric_inertia(s: Matrix) -> tuple[int, int, int]:
    """Numbers of positive, negative and zero eigenvalues of a symmetric matrix.

    Symmetric-pivoted LDL^T over Q: a nonzero diagonal entry is used as pivot;
    if the whole remaining diagonal vanishes but an off-diagonal entry
    ``s[i][j]`` does not, row/column ``j`` is added to ``i`` (a congruence),
    which puts ``2 s[i][j]`` on the diagonal.
    """
    if not s.is_symmetric():
        raise NotSymmetricError("inertia requires a symmetric matrix")
    a = [list(r) for r in s.rows]
    pos = neg = 0
    n = s.n
    while a:
        k = len(a)
        p = next((i for i in range(k) if a[i][i]), None)
        if p is None:
            off = next(((i, j) for i in range(k) for j in range(i + 1, k) if a[i][j]), None)
            if off is None:
                break
            i, j = off
            a[i] = [x + y for x, y in zip(a[i], a[j])]
            for row in a:
                row[i] += row[j]
            p = i
        d = a[p][p]
        if d > 0:
            pos += 1
        else:
            neg += 1
        col = [a[i][p] for i in range(k)]
        a = [
            [a[i][j] - col[i] * col[j] / d for j in range(k) if j != p]
            for i in range(k) if i != p
        ]
    return pos, neg, n - pos - neg
