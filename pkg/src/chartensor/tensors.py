"""Constant tensors on Q^n: torsion-type, curvature-type and liftings.

Skew-symmetric tensors store only the components on pairs ``(i, j)`` with
``i < j``; the other half is implied, so skewness holds by construction.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from typing import Callable, Mapping, Sequence

from .exact import DimensionError, Matrix, Vector, mat_bracket


def _pairs(n: int):
    return combinations(range(n), 2)


def _skew_components(n, components, zero, kind):
    out = {}
    for (i, j), value in components.items():
        if not (0 <= i < n and 0 <= j < n):
            raise DimensionError(f"{kind} index pair ({i}, {j}) out of range for n={n}")
        if value.n != n:
            raise DimensionError(f"{kind} component ({i}, {j}) has dimension {value.n}, expected {n}")
        if i == j:
            if not value.is_zero():
                raise ValueError(f"{kind} component ({i}, {i}) must vanish by skew-symmetry")
            continue
        if i > j:
            i, j, value = j, i, -value
        if (i, j) in out and out[(i, j)] != value:
            raise ValueError(f"{kind} components ({i}, {j}) and ({j}, {i}) are not skew")
        out[(i, j)] = value
    return tuple(out.get(p, zero) for p in _pairs(n))


@dataclass(frozen=True)
class TorsionTensor:
    """Skew bilinear map Q^n x Q^n -> Q^n."""

    n: int
    components: tuple  # Vector per pair i<j, in combinations() order

    @classmethod
    def from_pairs(cls, n: int, components: Mapping[tuple, Vector]) -> "TorsionTensor":
        return cls(n, _skew_components(n, components, Vector.zero(n), "torsion"))

    @classmethod
    def zero(cls, n: int) -> "TorsionTensor":
        return cls.from_pairs(n, {})

    @classmethod
    def from_function(cls, n: int, f: Callable[[Vector, Vector], Vector]) -> "TorsionTensor":
        return cls(n, tuple(f(Vector.basis(n, i), Vector.basis(n, j)) for i, j in _pairs(n)))

    def pair(self, i: int, j: int) -> Vector:
        """T(e_i, e_j)."""
        if i == j:
            return Vector.zero(self.n)
        if i < j:
            return self.components[_pair_index(self.n, i, j)]
        return -self.components[_pair_index(self.n, j, i)]

    def items(self):
        return zip(_pairs(self.n), self.components)

    def is_zero(self) -> bool:
        return all(v.is_zero() for v in self.components)

    def __add__(self, other: "TorsionTensor") -> "TorsionTensor":
        _same_n(self.n, other.n)
        return TorsionTensor(self.n, tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "TorsionTensor") -> "TorsionTensor":
        _same_n(self.n, other.n)
        return TorsionTensor(self.n, tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> "TorsionTensor":
        return TorsionTensor(self.n, tuple(-a for a in self.components))

    def __mul__(self, c) -> "TorsionTensor":
        return TorsionTensor(self.n, tuple(a * c for a in self.components))

    __rmul__ = __mul__


@dataclass(frozen=True)
class CurvatureTensor:
    """Skew bilinear map Q^n x Q^n -> gl(n)."""

    n: int
    components: tuple  # Matrix per pair i<j

    @classmethod
    def from_pairs(cls, n: int, components: Mapping[tuple, Matrix]) -> "CurvatureTensor":
        return cls(n, _skew_components(n, components, Matrix.zero(n), "curvature"))

    @classmethod
    def zero(cls, n: int) -> "CurvatureTensor":
        return cls.from_pairs(n, {})

    @classmethod
    def from_function(cls, n: int, f: Callable[[Vector, Vector], Matrix]) -> "CurvatureTensor":
        return cls(n, tuple(f(Vector.basis(n, i), Vector.basis(n, j)) for i, j in _pairs(n)))

    def pair(self, i: int, j: int) -> Matrix:
        if i == j:
            return Matrix.zero(self.n)
        if i < j:
            return self.components[_pair_index(self.n, i, j)]
        return -self.components[_pair_index(self.n, j, i)]

    def items(self):
        return zip(_pairs(self.n), self.components)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.components)

    def __add__(self, other: "CurvatureTensor") -> "CurvatureTensor":
        _same_n(self.n, other.n)
        return CurvatureTensor(self.n, tuple(a + b for a, b in zip(self.components, other.components)))

    def __sub__(self, other: "CurvatureTensor") -> "CurvatureTensor":
        _same_n(self.n, other.n)
        return CurvatureTensor(self.n, tuple(a - b for a, b in zip(self.components, other.components)))

    def __neg__(self) -> "CurvatureTensor":
        return CurvatureTensor(self.n, tuple(-a for a in self.components))

    def __mul__(self, c) -> "CurvatureTensor":
        return CurvatureTensor(self.n, tuple(a * c for a in self.components))

    __rmul__ = __mul__


@dataclass(frozen=True)
class Lifting:
    """Linear map Q^n -> gl(n), given by its values on the standard basis."""

    n: int
    components: tuple  # Matrix per basis vector

    def __init__(self, components: Sequence[Matrix], n: int | None = None):
        components = tuple(components)
        if n is None:
            if not components:
                raise ValueError("n is required for an empty lifting")
            n = len(components)
        if len(components) != n:
            raise DimensionError(f"lifting needs {n} matrices, got {len(components)}")
        for k, m in enumerate(components):
            if m.n != n:
                raise DimensionError(f"lifting matrix {k} is {m.n}x{m.n}, expected {n}x{n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "components", components)

    @classmethod
    def zero(cls, n: int) -> "Lifting":
        return cls([Matrix.zero(n)] * n, n)

    def __getitem__(self, i: int) -> Matrix:
        return self.components[i]

    def __add__(self, other: "Lifting") -> "Lifting":
        _same_n(self.n, other.n)
        return Lifting([a + b for a, b in zip(self.components, other.components)], self.n)

    def __sub__(self, other: "Lifting") -> "Lifting":
        _same_n(self.n, other.n)
        return Lifting([a - b for a, b in zip(self.components, other.components)], self.n)

    def is_zero(self) -> bool:
        return all(m.is_zero() for m in self.components)


@dataclass(frozen=True)
class CharTriple:
    """Candidate characteristic data (R0, T0, lambda) on Q^n."""

    R: CurvatureTensor
    T: TorsionTensor
    lam: Lifting

    def __post_init__(self):
        if not (self.R.n == self.T.n == self.lam.n):
            raise DimensionError(
                f"inconsistent dimensions R:{self.R.n} T:{self.T.n} lambda:{self.lam.n}"
            )

    @property
    def n(self) -> int:
        return self.R.n


def _same_n(a: int, b: int) -> None:
    if a != b:
        raise DimensionError(f"dimensions {a} and {b} differ")


def _pair_index(n: int, i: int, j: int) -> int:
    # position of (i, j), i<j, in combinations(range(n), 2)
    return i * n - i * (i + 1) // 2 + (j - i - 1)


def eval_R(R: CurvatureTensor, u: Vector, v: Vector) -> Matrix:
    _same_n(R.n, u.n)
    _same_n(R.n, v.n)
    out = Matrix.zero(R.n)
    for (i, j), m in R.items():
        c = u[i] * v[j] - u[j] * v[i]
        if c:
            out = out + m * c
    return out


def eval_T(T: TorsionTensor, u: Vector, v: Vector) -> Vector:
    _same_n(T.n, u.n)
    _same_n(T.n, v.n)
    out = Vector.zero(T.n)
    for (i, j), w in T.items():
        c = u[i] * v[j] - u[j] * v[i]
        if c:
            out = out + w * c
    return out


def eval_lambda(lam: Lifting, u: Vector) -> Matrix:
    _same_n(lam.n, u.n)
    out = Matrix.zero(lam.n)
    for c, m in zip(u, lam.components):
        if c:
            out = out + m * c
    return out


def derivation_action_on_T(L: Matrix, T: TorsionTensor) -> TorsionTensor:
    """(D_L T)(u, v) = L T(u, v) - T(L u, v) - T(u, L v)."""
    _same_n(L.n, T.n)
    n = T.n

    def comp(u, v):
        return L @ eval_T(T, u, v) - eval_T(T, L @ u, v) - eval_T(T, u, L @ v)

    return TorsionTensor.from_function(n, comp)


def derivation_action_on_R(L: Matrix, R: CurvatureTensor) -> CurvatureTensor:
    """(D_L R)(u, v) = [L, R(u, v)] - R(L u, v) - R(u, L v)."""
    _same_n(L.n, R.n)
    n = R.n

    def comp(u, v):
        return mat_bracket(L, eval_R(R, u, v)) - eval_R(R, L @ u, v) - eval_R(R, u, L @ v)

    return CurvatureTensor.from_function(n, comp)


def derivation_action_on_lifting(L: Matrix, s: Lifting) -> Lifting:
    """(D_L s)(Y) = [L, s(Y)] - s(L Y) for a gl(n)-valued 1-form s."""
    _same_n(L.n, s.n)
    n = s.n
    return Lifting(
        [mat_bracket(L, s[j]) - eval_lambda(s, L @ Vector.basis(n, j)) for j in range(n)], n
    )


def cyclic_sum(f, x, y, z):
    """f(x, y, z) + f(y, z, x) + f(z, x, y)."""
    return f(x, y, z) + f(y, z, x) + f(z, x, y)


def m_bracket(lam: Lifting, x: Vector, y: Vector) -> Vector:
    """The Q^n-part lambda(x) y - lambda(y) x of the synthesized bracket."""
    return eval_lambda(lam, x) @ y - eval_lambda(lam, y) @ x


def s_term(lam: Lifting, L: Matrix, x: Vector, y: Vector) -> Vector:
    # S_[L,X,Y] = [L, lambda(X)] Y - lambda(Y) (L X)
    return mat_bracket(L, eval_lambda(lam, x)) @ y - eval_lambda(lam, y) @ (L @ x)


def t_term(lam: Lifting, x: Vector, y: Vector, z: Vector) -> Vector:
    # T_[X,Y,Z] = [lambda(X), lambda(Y)] Z - lambda(Z) [X, Y]^m
    return (mat_bracket(eval_lambda(lam, x), eval_lambda(lam, y)) @ z
            - eval_lambda(lam, z) @ m_bracket(lam, x, y))


def basis_vectors(n: int) -> list[Vector]:
    return [Vector.basis(n, i) for i in range(n)]
