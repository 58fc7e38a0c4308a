"""The structure algebra h inside gl(n) and invariance under group samples."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exact import DimensionError, Matrix, SpanSolver, Vector, mat_bracket, rational_to_json
from .results import CheckResult
from .tensors import CharTriple, eval_lambda, eval_R, eval_T


@dataclass(frozen=True)
class LieSubalgebra:
    """Subspace of gl(n) spanned by independent matrices.

    Closure under the commutator is not enforced here; see
    :func:`check_closure`.  An empty basis is the zero subalgebra.
    """

    n: int
    basis: tuple
    _solver: SpanSolver = field(repr=False, compare=False, hash=False, default=None)

    def __init__(self, basis: Sequence[Matrix], n: int | None = None):
        basis = tuple(basis)
        if n is None:
            if not basis:
                raise ValueError("n is required for the zero subalgebra")
            n = basis[0].n
        for k, b in enumerate(basis):
            if b.n != n:
                raise DimensionError(f"h basis element {k} is {b.n}x{b.n}, expected {n}x{n}")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "basis", basis)
        # raises DependentBasisError on a dependent basis
        object.__setattr__(self, "_solver", SpanSolver([b.flat() for b in basis], n * n))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def coordinates(self, m: Matrix) -> list[Fraction] | None:
        if m.n != self.n:
            raise DimensionError(f"{m.n}x{m.n} matrix tested against h in gl({self.n})")
        return self._solver.coordinates(m.flat())

    def contains(self, m: Matrix) -> bool:
        return self.coordinates(m) is not None

    def normal_form(self, m: Matrix) -> Matrix:
        """Representative of m + h that depends only on the coset.

        Entries at the echelon pivots of h are cleared, so ``normal_form(m + x)
        == normal_form(m)`` for every x in h.
        """
        if m.n != self.n:
            raise DimensionError(f"{m.n}x{m.n} matrix reduced modulo h in gl({self.n})")
        return Matrix.from_flat(self.n, self._solver.residual(m.flat()))

    def combine(self, coeffs: Sequence[Fraction]) -> Matrix:
        out = Matrix.zero(self.n)
        for c, b in zip(coeffs, self.basis):
            if c:
                out = out + b * c
        return out


@dataclass(frozen=True)
class GroupGenerators:
    generators: tuple

    def __init__(self, generators: Sequence[Matrix]):
        generators = tuple(generators)
        for k, g in enumerate(generators):
            if g.determinant() == 0:
                raise ValueError(f"group generator {k} is singular")
        object.__setattr__(self, "generators", generators)

    def __iter__(self):
        return iter(self.generators)

    def __len__(self):
        return len(self.generators)


def in_h(h: LieSubalgebra, m: Matrix) -> list[Fraction] | None:
    """Coefficients of m in the basis of h, or None when m is not in h."""
    return h.coordinates(m)


def check_closure(h: LieSubalgebra) -> CheckResult:
    for a, b in combinations(range(h.dim), 2):
        c = mat_bracket(h.basis[a], h.basis[b])
        if not h.contains(c):
            return CheckResult("closure", False, {"a": a, "b": b, "bracket": c.to_json()})
    return CheckResult("closure", True)


def check_group_invariance(g: GroupGenerators, h: LieSubalgebra, triple: CharTriple) -> CheckResult:
    """Finite-sample version of the G-invariance of (R0, T0, lambda mod h)."""
    n = triple.n
    if h.n != n:
        raise DimensionError(f"h lives in gl({h.n}) but the triple has n={n}")
    e = [Vector.basis(n, i) for i in range(n)]
    for k, gm in enumerate(g):
        if gm.n != n:
            raise DimensionError(f"generator {k} is {gm.n}x{gm.n}, expected {n}x{n}")
        gi = gm.inverse()
        ge = [gi @ v for v in e]
        for i, j in combinations(range(n), 2):
            lhs = triple.R.pair(i, j)
            rhs = gm @ eval_R(triple.R, ge[i], ge[j]) @ gi
            if lhs != rhs:
                return CheckResult("group_invariance", False, {
                    "condition": "R", "generator": k, "u": i, "v": j,
                    "residual": (rhs - lhs).to_json()})
            t_l = triple.T.pair(i, j)
            t_r = gm @ eval_T(triple.T, ge[i], ge[j])
            if t_l != t_r:
                return CheckResult("group_invariance", False, {
                    "condition": "T", "generator": k, "u": i, "v": j,
                    "residual": (t_r - t_l).to_json()})
        for i in range(n):
            res = gm @ eval_lambda(triple.lam, ge[i]) @ gi - triple.lam[i]
            if not h.contains(res):
                return CheckResult("group_invariance", False, {
                    "condition": "lambda", "generator": k, "u": i, "residual": res.to_json()})
    return CheckResult("group_invariance", True)


def so_basis(n: int) -> list[Matrix]:
    """E_ji - E_ij for i<j: the standard basis of so(n).

    For n=2 this is J = [[0,-1],[1,0]].
    """
    return [Matrix.unit(n, j, i) - Matrix.unit(n, i, j) for i, j in combinations(range(n), 2)]


def coefficients_to_json(coeffs: Sequence[Fraction]) -> list:
    return [rational_to_json(c) for c in coeffs]
