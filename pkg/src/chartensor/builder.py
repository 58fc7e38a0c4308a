"""Synthesis of the Lie algebra a = h + m from torsion-free characteristic data.

The basis of ``a`` is ``(h_1..h_k, e_1..e_n)``: the given basis of h followed
by the standard basis of m = Q^n.  Brackets:

    [X, Y]_m = lambda(X) Y - lambda(Y) X
    [X, Y]_h = [lambda X, lambda Y] - lambda([X, Y]_m) - R(X, Y)
    [L, X]_m = L X
    [L, X]_h = [L, lambda X] - lambda(L X)
    [L, T]   = commutator in h
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Sequence

from .exact import Matrix, SpanSolver, Vector, mat_bracket, rational_to_json, symmetric_inertia
from .results import CheckResult
from .subalgebra import LieSubalgebra
from .tensors import CurvatureTensor, Lifting, eval_lambda

ZERO = Fraction(0)


class BuildError(ValueError):
    """An h-valued bracket component fell outside h.

    ``condition`` names the check that should have caught it.
    """

    def __init__(self, message: str, condition: str, witness: dict):
        super().__init__(message)
        self.condition = condition
        self.witness = witness


@dataclass(frozen=True)
class LieAlgebraStructure:
    n: int
    h_basis: tuple
    constants: tuple  # constants[a][b] = coordinates of [basis_a, basis_b]

    @property
    def k(self) -> int:
        return len(self.h_basis)

    @property
    def dim(self) -> int:
        return len(self.constants)

    @property
    def labels(self) -> list[str]:
        return [f"h{a + 1}" for a in range(self.k)] + [f"e{i + 1}" for i in range(self.n)]

    def bracket(self, x: Sequence[Fraction], y: Sequence[Fraction]) -> tuple:
        out = [ZERO] * self.dim
        for a, xa in enumerate(x):
            if not xa:
                continue
            row = self.constants[a]
            for b, yb in enumerate(y):
                if not yb:
                    continue
                f = xa * yb
                for c, v in enumerate(row[b]):
                    if v:
                        out[c] += f * v
        return tuple(out)

    def unit(self, a: int) -> tuple:
        return tuple(Fraction(int(i == a)) for i in range(self.dim))

    def ad(self, a: int) -> Matrix:
        """Matrix of ad_{basis_a}: column b holds [basis_a, basis_b]."""
        d = self.dim
        return Matrix._raw(tuple(tuple(self.constants[a][b][c] for b in range(d)) for c in range(d)))

    def structure_constants_json(self) -> list:
        return [[[rational_to_json(x) for x in v] for v in row] for row in self.constants]

    def to_json(self) -> dict:
        return {
            "dim": self.dim,
            "basis": self.labels,
            "structure_constants": self.structure_constants_json(),
        }


@dataclass(frozen=True)
class LiftShift:
    """Linear map m -> h; ``delta[i]`` holds h-coordinates of delta(e_i)."""

    delta: tuple

    def __init__(self, delta: Sequence[Sequence[Fraction]]):
        object.__setattr__(self, "delta", tuple(tuple(Fraction(x) for x in row) for row in delta))

    def matrices(self, h: LieSubalgebra) -> Lifting:
        return Lifting([h.combine(row) for row in self.delta], h.n)

    @classmethod
    def zero(cls, n: int, k: int) -> "LiftShift":
        return cls([[ZERO] * k for _ in range(n)])


def build_bracket(h: LieSubalgebra, R: CurvatureTensor, lam: Lifting) -> LieAlgebraStructure:
    n, k = lam.n, h.dim
    d = k + n
    zero_vec = (ZERO,) * d
    c = [[zero_vec] * d for _ in range(d)]
    e = [Vector.basis(n, i) for i in range(n)]

    def put(a, b, h_part, m_part):
        v = tuple(h_part) + tuple(m_part)
        c[a][b] = v
        c[b][a] = tuple(-x for x in v)

    for a, b in combinations(range(k), 2):
        br = mat_bracket(h.basis[a], h.basis[b])
        coords = h.coordinates(br)
        if coords is None:
            raise BuildError(f"[h{a + 1}, h{b + 1}] is not in h", "closure",
                             {"a": a, "b": b, "bracket": br.to_json()})
        put(a, b, coords, (ZERO,) * n)

    for a, L in enumerate(h.basis):
        for i in range(n):
            Le = L @ e[i]
            hm = mat_bracket(L, lam[i]) - eval_lambda(lam, Le)
            coords = h.coordinates(hm)
            if coords is None:
                raise BuildError(f"[h{a + 1}, e{i + 1}] has an h-component outside h",
                                 "inf_invariance_lambda", {"L": a, "u": i, "value": hm.to_json()})
            put(a, k + i, coords, Le.entries)

    for i, j in combinations(range(n), 2):
        xm = lam[i] @ e[j] - lam[j] @ e[i]
        # sign fixed by requiring the curvature of the model connection to be R
        hm = mat_bracket(lam[i], lam[j]) - eval_lambda(lam, xm) - R.pair(i, j)
        coords = h.coordinates(hm)
        if coords is None:
            raise BuildError(f"[e{i + 1}, e{j + 1}] has an h-component outside h",
                             "curvature_relation", {"u": i, "v": j, "residual": (-hm).to_json()})
        put(k + i, k + j, coords, xm.entries)

    return LieAlgebraStructure(n, tuple(h.basis), tuple(tuple(row) for row in c))


def jacobiator(A: LieAlgebraStructure, a: int, b: int, c: int) -> tuple:
    u = A.unit
    t1 = A.bracket(A.constants[a][b], u(c))
    t2 = A.bracket(A.constants[b][c], u(a))
    t3 = A.bracket(A.constants[c][a], u(b))
    return tuple(x + y + z for x, y, z in zip(t1, t2, t3))


def check_jacobi(A: LieAlgebraStructure) -> CheckResult:
    for a, b in combinations(range(A.dim), 2):
        if A.constants[a][b] != tuple(-x for x in A.constants[b][a]):
            return CheckResult("jacobi", False, {"antisymmetry": [a, b]})
    labels = A.labels
    for a, b, c in combinations(range(A.dim), 3):
        v = jacobiator(A, a, b, c)
        if any(v):
            return CheckResult("jacobi", False, {
                "triple": [a, b, c], "labels": [labels[a], labels[b], labels[c]],
                "value": [rational_to_json(x) for x in v]})
    return CheckResult("jacobi", True)


def killing_form(A: LieAlgebraStructure) -> Matrix:
    d = A.dim
    C = A.constants
    rows = []
    for a in range(d):
        row = []
        for b in range(d):
            s = ZERO
            for j in range(d):
                caj = C[a][j]
                for kk in range(d):
                    if caj[kk]:
                        s += caj[kk] * C[b][kk][j]
            row.append(s)
        rows.append(tuple(row))
    return Matrix._raw(tuple(rows))


def killing_inertia(A: LieAlgebraStructure) -> tuple[int, int, int]:
    return symmetric_inertia(killing_form(A))


def derived_series(A: LieAlgebraStructure) -> list[int]:
    """Dimensions of a, [a,a], [[a,a],[a,a]], ... until they stabilise."""
    current = [A.unit(a) for a in range(A.dim)]
    dims = [len(current)]
    while current:
        basis: list = []
        solver = None
        for x, y in combinations(current, 2):
            v = A.bracket(x, y)
            if not any(v):
                continue
            if solver is not None and solver.coordinates(v) is not None:
                continue
            basis.append(v)
            solver = SpanSolver(basis, A.dim)
        if len(basis) == len(current):
            break
        current = basis
        dims.append(len(current))
    return dims


def identification(A: LieAlgebraStructure) -> dict:
    return {
        "dim": A.dim,
        "killing_inertia": list(killing_inertia(A)),
        "derived_series": derived_series(A),
    }


def lifting_shift_isomorphism(h: LieSubalgebra, R: CurvatureTensor, lam: Lifting,
                              delta: LiftShift) -> CheckResult:
    """phi = [[Id_h, delta], [0, Id_m]] is an isomorphism from the bracket
    built with ``lam`` to the one built with ``lam - delta``."""
    k, n = h.dim, lam.n
    A = build_bracket(h, R, lam)
    B = build_bracket(h, R, lam - delta.matrices(h))

    def phi(x):
        hx = list(x[:k])
        for i in range(n):
            xi = x[k + i]
            if xi:
                for a in range(k):
                    hx[a] += xi * delta.delta[i][a]
        return tuple(hx) + tuple(x[k:])

    images = [phi(A.unit(a)) for a in range(A.dim)]
    for a, b in combinations(range(A.dim), 2):
        lhs = phi(A.constants[a][b])
        rhs = B.bracket(images[a], images[b])
        if lhs != rhs:
            return CheckResult("lifting_shift_isomorphism", False, {
                "pair": [a, b],
                "lhs": [rational_to_json(x) for x in lhs],
                "rhs": [rational_to_json(x) for x in rhs]})
    return CheckResult("lifting_shift_isomorphism", True)


def lambda_bar(A: LieAlgebraStructure, lam: Lifting, x: Sequence[Fraction]) -> Matrix:
    """Extension of lambda to a: the matrix action on h, lambda on m."""
    k = A.k
    out = Matrix.zero(A.n)
    for a in range(k):
        if x[a]:
            out = out + A.h_basis[a] * x[a]
    return out + eval_lambda(lam, Vector(x[k:]))


def _h_row(h: LieSubalgebra, lam: Lifting, a: int) -> list:
    """Coordinates of [h_a, x] for every basis element x of a."""
    L = h.basis[a]
    k, n = h.dim, lam.n
    row = []
    for b in range(k):
        coords = h.coordinates(mat_bracket(L, h.basis[b]))
        if coords is None:
            raise BuildError(f"[h{a + 1}, h{b + 1}] is not in h", "closure", {"a": a, "b": b})
        row.append(tuple(coords) + (ZERO,) * n)
    for i in range(n):
        Le = L @ Vector.basis(n, i)
        coords = h.coordinates(mat_bracket(L, lam[i]) - eval_lambda(lam, Le))
        if coords is None:
            raise BuildError(f"[h{a + 1}, e{i + 1}] has an h-component outside h",
                             "inf_invariance_lambda", {"L": a, "u": i})
        row.append(tuple(coords) + Le.entries)
    return row


def lambda_bar_equivariance(h: LieSubalgebra, lam: Lifting,
                            A: LieAlgebraStructure | None = None) -> CheckResult:
    """[lambda_bar(L), lambda_bar(x)] = lambda_bar([L, x]) for L in h, x in a."""
    shell = LieAlgebraStructure(lam.n, tuple(h.basis), ())
    d = h.dim + lam.n
    units = [tuple(Fraction(int(i == b)) for i in range(d)) for b in range(d)]
    for a in range(h.dim):
        La = h.basis[a]
        row = A.constants[a] if A is not None else _h_row(h, lam, a)
        for b in range(d):
            lhs = mat_bracket(La, lambda_bar(shell, lam, units[b]))
            rhs = lambda_bar(shell, lam, row[b])
            if lhs != rhs:
                return CheckResult("lambda_bar_equivariance", False, {
                    "L": a, "x": b, "lhs": lhs.to_json(), "rhs": rhs.to_json()})
    return CheckResult("lambda_bar_equivariance", True)
