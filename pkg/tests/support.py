"""Shared builders, strategies and brute-force oracles for the test suite.

The oracles work on plain nested lists and numpy arrays so they do not share
code paths with the library under test.
"""

from __future__ import annotations

import random
from fractions import Fraction

import numpy as np
from hypothesis import strategies as st

from chartensor.builder import LiftShift
from chartensor.exact import Matrix, Vector
from chartensor.tensors import CurvatureTensor, Lifting, TorsionTensor

F = Fraction
J = Matrix([[0, -1], [1, 0]])


# --- hand-built instances -------------------------------------------------

def const_curvature(n: int, c) -> CurvatureTensor:
    """R(u,v)w = c(<v,w>u - <u,w>v) entered component by component."""
    pairs = {}
    for i in range(n):
        for j in range(i + 1, n):
            rows = [[F(0)] * n for _ in range(n)]
            rows[i][j] = F(c)
            rows[j][i] = F(-c)
            pairs[(i, j)] = Matrix(rows)
    return CurvatureTensor.from_pairs(n, pairs)


def cross_list(x, y):
    return [x[1] * y[2] - x[2] * y[1], x[2] * y[0] - x[0] * y[2], x[0] * y[1] - x[1] * y[0]]


def ad_list(x):
    """Columns are x cross e_k."""
    cols = [cross_list(x, [int(k == m) for m in range(3)]) for k in range(3)]
    return [[F(cols[c][r]) for c in range(3)] for r in range(3)]


def ad3(x) -> Matrix:
    return Matrix(ad_list(x))


def unit3(i):
    return [int(i == k) for k in range(3)]


def cross_torsion(sign) -> TorsionTensor:
    return TorsionTensor.from_pairs(3, {
        (i, j): Vector([sign * v for v in cross_list(unit3(i), unit3(j))])
        for i in range(3) for j in range(i + 1, 3)})


def half_ad_lifting() -> Lifting:
    return Lifting([ad3(unit3(i)) * F(1, 2) for i in range(3)], 3)


def quarter_ad_curvature(sign) -> CurvatureTensor:
    """sign * ad(X x Y) / 4."""
    return CurvatureTensor.from_pairs(3, {
        (i, j): ad3(cross_list(unit3(i), unit3(j))) * F(sign, 4)
        for i in range(3) for j in range(i + 1, 3)})


# --- random exact data ----------------------------------------------------

def rand_q(rng: random.Random, span: int = 5, den: int = 4) -> Fraction:
    return F(rng.randint(-span, span), rng.randint(1, den))


def rand_matrix(rng: random.Random, n: int, **kw) -> Matrix:
    return Matrix([[rand_q(rng, **kw) for _ in range(n)] for _ in range(n)])


def rand_vector(rng: random.Random, n: int, **kw) -> Vector:
    return Vector([rand_q(rng, **kw) for _ in range(n)])


def rand_lifting(rng: random.Random, n: int) -> Lifting:
    return Lifting([rand_matrix(rng, n) for _ in range(n)], n)


def rand_torsion(rng: random.Random, n: int) -> TorsionTensor:
    return TorsionTensor.from_pairs(n, {(i, j): rand_vector(rng, n)
                                        for i in range(n) for j in range(i + 1, n)})


def rand_curvature(rng: random.Random, n: int) -> CurvatureTensor:
    return CurvatureTensor.from_pairs(n, {(i, j): rand_matrix(rng, n)
                                          for i in range(n) for j in range(i + 1, n)})


def rand_shift(rng: random.Random, n: int, k: int) -> LiftShift:
    return LiftShift([[rand_q(rng) for _ in range(k)] for _ in range(n)])


def rand_invertible(rng: random.Random, n: int) -> Matrix:
    while True:
        m = rand_matrix(rng, n)
        if m.determinant() != 0:
            return m


# --- hypothesis strategies ------------------------------------------------

rationals = st.fractions(min_value=-6, max_value=6, max_denominator=6)


def matrices(n: int):
    return st.lists(st.lists(rationals, min_size=n, max_size=n), min_size=n, max_size=n).map(Matrix)


def vectors(n: int):
    return st.lists(rationals, min_size=n, max_size=n).map(Vector)


# --- exact oracle for the torsion reduction ------------------------------

def brute_remove(T, lam, R, n):
    """Index-loop expansion of the reduction on plain lists.

    T[i][j][a], lam[i][a][b], R[(i,j)][a][b]; returns (lam_red, R_red).
    """
    s0 = [[[F(T[i][b][a], 2) for b in range(n)] for a in range(n)] for i in range(n)]
    lr = [[[F(lam[i][a][b]) - s0[i][a][b] for b in range(n)] for a in range(n)] for i in range(n)]

    def mm(A, B):
        return [[sum(A[a][c] * B[c][b] for c in range(n)) for b in range(n)] for a in range(n)]

    def br(A, B):
        P, Q = mm(A, B), mm(B, A)
        return [[P[a][b] - Q[a][b] for b in range(n)] for a in range(n)]

    def s_of(v):
        return [[sum(v[i] * s0[i][a][b] for i in range(n)) for b in range(n)] for a in range(n)]

    def D(L, j):  # [L, s0 e_j] - s0(L e_j)
        Le = [L[a][j] for a in range(n)]
        A, B = br(L, s0[j]), s_of(Le)
        return [[A[a][b] - B[a][b] for b in range(n)] for a in range(n)]

    Rr = {}
    for i in range(n):
        for j in range(i + 1, n):
            d1, d2, c = D(lr[i], j), D(lr[j], i), br(s0[i], s0[j])
            Rr[(i, j)] = [[F(R[(i, j)][a][b]) - d1[a][b] + d2[a][b] - c[a][b] for b in range(n)] for a in range(n)]
    return lr, Rr


# --- float oracles ----------------------------------------------------------

def float_killing_inertia(constants, tol: float = 1e-9) -> tuple[int, int, int]:
    """Inertia of trace(ad_a ad_b) via numpy eigenvalues."""
    c = np.array([[[float(x) for x in v] for v in row] for row in constants])
    d = c.shape[0]
    ads = [c[a].T for a in range(d)]  # column b of ad_a is [a, b]
    B = np.array([[np.trace(ads[a] @ ads[b]) for b in range(d)] for a in range(d)])
    ev = np.linalg.eigvalsh(B)
    return int((ev > tol).sum()), int((ev < -tol).sum()), int((abs(ev) <= tol).sum())


def classical_constants(name: str):
    """Hand tables: so3 ([e_i,e_j] = e_i x e_j) and sl2 ([h,x]=2x, [h,y]=-2y, [x,y]=h)."""
    if name == "so3":
        return [[cross_list(unit3(a), unit3(b)) for b in range(3)] for a in range(3)]
    if name == "sl2":
        c = [[[0] * 3 for _ in range(3)] for _ in range(3)]
        c[0][1] = [0, 2, 0]
        c[1][0] = [0, -2, 0]
        c[0][2] = [0, 0, -2]
        c[2][0] = [0, 0, 2]
        c[1][2] = [1, 0, 0]
        c[2][1] = [-1, 0, 0]
        return c
    raise KeyError(name)
