"""Passing between torsion-free and torsioned characteristic data.

A connection with torsion ``tor`` is obtained from a symmetric one by adding
``s0(X) = tor(X, .)/2``.  At the level of constant tensors this changes

* the lifting:   lambda'(X) = lambda(X) + s0(X)
* the curvature: R'(X,Y) = R(X,Y) + (D_{lambda(X)} s0)(Y) - (D_{lambda(Y)} s0)(X) + [s0 X, s0 Y]

with ``(D_L s0)(Y) = [L, s0(Y)] - s0(L Y)``.  ``remove_torsion`` inverts this.
"""

from __future__ import annotations

from fractions import Fraction

from .exact import Matrix, Vector, mat_bracket
from .subalgebra import LieSubalgebra
from .tensors import (
    CharTriple,
    CurvatureTensor,
    Lifting,
    TorsionTensor,
    derivation_action_on_lifting,
    derivation_action_on_T,
    eval_T,
)

FACTOR_NOTE = ("torsion convention: connection shifted by tor/2 so that the new torsion equals tor; "
               "the correction terms carry the factor 1/2 throughout")


class TorsionPreconditionError(ValueError):
    def __init__(self, message: str, witness: dict | None = None):
        super().__init__(message)
        self.witness = witness


def half_torsion(tor: TorsionTensor) -> Lifting:
    """s0(X) = tor(X, .)/2 as a gl(n)-valued linear map."""
    n = tor.n
    e = [Vector.basis(n, i) for i in range(n)]
    half = Fraction(1, 2)
    return Lifting(
        [Matrix.from_columns([eval_T(tor, e[i], e[j]) * half for j in range(n)]) for i in range(n)], n)


def curvature_correction(lam: Lifting, s0: Lifting) -> CurvatureTensor:
    """(D_{lambda X} s0)(Y) - (D_{lambda Y} s0)(X) + [s0 X, s0 Y]."""
    n = lam.n
    D = [derivation_action_on_lifting(lam[i], s0) for i in range(n)]
    return CurvatureTensor.from_pairs(n, {
        (i, j): D[i][j] - D[j][i] + mat_bracket(s0[i], s0[j])
        for i in range(n) for j in range(i + 1, n)
    })


def _check_invariant(tor: TorsionTensor, h: LieSubalgebra | None) -> None:
    if h is None:
        return
    for a, L in enumerate(h.basis):
        for (i, j), v in derivation_action_on_T(L, tor).items():
            if not v.is_zero():
                raise TorsionPreconditionError(
                    f"torsion is not invariant under h basis element {a} on pair ({i}, {j})",
                    {"L": a, "u": i, "v": j, "value": v.to_json()})


def add_torsion(t: CharTriple, tor: TorsionTensor, h: LieSubalgebra | None = None,
                check: bool = True) -> CharTriple:
    if not t.T.is_zero():
        raise TorsionPreconditionError("add_torsion expects torsion-free input")
    if check:
        _check_invariant(tor, h)
    s0 = half_torsion(tor)
    return CharTriple(t.R + curvature_correction(t.lam, s0), tor, t.lam + s0)


def remove_torsion(t: CharTriple, h: LieSubalgebra | None = None, check: bool = True) -> CharTriple:
    if check:
        _check_invariant(t.T, h)
    s0 = half_torsion(t.T)
    lam = t.lam - s0
    return CharTriple(t.R - curvature_correction(lam, s0), TorsionTensor.zero(t.n), lam)
