import random
from fractions import Fraction as F
from itertools import combinations

import pytest

from chartensor.builder import (
    BuildError,
    LieAlgebraStructure,
    LiftShift,
    build_bracket,
    check_jacobi,
    derived_series,
    killing_form,
    killing_inertia,
    lambda_bar_equivariance,
    lifting_shift_isomorphism,
)
from chartensor.conditions import run_certificate
from chartensor.exact import Matrix, mat_bracket
from chartensor.io import corpus_names, load_corpus
from chartensor.subalgebra import LieSubalgebra, so_basis
from chartensor.tensors import CharTriple, CurvatureTensor, Lifting, TorsionTensor
from chartensor.torsion import remove_torsion
from random_instances import random_certified_triple
from support import (
    J,
    classical_constants,
    const_curvature,
    cross_list,
    float_killing_inertia,
    rand_shift,
    unit3,
)


def _certified(name):
    inst = load_corpus(name)
    rep = run_certificate(inst.subalgebra(), inst.triple(), inst.generators())
    return inst, rep.passed


def _built(name):
    inst = load_corpus(name)
    t = remove_torsion(inst.triple())
    return inst.subalgebra(), t, build_bracket(inst.subalgebra(), t.R, t.lam)


def table(A):
    """Nonzero brackets a<b as {(label, label): {label: coeff}}."""
    lab = A.labels
    out = {}
    for a, b in combinations(range(A.dim), 2):
        v = {lab[c]: x for c, x in enumerate(A.constants[a][b]) if x}
        if v:
            out[(lab[a], lab[b])] = v
    return out


def test_flat_builds_euclidean_algebra():
    _, _, A = _built("flat_e2")
    assert table(A) == {("h1", "e1"): {"e2": 1}, ("h1", "e2"): {"e1": -1}}


def test_sphere_builds_so3():
    _, _, A = _built("sphere_s2")
    assert table(A) == {("h1", "e1"): {"e2": 1}, ("h1", "e2"): {"e1": -1}, ("e1", "e2"): {"h1": 1}}
    assert killing_inertia(A) == (0, 3, 0)


def test_hyperbolic_builds_sl2():
    _, _, A = _built("hyperbolic_h2")
    assert table(A)[("e1", "e2")] == {"h1": -1}
    assert killing_inertia(A) == (2, 1, 0)


def test_liegroup_builds_cross_product():
    _, _, A = _built("liegroup_so3_minus_connection")
    for a in range(3):
        for b in range(3):
            assert list(A.constants[a][b]) == cross_list(unit3(a), unit3(b))


def test_abelian_and_identification():
    _, _, A = _built("abelian_r2")
    assert check_jacobi(A).passed
    assert killing_inertia(A) == (0, 0, 2)
    assert derived_series(A) == [2, 0]
    _, _, E = _built("flat_e2")
    assert derived_series(E) == [3, 2, 0]


def test_corrupted_e2_jacobi_witness():
    _, _, A = _built("flat_e2")
    c = [list(row) for row in A.constants]
    # add [e1, e2] = e1
    c[1][2] = (F(0), F(1), F(0))
    c[2][1] = (F(0), F(-1), F(0))
    bad = LieAlgebraStructure(A.n, A.h_basis, tuple(tuple(r) for r in c))
    res = check_jacobi(bad)
    assert not res.passed
    assert res.witness["labels"] == ["h1", "e1", "e2"]


def test_build_rejects_uncertified_data():
    h = LieSubalgebra([J])
    bad_R = CurvatureTensor.from_pairs(2, {(0, 1): Matrix([[1, 1], [-1, 1]])})
    with pytest.raises(BuildError) as exc:
        build_bracket(h, bad_R, Lifting.zero(2))
    assert exc.value.condition == "curvature_relation"
    bad_lam = Lifting([Matrix([[1, 0], [0, 0]]), Matrix.zero(2)])
    with pytest.raises(BuildError) as exc:
        build_bracket(h, CurvatureTensor.zero(2), bad_lam)
    assert exc.value.condition == "inf_invariance_lambda"


def structural_checks(h, lam, A):
    k, d = h.dim, A.dim
    for a in range(d):
        for b in range(d):
            assert A.constants[a][b] == tuple(-x for x in A.constants[b][a])
    for a, b in combinations(range(k), 2):
        assert h.combine(A.constants[a][b][:k]) == mat_bracket(h.basis[a], h.basis[b])
        assert not any(A.constants[a][b][k:])
    for a in range(k):
        for i in range(A.n):
            col = h.basis[a].column(i)
            assert A.constants[a][k + i][k:] == col.entries


@pytest.mark.parametrize("name", corpus_names())
def test_conditions_imply_jacobi_on_corpus(name):
    inst, ok = _certified(name)
    if not ok:
        pytest.skip("negative control")
    h, t, A = _built(name)
    assert check_jacobi(A).passed
    structural_checks(h, t.lam, A)
    assert lambda_bar_equivariance(h, t.lam, A).passed
    assert lambda_bar_equivariance(h, t.lam).passed


def _perturbations():
    """At least 50 certified instances beyond the corpus."""
    cases = []
    for n in (2, 3, 4):
        h = LieSubalgebra(so_basis(n))
        for num in (-6, -3, -2, -1, 1, 2, 4, 5):
            cases.append((h, CharTriple(const_curvature(n, F(num, 3)), TorsionTensor.zero(n), Lifting.zero(n))))
    so2 = LieSubalgebra([so_basis(3)[0]])
    # so(3) and the scalars force lambda into h; so(2) in gl(3) does not
    hs = [so2] * 8 + [LieSubalgebra(so_basis(3))] * 2 + [LieSubalgebra([Matrix.identity(3)])] * 2
    for idx, h in enumerate(hs):
        rng = random.Random(idx)
        t = random_certified_triple(h, rng)
        if t is None:
            continue
        cases.append((h, t))
        # h-valued shifts of the lifting keep every condition
        for _ in range(4):
            cases.append((h, CharTriple(t.R, t.T, t.lam + rand_shift(rng, 3, h.dim).matrices(h))))
    return cases


def test_conditions_imply_jacobi_on_perturbations():
    cases = _perturbations()
    assert len(cases) >= 50
    nontrivial_lambda = 0
    for h, t in cases:
        assert run_certificate(h, t).passed
        A = build_bracket(h, t.R, t.lam)
        assert check_jacobi(A).passed
        structural_checks(h, t.lam, A)
        nontrivial_lambda += not all(h.contains(m) for m in t.lam.components)
    # the randomized part must exercise liftings that are not h-valued
    assert nontrivial_lambda >= 5


def test_sphere_shift_example():
    h, t, _ = _built("sphere_s2")
    assert lifting_shift_isomorphism(h, t.R, t.lam, LiftShift([[1], [0]])).passed
    assert lifting_shift_isomorphism(h, t.R, t.lam, LiftShift.zero(2, 1)).passed


@pytest.mark.parametrize("name", ["flat_e2", "sphere_s2", "hyperbolic_h2", "sphere_s3"])
def test_random_shifts_are_isomorphisms(name):
    h, t, A = _built(name)
    base = killing_inertia(A)
    rng = random.Random(f"phi-{name}")
    for _ in range(10):
        delta = rand_shift(rng, t.n, h.dim)
        assert lifting_shift_isomorphism(h, t.R, t.lam, delta).passed
        B = build_bracket(h, t.R, t.lam - delta.matrices(h))
        assert killing_inertia(B) == base


def test_lambda_bar_equivariance_trivial_h():
    assert lambda_bar_equivariance(LieSubalgebra([], 3), Lifting.zero(3)).passed


def test_killing_form_symmetric_and_matches_float_oracle():
    for name in ("sphere_s2", "hyperbolic_h2", "sphere_s3", "flat_e2"):
        _, _, A = _built(name)
        assert killing_form(A).is_symmetric()
        assert killing_inertia(A) == float_killing_inertia(A.constants)


def test_classical_oracle_tables():
    assert float_killing_inertia(classical_constants("so3")) == (0, 3, 0)
    assert float_killing_inertia(classical_constants("sl2")) == (2, 1, 0)


def test_json_shape():
    _, _, A = _built("flat_e2")
    doc = A.to_json()
    assert doc["dim"] == 3 and doc["basis"] == ["h1", "e1", "e2"]
    assert doc["structure_constants"][0][1] == [0, 0, 1]
