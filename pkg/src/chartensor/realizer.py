"""Floating-point realization of the local model.

The synthesized algebra ``a`` is realized by its adjoint matrices; the model
manifold is the chart ``t -> exp(sum t_i ad_{e_i})`` through the identity.
The connection form is the left-invariant extension of ``lambda_bar``
restricted to the chart, and its curvature is compared with ``R`` by central
finite differences.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np
from scipy.linalg import expm, expm_frechet

from .builder import LieAlgebraStructure
from .exact import solve_linear
from .subalgebra import LieSubalgebra
from .tensors import CurvatureTensor, Lifting


class UnsupportedRealization(Exception):
    """The adjoint representation is not faithful (nontrivial center)."""

    def __init__(self, center_dim: int):
        super().__init__(f"unsupported: nontrivial center of dimension {center_dim}")
        self.center_dim = center_dim


@dataclass
class RealizationConfig:
    fd_step: float = 1e-4
    tolerance: float = 1e-6
    sample_points: list | None = None
    seed: int = 0
    n_random_points: int = 6
    radius: float = 0.1

    def __post_init__(self):
        if not self.fd_step > 0:
            raise ValueError("fd_step must be positive")
        if not self.tolerance > 0:
            raise ValueError("tolerance must be positive")

    def points(self, n: int) -> list[np.ndarray]:
        if self.sample_points is not None:
            pts = [np.asarray(p, dtype=float) for p in self.sample_points]
            for p in pts:
                if p.shape != (n,):
                    raise ValueError(f"sample point {p.tolist()} does not have {n} coordinates")
            return pts
        rng = np.random.default_rng(self.seed)
        pts = [np.zeros(n)]
        for _ in range(self.n_random_points):
            d = rng.normal(size=n)
            d /= np.linalg.norm(d)
            pts.append(d * self.radius * rng.uniform(0.0, 1.0))
        return pts


def _to_float(m) -> np.ndarray:
    return np.array([[float(x) for x in row] for row in m.rows])


def center(A: LieAlgebraStructure) -> list:
    """Exact basis of the center of ``a``."""
    d = A.dim
    # x in the center iff sum_a x_a c[a][b][c] = 0 for all b, c
    eqs = [[A.constants[a][b][c] for a in range(d)] for b in range(d) for c in range(d)]
    sol = solve_linear(eqs, [Fraction(0)] * len(eqs), ncols=d)
    return list(sol.kernel)


def adjoint_realization(A: LieAlgebraStructure) -> list[np.ndarray]:
    z = center(A)
    if z:
        raise UnsupportedRealization(len(z))
    return [_to_float(A.ad(a)) for a in range(A.dim)]


class ModelChart:
    """Exponential chart of the adjoint group and the model connection form."""

    def __init__(self, A: LieAlgebraStructure, lam: Lifting):
        self.A = A
        self.k, self.n = A.k, A.n
        self.ads = adjoint_realization(A)
        d = A.dim
        self._stack = np.stack([m.reshape(-1) for m in self.ads], axis=1)  # (d*d, d)
        self._pinv = np.linalg.pinv(self._stack)
        self.h = np.array([_to_float(b) for b in A.h_basis]).reshape(self.k, self.n, self.n)
        self.lam = np.array([_to_float(m) for m in lam.components]).reshape(self.n, self.n, self.n)
        self._m_ads = self.ads[self.k:]
        assert len(self._m_ads) == self.n and d == self.k + self.n

    def _ad_xi(self, t) -> np.ndarray:
        return sum(ti * m for ti, m in zip(t, self._m_ads))

    def maurer_cartan(self, t) -> np.ndarray:
        """Row i: coordinates in ``a`` of x(t)^{-1} d x/dt_i."""
        X = self._ad_xi(t)
        rows = []
        g = expm(X)
        if not np.all(np.isfinite(g)):
            raise FloatingPointError("matrix exponential overflowed; reduce the chart radius")
        for E in self._m_ads:
            _, dg = expm_frechet(X, E)
            M = np.linalg.solve(g, dg)
            rows.append(self._pinv @ M.reshape(-1))
        return np.array(rows)

    def lambda_bar(self, eta: np.ndarray) -> np.ndarray:
        return (np.tensordot(eta[:self.k], self.h, axes=1) if self.k else 0.0) + \
            np.tensordot(eta[self.k:], self.lam, axes=1)

    def omega(self, t) -> np.ndarray:
        """omega_bar(d/dt_i) for each i, shape (n, n, n)."""
        return np.array([self.lambda_bar(eta) for eta in self.maurer_cartan(t)])

    def kappa(self, t) -> np.ndarray:
        """Row i: m-projection of x^{-1} d x/dt_i (the coframe)."""
        return self.maurer_cartan(t)[:, self.k:]

    def curvature(self, t, step: float) -> np.ndarray:
        """Omega(d_i, d_j) = d_i w_j - d_j w_i + [w_i, w_j] with central differences."""
        t = np.asarray(t, dtype=float)
        n = self.n
        w = self.omega(t)
        dw = np.empty((n, n, n, n))  # dw[i, j] = d/dt_i of omega_j
        for i in range(n):
            e = np.zeros(n)
            e[i] = step
            dw[i] = (self.omega(t + e) - self.omega(t - e)) / (2 * step)
        out = np.zeros((n, n, n, n))
        for i, j in combinations(range(n), 2):
            out[i, j] = dw[i, j] - dw[j, i] + w[i] @ w[j] - w[j] @ w[i]
            out[j, i] = -out[i, j]
        return out


def _R_float(R: CurvatureTensor) -> np.ndarray:
    n = R.n
    out = np.zeros((n, n, n, n))
    for (i, j), m in R.items():
        out[i, j] = _to_float(m)
        out[j, i] = -out[i, j]
    return out


def expected_curvature(R: CurvatureTensor, kappa: np.ndarray) -> np.ndarray:
    """R(kappa d_i, kappa d_j) for all i, j."""
    Rf = _R_float(R)
    return np.einsum("ip,jq,pqab->ijab", kappa, kappa, Rf)


@dataclass
class PointDeviation:
    index: int
    point: list
    deviation: float
    bound: float

    @property
    def passed(self) -> bool:
        return self.deviation <= self.bound

    def to_json(self) -> dict:
        return {"index": self.index, "point": self.point, "deviation": self.deviation,
                "bound": self.bound, "pass": self.passed}


@dataclass
class FDReport:
    name: str
    points: list = field(default_factory=list)
    fd_step: float | None = None

    @property
    def passed(self) -> bool:
        return all(p.passed for p in self.points)

    @property
    def max_deviation(self) -> float:
        return max((p.deviation for p in self.points), default=0.0)

    def to_json(self) -> dict:
        return {"name": self.name, "pass": self.passed, "fd_step": self.fd_step,
                "max_deviation": self.max_deviation,
                "points": [p.to_json() for p in self.points]}


def _bound(cfg: RealizationConfig, point: np.ndarray) -> float:
    # second-order FD error grows away from the identity
    return cfg.tolerance if not np.any(point) else 10 * cfg.tolerance


def curvature_deviation(chart: ModelChart, R: CurvatureTensor, t, step: float) -> float:
    t = np.asarray(t, dtype=float)
    got = chart.curvature(t, step)
    want = expected_curvature(R, chart.kappa(t))
    return float(np.max(np.abs(got - want))) if got.size else 0.0


def curvature_fd_check(A: LieAlgebraStructure, lam: Lifting, R: CurvatureTensor,
                       cfg: RealizationConfig | None = None) -> FDReport:
    cfg = cfg or RealizationConfig()
    chart = ModelChart(A, lam)
    report = FDReport("curvature", fd_step=cfg.fd_step)
    for idx, p in enumerate(cfg.points(A.n)):
        dev = curvature_deviation(chart, R, p, cfg.fd_step)
        report.points.append(PointDeviation(idx, p.tolist(), dev, _bound(cfg, p)))
    return report


def fd_convergence(A: LieAlgebraStructure, lam: Lifting, R: CurvatureTensor,
                   steps, point=None) -> list[float]:
    """Curvature deviation at one point for each finite-difference step."""
    chart = ModelChart(A, lam)
    point = np.zeros(A.n) if point is None else np.asarray(point, dtype=float)
    return [curvature_deviation(chart, R, point, s) for s in steps]


def _complement_projector(h: LieSubalgebra) -> np.ndarray:
    n2 = h.n * h.n
    if h.dim == 0:
        return np.eye(n2)
    B = np.array([[float(x) for x in b.flat()] for b in h.basis]).T  # (n2, k)
    Q, _ = np.linalg.qr(B)
    return np.eye(n2) - Q @ Q.T


def inner_torsion_fd_check(A: LieAlgebraStructure, lam: Lifting, h: LieSubalgebra,
                           cfg: RealizationConfig | None = None) -> FDReport:
    """omega_bar(X) - lambda(kappa X) must lie in h at every sample point."""
    cfg = cfg or RealizationConfig()
    chart = ModelChart(A, lam)
    P = _complement_projector(h)
    report = FDReport("inner_torsion", fd_step=None)
    for idx, p in enumerate(cfg.points(A.n)):
        eta = chart.maurer_cartan(p)
        worst = 0.0
        for row in eta:
            w = chart.lambda_bar(row)
            res = w - np.tensordot(row[chart.k:], chart.lam, axes=1)
            worst = max(worst, float(np.linalg.norm(P @ res.reshape(-1))))
        report.points.append(PointDeviation(idx, p.tolist(), worst, cfg.tolerance))
    return report
