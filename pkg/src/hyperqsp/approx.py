"""Orthonormal polynomial bases and least-squares fits on [1, X].

Inner products use unit weight and Gauss-Legendre quadrature. The basis is
built by modified Gram-Schmidt (with one re-orthogonalization pass) from
Chebyshev polynomials of the variable mapped from [1, X] onto [-1, 1]. This
spans the same nested spaces as T_k(x), so the orthonormal polynomials are
the same, but the raw T_k(x) are nearly dependent on [1, X]; their
Gram-Schmidt pivots are reported separately as ``raw_pivots``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Sequence

import numpy as np
from numpy.polynomial import chebyshev as C
from numpy.polynomial import legendre as L

from . import config
from .errors import DomainError
from .polyring import EVEN, NONE, ODD, ParityPoly, eval_poly, parity_of

PIVOT_TOL = 1e-12
PARITY_CHECK_TOL = 1e-6
MONOTONE_SLACK = 1e-12


@dataclass(frozen=True)
class FitDomain:
    x_max: float
    quadrature_order: int

    def __post_init__(self):
        if not self.x_max > 1.0:
            raise DomainError("x_max must exceed 1")
        if self.x_max > config.x_max() * (1 + 1e-12):
            raise DomainError(f"x_max {self.x_max} exceeds cosh(beta_max) = {config.x_max():.6g}")
        if self.quadrature_order < 2:
            raise DomainError("quadrature_order must be at least 2")

    @classmethod
    def for_degree(cls, max_degree: int, x_max: float = 2.0) -> "FitDomain":
        return cls(x_max, 2 * max_degree + 8)

    def nodes_weights(self) -> tuple[np.ndarray, np.ndarray]:
        t, w = L.leggauss(self.quadrature_order)
        half = 0.5 * (self.x_max - 1.0)
        return 1.0 + half * (t + 1.0), w * half

    def max_exact_degree(self) -> int:
        return 2 * self.quadrature_order - 1

    def require_degree(self, max_degree: int):
        if self.quadrature_order < 2 * max_degree + 1:
            raise DomainError(
                f"quadrature order {self.quadrature_order} < 2*{max_degree}+1 needed for degree {max_degree}"
            )


def _values(f, x: np.ndarray) -> np.ndarray:
    if isinstance(f, ParityPoly):
        return np.asarray(eval_poly(f, x), dtype=complex)
    if callable(f):
        return np.asarray([f(v) for v in x], dtype=complex) if not _vectorized(f, x) else np.asarray(f(x), dtype=complex)
    arr = np.asarray(f, dtype=complex)
    if arr.shape != x.shape:
        raise DomainError(f"expected {x.size} samples at the quadrature nodes, got shape {arr.shape}")
    return arr


def _vectorized(f, x) -> bool:
    try:
        out = np.asarray(f(x))
    except Exception:
        return False
    return out.shape == x.shape


def inner_product(f, g, dom: FitDomain):
    """integral over [1, X] of f conj(g), by Gauss-Legendre quadrature.

    Polynomial arguments are checked against the exactness budget of the rule.
    """
    if isinstance(f, ParityPoly) and isinstance(g, ParityPoly):
        if f.degree + g.degree > dom.max_exact_degree():
            raise DomainError(
                f"quadrature order {dom.quadrature_order} cannot integrate degree {f.degree + g.degree} exactly"
            )
    x, w = dom.nodes_weights()
    val = complex(np.sum(w * _values(f, x) * np.conj(_values(g, x))))
    return val.real if abs(val.imag) <= 1e-14 * max(1.0, abs(val)) else val


@dataclass(frozen=True, eq=False)
class OrthoBasis:
    elements: list
    gram_defect: float
    pivots: np.ndarray
    raw_pivots: np.ndarray
    domain: FitDomain
    values: np.ndarray = field(repr=False)  # element values at the quadrature nodes, one row each

    @property
    def max_degree(self) -> int:
        return len(self.elements) - 1

    @property
    def min_pivot(self) -> float:
        return float(np.min(self.pivots))

    def reconstruct(self, coeffs: Sequence[float]) -> np.ndarray:
        """Values of sum_k c_k e_k at the quadrature nodes."""
        c = np.asarray(coeffs)
        return c @ self.values[: len(c)]


def _mgs(values: np.ndarray, coeffs: np.ndarray, w: np.ndarray, passes: int = 2):
    """Modified Gram-Schmidt on rows of ``values`` in the weighted inner product.

    ``coeffs`` rows are transformed alongside. Returns (Q_values, Q_coeffs,
    relative pivots).
    """
    qv = np.array(values, dtype=float)
    qc = np.array(coeffs, dtype=float)
    m = qv.shape[0]
    pivots = np.zeros(m)
    for k in range(m):
        v, c = qv[k].copy(), qc[k].copy()
        start = math.sqrt(np.sum(w * v * v))
        for _ in range(passes):
            for j in range(k):
                r = np.sum(w * v * qv[j])
                v -= r * qv[j]
                c -= r * qc[j]
        norm = math.sqrt(np.sum(w * v * v))
        pivots[k] = norm / start if start > 0 else 0.0
        if pivots[k] < PIVOT_TOL:
            raise DomainError(f"basis numerically degenerate at degree {k} (pivot {pivots[k]:.3g})")
        qv[k], qc[k] = v / norm, c / norm
    return qv, qc, pivots


def gram_schmidt_basis(max_degree: int, dom: FitDomain) -> OrthoBasis:
    """Orthonormal polynomials of degree 0..max_degree on [1, X]."""
    if not (0 <= max_degree <= 40):
        raise DomainError("max_degree must lie in 0..40")
    dom.require_degree(max_degree)
    x, w = dom.nodes_weights()
    X = dom.x_max
    t = (2.0 * x - (1.0 + X)) / (X - 1.0)
    m = max_degree + 1
    values = C.chebvander(t, max_degree).T
    qv, qc, pivots = _mgs(values, np.eye(m), w)
    elements = [ParityPoly(qc[k, : k + 1], NONE, domain=(1.0, X), trim=False) for k in range(m)]
    gram = (qv * w) @ qv.T
    gram_defect = float(np.max(np.abs(gram - np.eye(m))))
    # pivots of the unmapped family T_k(x): r_kk = 2^{k-1} / lead_x(e_k), relative to ||T_k(x)||
    raw_norms = np.sqrt(np.sum(w * C.chebvander(x, max_degree).T ** 2, axis=1))
    scale = 2.0 / (X - 1.0)
    raw = np.array([1.0 / (abs(qc[k, k]) * scale**k) for k in range(m)]) / raw_norms
    return OrthoBasis(elements, gram_defect, pivots, raw, dom, qv)


def generalized_coeffs(target, basis: OrthoBasis) -> np.ndarray:
    """c_k = <target, e_k>; the target is a callable, a ParityPoly or node samples."""
    x, w = basis.domain.nodes_weights()
    y = _values(target, x)
    c = basis.values @ (w * y)
    return c.real if np.max(np.abs(c.imag), initial=0.0) <= 1e-14 * max(1.0, np.max(np.abs(c))) else c


def parseval_defect(coeffs: Sequence[float], target, dom: FitDomain) -> float:
    """| sum c_k^2 - integral |target|^2 |."""
    x, w = dom.nodes_weights()
    y = _values(target, x)
    c = np.asarray(coeffs)
    return float(abs(np.sum(np.abs(c) ** 2) - np.sum(w * np.abs(y) ** 2)))


@dataclass(frozen=True, eq=False)
class FitResult:
    poly: ParityPoly
    max_degree: int
    parity: str
    coeffs: np.ndarray
    residual_l2: float
    residual_sup: float
    representation_error: float
    pivots: np.ndarray


def _parity_basis(x: np.ndarray, max_degree: int, parity: str, X: float) -> np.ndarray:
    """Rows x^p T_k(s(x^2)) with s mapping [1, X^2] onto [-1, 1]."""
    odd = parity == ODD
    kmax = (max_degree - 1) // 2 if odd else max_degree // 2
    if kmax < 0:
        raise DomainError(f"no {parity} polynomials of degree <= {max_degree}")
    s = (2.0 * x * x - (1.0 + X * X)) / (X * X - 1.0)
    rows = C.chebvander(s, kmax).T
    return rows * x if odd else rows


def fit_target(target, max_degree: int, parity: str, dom: FitDomain) -> FitResult:
    """Least-squares fit by a polynomial of given parity and degree on [1, X].

    Callable targets are checked for the parity on the mirrored nodes;
    sample arrays are taken to extend with the requested parity. The fitted
    polynomial is returned in Chebyshev-T coefficients of x so that it can be
    handed to synthesis; ``representation_error`` measures how much that
    conversion changes the values on the grid.
    """
    if parity not in (EVEN, ODD):
        raise DomainError("parity must be 'even' or 'odd'")
    if max_degree < 0:
        raise DomainError("max_degree must be non-negative")
    dom.require_degree(max_degree)
    x, w = dom.nodes_weights()
    y = _values(target, x)
    if np.max(np.abs(y.imag)) > 1e-12 * max(1.0, np.max(np.abs(y))):
        raise DomainError("fit_target expects a real target")
    y = y.real
    if callable(target) or isinstance(target, ParityPoly):
        mirrored = _values(target, -x).real
        sign = 1.0 if parity == EVEN else -1.0
        bad = np.max(np.abs(mirrored - sign * y))
        if bad > PARITY_CHECK_TOL * max(1.0, np.max(np.abs(y))):
            raise DomainError(f"target does not have {parity} parity (mismatch {bad:.3g})")
    rows = _parity_basis(x, max_degree, parity, dom.x_max)
    m = rows.shape[0]
    qv, qc, pivots = _mgs(rows, np.eye(m), w)
    coeffs = qv @ (w * y)
    fitted = coeffs @ qv
    resid = y - fitted
    l2 = math.sqrt(float(np.sum(w * resid**2)))
    sup = float(np.max(np.abs(resid)))
    # express the fit in Chebyshev-T coefficients of x by interpolation on [-1, 1]
    basis_coeffs = coeffs @ qc
    deg = max_degree if parity_of(max_degree) == parity else max_degree - 1
    nodes = np.cos(np.pi * (np.arange(deg + 1) + 0.5) / (deg + 1))
    vals = basis_coeffs @ _parity_basis(nodes, deg, parity, dom.x_max)
    cheb = C.chebfit(nodes, vals, deg)
    cheb[(1 if parity == EVEN else 0)::2] = 0.0  # zero in exact arithmetic
    poly = ParityPoly(cheb, parity, trim=False) if deg >= 0 else ParityPoly([0.0], parity)
    rep = float(np.max(np.abs(C.chebval(x, poly.to_complex().real) - fitted))) / max(1.0, float(np.max(np.abs(fitted))))
    return FitResult(poly, max_degree, parity, coeffs, l2, sup, rep, pivots)


def residual_table(target, degrees: Sequence[int], parity: str, x_max: float = 2.0) -> list[tuple[int, float, float]]:
    """(degree, L2 residual, sup residual) rows on one shared quadrature grid."""
    dom = FitDomain.for_degree(max(degrees), x_max)
    rows = []
    for d in degrees:
        r = fit_target(target, d, parity, dom)
        rows.append((d, r.residual_l2, r.residual_sup))
    return rows


def is_monotone_non_increasing(values: Sequence[float], slack: float = MONOTONE_SLACK) -> bool:
    """True when each value is at most the previous one plus a relative slack."""
    v = list(values)
    return all(b <= a + slack * max(1.0, abs(a)) for a, b in zip(v, v[1:]))
