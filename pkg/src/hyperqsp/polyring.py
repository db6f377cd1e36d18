"""Parity-tagged Chebyshev polynomials and transfer pairs.

A protocol of n boosts in the boost convention is

    S(x) = [[P(x), Q(x) s], [conj(Q)(x) s, conj(P)(x)]],   s = sqrt(x^2 - 1),

with P of degree n and parity n mod 2, Q of degree n - 1 and the opposite
parity, and |P|^2 - (x^2 - 1)|Q|^2 = 1. Coefficients are stored in the
Chebyshev-T basis. Conjugation is coefficientwise since x is real.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import mpmath
import numpy as np
from numpy.polynomial import chebyshev as C

from . import config
from .algebra import BOOST, PhaseList, as_phase_list, precision
from .errors import DomainError, InvariantError

EVEN, ODD, NONE = "even", "odd", "none"
PARITIES = (EVEN, ODD, NONE)

# x^2 - 1 = (T_2 - T_0) / 2
X2M1 = np.array([-0.5, 0.0, 0.5])


def parity_of(n: int) -> str:
    return EVEN if n % 2 == 0 else ODD


def _as_coeffs(coeffs, dps):
    if dps:
        with precision(dps):
            return np.array([mpmath.mpc(c) for c in np.atleast_1d(coeffs)], dtype=object)
    return np.atleast_1d(np.asarray(coeffs, dtype=complex)).copy()


def _abs(arr) -> np.ndarray:
    return np.array([float(abs(c)) for c in arr]) if arr.dtype == object else np.abs(arr)


def conj_coeffs(arr):
    if arr.dtype == object:
        return np.array([mpmath.conj(c) for c in arr], dtype=object)
    return np.conj(arr)


def infer_parity(coeffs, tol: float = config.PARITY_TOL) -> str:
    mags = _abs(np.asarray(coeffs))
    scale = mags.max() if mags.size else 0.0
    if scale == 0.0:
        return EVEN
    if np.all(mags[1::2] <= tol * scale):
        return EVEN
    if np.all(mags[0::2] <= tol * scale):
        return ODD
    return NONE


@dataclass(frozen=True, eq=False)
class ParityPoly:
    """Polynomial in Chebyshev-T coefficients with a declared parity.

    ``domain`` is the interval mapped onto [-1, 1] before the Chebyshev
    series is evaluated; the default is the identity map.
    """

    coeffs: np.ndarray
    parity: str = NONE
    domain: tuple = (-1.0, 1.0)
    dps: int | None = None
    trim: bool = field(default=True, repr=False)

    def __post_init__(self):
        if self.parity not in PARITIES:
            raise DomainError(f"unknown parity {self.parity!r}")
        c = _as_coeffs(self.coeffs, self.dps)
        mags = _abs(c)
        scale = mags.max() if mags.size else 0.0
        if self.parity != NONE and tuple(self.domain) == (-1.0, 1.0):
            wrong = 1 if self.parity == EVEN else 0
            bad = mags[wrong::2]
            if bad.size and scale > 0 and bad.max() > config.PARITY_TOL * scale:
                raise DomainError(
                    f"coefficients contradict declared {self.parity} parity "
                    f"(stray magnitude {bad.max():.3g})"
                )
            c[wrong::2] = mpmath.mpc(0) if c.dtype == object else 0
        if self.trim and scale > 0:
            keep = np.nonzero(mags > config.TRIM_TOL * scale)[0]
            c = c[: keep[-1] + 1]
        elif scale == 0 and self.trim:
            c = c[:1]
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)
        object.__setattr__(self, "domain", (float(self.domain[0]), float(self.domain[1])))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def _map(self, x):
        a, b = self.domain
        if (a, b) == (-1.0, 1.0):
            return x
        return (2 * x - (a + b)) / (b - a)

    def __call__(self, x):
        return eval_poly(self, x)

    def _like(self, coeffs, parity=None, trim=True) -> "ParityPoly":
        return ParityPoly(coeffs, self.parity if parity is None else parity, self.domain, self.dps, trim)

    def conj(self) -> "ParityPoly":
        return self._like(conj_coeffs(self.coeffs))

    def real(self) -> "ParityPoly":
        return self._like(_real_part(self.coeffs))

    def imag(self) -> "ParityPoly":
        return self._like(_imag_part(self.coeffs))

    def scale(self, c) -> "ParityPoly":
        with precision(self.dps):
            return self._like(self.coeffs * c)

    def to_complex(self) -> np.ndarray:
        return np.array([complex(c) for c in self.coeffs], dtype=complex)

    def with_dps(self, dps: int | None) -> "ParityPoly":
        return ParityPoly(self.to_complex() if not dps else self.coeffs, self.parity, self.domain, dps)


def _real_part(arr):
    if arr.dtype == object:
        return np.array([mpmath.mpc(mpmath.re(c)) for c in arr], dtype=object)
    return arr.real.astype(complex)


def _imag_part(arr):
    if arr.dtype == object:
        return np.array([mpmath.mpc(mpmath.im(c)) for c in arr], dtype=object)
    return arr.imag.astype(complex)


@dataclass(frozen=True, eq=False)
class TransferPair:
    p: ParityPoly
    q: ParityPoly
    n_boosts: int

    def __post_init__(self):
        n = self.n_boosts
        if n < 0:
            raise DomainError("n_boosts must be non-negative")
        if self.p.degree > n or (n >= 1 and self.q.degree > n - 1):
            raise InvariantError(
                f"degrees ({self.p.degree}, {self.q.degree}) exceed bounds for {n} boosts"
            )
        for poly, want in ((self.p, parity_of(n)), (self.q, parity_of(n - 1))):
            got = infer_parity(poly.coeffs)
            if got != want and not (got == EVEN and _is_zero(poly)):
                raise InvariantError(f"parity {got} where {want} is required for {n} boosts")

    @property
    def dps(self):
        return self.p.dps or self.q.dps

    def at(self, x) -> tuple:
        """(P(x), Q(x)) evaluated at one point."""
        return eval_poly(self.p, x), eval_poly(self.q, x)

    def max_coeff_diff(self, other: "TransferPair") -> float:
        return max(_coeff_diff(self.p, other.p), _coeff_diff(self.q, other.q))


def _is_zero(p: ParityPoly) -> bool:
    return bool(np.all(_abs(p.coeffs) == 0))


def _coeff_diff(a: ParityPoly, b: ParityPoly) -> float:
    ca, cb = a.to_complex(), b.to_complex()
    n = max(len(ca), len(cb))
    ca = np.pad(ca, (0, n - len(ca)))
    cb = np.pad(cb, (0, n - len(cb)))
    return float(np.max(np.abs(ca - cb)))


def chebyshev(kind: str, n: int) -> ParityPoly:
    """T_n or U_n in the Chebyshev-T basis."""
    if n < 0:
        raise DomainError("Chebyshev degree must be non-negative")
    c = np.zeros(n + 1, dtype=complex)
    if kind == "T":
        c[n] = 1.0
    elif kind == "U":
        # U_n = 2 (T_n + T_{n-2} + ...), with T_0 counted once
        c[n::-2] = 2.0
        if n % 2 == 0:
            c[0] = 1.0
    else:
        raise DomainError(f"unknown Chebyshev kind {kind!r}")
    return ParityPoly(c, parity_of(n))


def boost_pair(phi: float, dps: int | None = None) -> TransferPair:
    """One boost: P = x, Q = e^{i phi}."""
    with precision(dps):
        e = mpmath.expj(mpmath.mpf(phi)) if dps else np.exp(1j * phi)
    return TransferPair(ParityPoly([0, 1], ODD, dps=dps), ParityPoly([e], EVEN, dps=dps), 1)


def identity_pair(dps: int | None = None) -> TransferPair:
    return TransferPair(ParityPoly([1], EVEN, dps=dps), ParityPoly([0], ODD, dps=dps), 0)


def _mul(a, b):
    return C.chebmul(a, b)


def compose_pair(a: TransferPair, b: TransferPair) -> TransferPair:
    """Pair of the product S_a S_b."""
    dps = max(a.dps or 0, b.dps or 0) or None
    n = a.n_boosts + b.n_boosts
    with precision(dps):
        pa, qa = _as_coeffs(a.p.coeffs, dps), _as_coeffs(a.q.coeffs, dps)
        pb, qb = _as_coeffs(b.p.coeffs, dps), _as_coeffs(b.q.coeffs, dps)
        p = C.chebadd(_mul(pa, pb), _mul(X2M1, _mul(qa, conj_coeffs(qb))))
        q = C.chebadd(_mul(pa, qb), _mul(qa, conj_coeffs(pb)))
        try:
            return _pair(p, q, n, dps)
        except DomainError as exc:
            raise InvariantError(f"parity bookkeeping failed in compose_pair: {exc}") from exc


def _fold_boosts(phases, dps):
    """Append one boost at a time: P <- xP + (x^2-1) Q e^{-i phi}, Q <- P e^{i phi} + xQ."""
    with precision(dps):
        if dps:
            exps = [mpmath.expj(mpmath.mpf(f)) for f in phases]
            p = np.array([mpmath.mpc(0), mpmath.mpc(1)], dtype=object)
            q = np.array([exps[0]], dtype=object)
        else:
            exps = np.exp(1j * np.asarray(phases, dtype=float))
            p = np.array([0, 1], dtype=complex)
            q = np.array([exps[0]], dtype=complex)
        for e in exps[1:]:
            ce = 1 / e
            xq = C.chebmulx(q)
            p, q = C.chebadd(C.chebmulx(p), C.chebsub(C.chebmulx(xq), q) * ce), C.chebadd(p * e, xq)
    return p, q


def protocol_to_pair(phi_list: PhaseList | list, dps: int | None = None) -> TransferPair:
    """Transfer pair of a protocol (either convention)."""
    phi_list = as_phase_list(phi_list)
    boost, s = phi_list.to_boost()
    n = phi_list.n_boosts
    if boost is None:
        with precision(dps):
            e = mpmath.expj(mpmath.mpf(s)) if dps else np.exp(1j * s)
        return TransferPair(ParityPoly([e], EVEN, dps=dps), ParityPoly([0], ODD, dps=dps), 0)
    p, q = _fold_boosts(boost.phases, dps)
    if phi_list.convention != BOOST:
        with precision(dps):
            e = mpmath.expj(mpmath.mpf(s)) if dps else np.exp(1j * s)
            p, q = p * e, q / e
    return _pair(p, q, n, dps)


def _pair(p, q, n: int, dps) -> TransferPair:
    # no relative trimming here: far outside [-1, 1] a 1e-15 Chebyshev
    # coefficient can dominate, so composed pairs keep their full degree
    return TransferPair(
        ParityPoly(p, parity_of(n), dps=dps, trim=False),
        ParityPoly(q, parity_of(n - 1), dps=dps, trim=False),
        n,
    )


def eval_poly(p: ParityPoly, x):
    """Clenshaw evaluation; valid inside and outside [-1, 1].

    ``x`` may be a scalar or an array of real or complex points.
    """
    if p.dps:
        with precision(p.dps):
            if np.ndim(x) == 0:
                return C.chebval(p._map(mpmath.mpmathify(x)), p.coeffs)
            return np.array([C.chebval(p._map(mpmath.mpmathify(v)), p.coeffs) for v in np.ravel(x)])
    t = p._map(np.asarray(x) if np.ndim(x) else x)
    out = C.chebval(t, p.coeffs)
    return complex(out) if np.ndim(x) == 0 else out


def identity_defect(tp: TransferPair) -> float:
    """Relative size of the coefficients of P conj(P) - (x^2-1) Q conj(Q) - 1."""
    dps = tp.dps
    with precision(dps):
        p, q = tp.p.coeffs, tp.q.coeffs
        pp = _mul(p, conj_coeffs(p))
        qq = _mul(X2M1, _mul(q, conj_coeffs(q)))
        d = C.chebsub(C.chebsub(pp, qq), [1])
        scale = max(1.0, float(_abs(pp).max()), float(_abs(qq).max()))
        return float(_abs(d).max()) / scale


def real_poly(p: ParityPoly) -> np.ndarray:
    """Real Chebyshev coefficients as float64 (imaginary parts dropped)."""
    return p.to_complex().real.copy()
