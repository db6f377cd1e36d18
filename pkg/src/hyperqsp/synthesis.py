"""Completion of real parts into transfer pairs, and phase recovery.

Completion looks for real polynomials ``a`` and ``c`` with

    F = p^2 - (x^2 - 1) q^2 - 1 = (x^2 - 1) c^2 - a^2,

so that ``P = p + i a`` and ``Q = q + i c`` satisfy the pair identity.
Substituting ``x = (w + 1/w) / 2`` turns ``-F`` into a self-reciprocal
Laurent polynomial ``L(w)``, and ``g(w) = a + ((w - 1/w) / 2) c`` is any
spectral factor with ``L(w) = g(w) g(1/w)``. A real factor exists exactly
when ``-F >= 0`` on [-1, 1]. The factor built here keeps every root inside
the closed unit disk.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
import numpy as np
from numpy.polynomial import chebyshev as C

from . import config
from .algebra import BOOST, SU11_TO_SU2, PhaseList, precision, substitute_picture
from .errors import DomainError, FactorizationError, NotCompletableError, StrippingError
from .polyring import (
    EVEN,
    NONE,
    ODD,
    X2M1,
    ParityPoly,
    TransferPair,
    _abs,
    chebyshev,
    conj_coeffs,
    identity_defect,
    infer_parity,
    parity_of,
    protocol_to_pair,
)

PAIR_TOL = 1e-7
INTERVAL = "interval"
HALF_LINE = "half_line"


@dataclass(frozen=True, eq=False)
class CompletionInput:
    """Real parts of a pair for an n-boost protocol."""

    p_real: ParityPoly
    q_real: ParityPoly
    n: int

    def __post_init__(self):
        n = self.n
        if n < 1:
            raise DomainError("completion needs at least one boost")
        for name, poly, bound, want in (
            ("p_real", self.p_real, n, parity_of(n)),
            ("q_real", self.q_real, n - 1, parity_of(n - 1)),
        ):
            c = poly.to_complex()
            if np.max(np.abs(c.imag)) > 1e-12 * max(1.0, np.max(np.abs(c))):
                raise DomainError(f"{name} must have real coefficients")
            if poly.degree > bound:
                raise DomainError(f"{name} has degree {poly.degree} > {bound}")
            got = infer_parity(c)
            if not (got == want or np.max(np.abs(c)) == 0):
                raise DomainError(f"{name} must have {want} parity, found {got}")
        p1 = float(np.sum(self.p_real.to_complex().real))
        if abs(p1 - 1.0) > 1e-9:
            raise DomainError(
                f"p_real(1) = {p1:.12g}; a boost protocol is the identity at x = 1, so p_real(1) must be 1"
            )

    @classmethod
    def from_coeffs(cls, p, q, n: int) -> "CompletionInput":
        return cls(
            ParityPoly(np.real(np.asarray(p, dtype=complex)), parity_of(n)),
            ParityPoly(np.real(np.asarray(q, dtype=complex)), parity_of(n - 1)),
            n,
        )


@dataclass(frozen=True, eq=False)
class SpectralFactor:
    """Real polynomials with F = (x^2 - 1) c^2 - a^2."""

    a: ParityPoly
    c: ParityPoly

    def reconstruct(self) -> np.ndarray:
        a, c = self.a.to_complex().real, self.c.to_complex().real
        return C.chebsub(C.chebmul(X2M1, C.chebmul(c, c)), C.chebmul(a, a))

    def residual(self, f: ParityPoly, x) -> np.ndarray:
        """|F(x) - ((x^2-1) c(x)^2 - a(x)^2)| at the given points."""
        x = np.asarray(x, dtype=float)
        return np.abs(C.chebval(x, f.to_complex().real) - C.chebval(x, self.reconstruct()))


def _real(arr) -> np.ndarray:
    return np.asarray([complex(v).real for v in arr], dtype=float)


def build_F(inp: CompletionInput, check: str = INTERVAL, grid_points: int = 4001) -> ParityPoly:
    """F = p^2 - (x^2-1) q^2 - 1 with a feasibility check.

    ``check="interval"`` requires ``F <= 0`` on [-1, 1], the condition under
    which the completion exists. ``check="half_line"`` instead requires
    ``F >= 0`` on [1, cosh(beta_max)]; that condition is kept for reference
    but rejects many genuine protocols.
    """
    p, q = _real(inp.p_real.coeffs), _real(inp.q_real.coeffs)
    pp = C.chebmul(p, p)
    f = C.chebsub(C.chebsub(pp, C.chebmul(X2M1, C.chebmul(q, q))), [1.0])
    if check == INTERVAL:
        xs = np.cos(np.linspace(0.0, math.pi, grid_points))
        vals = C.chebval(xs, f)
        scale = np.maximum(1.0, C.chebval(xs, pp))
        worst = int(np.argmax(vals / scale))
        if vals[worst] > 1e-10 * scale[worst]:
            raise NotCompletableError(
                f"not completable: F = {vals[worst]:.6g} > 0 at x = {xs[worst]:.12g} in [-1, 1]"
            )
    elif check == HALF_LINE:
        xs = np.linspace(1.0, config.x_max(), grid_points)
        vals = C.chebval(xs, f)
        scale = np.maximum(1.0, np.abs(C.chebval(xs, pp)))
        worst = int(np.argmin(vals / scale))
        if vals[worst] < -1e-10 * scale[worst]:
            raise NotCompletableError(
                f"not completable: F = {vals[worst]:.6g} < 0 at x = {xs[worst]:.12g}"
            )
    else:
        raise DomainError(f"unknown feasibility check {check!r}")
    return ParityPoly(f, EVEN)


def _cheb_u_to_t(m: int) -> np.ndarray:
    return chebyshev("U", m).to_complex().real


def _laurent_to_ac(g: np.ndarray, lo: int) -> tuple[np.ndarray, np.ndarray]:
    """Split sum_k g_k w^k (k from lo) into a(x) + ((w - 1/w)/2) c(x)."""
    hi = lo + len(g) - 1
    top = max(abs(lo), abs(hi))
    coef = {lo + i: g[i] for i in range(len(g))}
    a = np.zeros(top + 1)
    c = np.zeros(max(top, 1))
    a[0] = coef.get(0, 0.0)
    for k in range(1, top + 1):
        gp, gm = coef.get(k, 0.0), coef.get(-k, 0.0)
        a[k] = gp + gm
        c = C.chebadd(c, (gp - gm) * _cheb_u_to_t(k - 1))
    return a, c


def _inside_root(r: complex) -> complex:
    """w-root of x = (w + 1/w)/2 with |w| <= 1."""
    w = r - np.sqrt(r - 1) * np.sqrt(r + 1)
    return w if abs(w) <= 1.0 else 1.0 / w


def _newton(coeffs, deriv, z, steps: int = 4):
    """Polish a root of the Chebyshev series ``coeffs``; keeps the best iterate."""
    best, best_val = z, abs(C.chebval(z, coeffs))
    for _ in range(steps):
        d = C.chebval(z, deriv)
        if d == 0:
            break
        z = z - C.chebval(z, coeffs) / d
        v = abs(C.chebval(z, coeffs))
        if v < best_val:
            best, best_val = z, v
    return best


def _interval_clusters(xs, gap: float) -> list:
    """Group real roots in (-1, 1) into clusters of even size.

    F <= 0 on [-1, 1] forces even multiplicity there; rounding splits such a
    root into nearby real roots (and possibly complex pairs, handled
    elsewhere). Returns (mean, size / 2) per cluster.
    """
    xs = sorted(xs)
    groups = []
    for v in xs:
        if groups and v - groups[-1][-1] <= gap:
            groups[-1].append(v)
        else:
            groups.append([v])
    # a root of high multiplicity spreads by about gap^(2/k); let an odd
    # group absorb its neighbour within gap^(1/2), the reconstruction check
    # decides whether the result is acceptable
    merged = []
    for g in groups:
        if merged and len(merged[-1]) % 2 and g[0] - merged[-1][-1] <= math.sqrt(gap):
            merged[-1].extend(g)
        else:
            merged.append(g)
    out = []
    for g in merged:
        if len(g) % 2:
            raise FactorizationError(
                f"factorization failed: odd number of roots of F near x = {float(g[0]):.10g} in (-1, 1)"
            )
        out.append((sum(g) / len(g), len(g) // 2))
    return out


def factor_F(f: ParityPoly, pair_tol: float = PAIR_TOL, check_tol: float = 1e-8,
             dps: int | None = None) -> SpectralFactor:
    """Real a, c with F = (x^2 - 1) c^2 - a^2.

    Roots of F inside (-1, 1) must have even multiplicity; numerically split
    pairs are matched within ``pair_tol`` and averaged. Roots within
    ``pair_tol`` of +-1 are snapped onto them. Every other root contributes
    its w-image inside the unit disk. With ``dps`` the roots, the pairing
    and the transform back run in extended precision.
    """
    fc = _real(f.coeffs)
    scale = float(np.max(np.abs(fc))) if fc.size else 0.0
    if scale == 0.0 or scale < 1e-14:
        return SpectralFactor(ParityPoly([0.0], EVEN), ParityPoly([0.0], ODD))
    keep = np.nonzero(np.abs(fc) > 1e-13 * scale)[0]
    fc = fc[: keep[-1] + 1]
    m = len(fc) - 1
    if m == 0:
        raise FactorizationError(f"factorization failed: F is a nonzero constant {fc[0]:.6g}")
    if m % 2:
        raise FactorizationError("factorization failed: F must be even")
    if dps:
        return _factor_F_mp(fc, dps, pair_tol, check_tol)
    roots = C.chebroots(fc)
    d1 = C.chebder(fc)
    d2 = C.chebder(d1)

    snapped = []
    interval = []
    for r in roots:
        if abs(r - 1) <= pair_tol:
            snapped.append(1.0 + 0j)
        elif abs(r + 1) <= pair_tol:
            snapped.append(-1.0 + 0j)
        elif abs(r.imag) <= max(pair_tol, 1e-6 * abs(r)) and abs(r.real) < 1:
            interval.append(r)
        else:
            snapped.append(_newton(fc, d1, complex(r)))

    ws = [_inside_root(complex(r)) for r in snapped]
    for x0, half in _interval_clusters([r.real for r in interval], math.sqrt(pair_tol)):
        if half == 1:
            # a double root of F is a simple root of F'
            x0 = float(np.real(_newton(d1, d2, x0)))
        x0 = min(1.0, max(-1.0, x0))
        w0 = complex(x0, -math.sqrt(max(0.0, 1.0 - x0 * x0)))
        ws.extend([w0, w0.conjugate()] * half)

    # g(w) = w^{-m/2} prod(w - a_j); shift by w^1 when the parity needs it
    # On |w| = 1 one has |g|^2 = -F(cos t), so sampling the product there and
    # transforming back is well conditioned; expanding root by root is not.
    npts = m + 1
    grid = np.exp(2j * np.pi * np.arange(npts) / npts)
    vals = np.prod(grid[:, None] - np.asarray(ws)[None, :], axis=1)
    poly = np.fft.fft(vals) / npts
    if np.max(np.abs(poly.imag)) > 1e-8 * max(1.0, np.max(np.abs(poly))):
        raise FactorizationError("factorization failed: spectral factor is not real")
    poly = poly.real
    a, c = _laurent_to_ac(poly, -(m // 2))
    recon = C.chebsub(C.chebmul(X2M1, C.chebmul(c, c)), C.chebmul(a, a))
    n = max(len(fc), len(recon))
    fv, rv = np.pad(fc, (0, n - len(fc))), np.pad(recon, (0, n - len(recon)))
    k2 = float(np.dot(fv, rv) / np.dot(rv, rv))
    if not k2 > 0:
        raise FactorizationError("factorization failed: F is not of the form (x^2-1) c^2 - a^2")
    k = math.sqrt(k2)
    a, c = k * a, k * c
    # g(-w) = (-1)^{m/2} g(w) because the root set is symmetric, so a has parity m/2
    pa = parity_of(m // 2)
    a[1 - (m // 2) % 2 :: 2] = 0.0
    c[(m // 2) % 2 :: 2] = 0.0
    err = float(np.max(np.abs(fv - k2 * rv))) / max(1.0, scale)
    if err > check_tol:
        raise FactorizationError(f"factorization failed: reconstruction error {err:.3g}")
    return SpectralFactor(ParityPoly(a, pa), ParityPoly(c, parity_of(m // 2 - 1)))


def _factor_F_mp(fc, dps: int, pair_tol: float, check_tol: float) -> SpectralFactor:
    """Extended-precision variant of ``factor_F`` for ill-conditioned root sets.

    The roots are found without the loss that a double-precision eigenvalue
    solve suffers near clusters. Real roots in (-1, 1) still pair within
    ``sqrt(pair_tol)``, since double inputs split an exact double root by
    about the square root of their rounding error.
    """
    with precision(dps):
        f = [v if isinstance(v, mpmath.mpf) else mpmath.mpf(float(v)) for v in fc]
        scale = max(abs(v) for v in f)
        if scale < 1e-14:
            return SpectralFactor(ParityPoly([0.0], EVEN), ParityPoly([0.0], ODD))
        tiny = mpmath.mpf(1e-13) * scale  # below the resolution of double inputs
        while len(f) > 1 and abs(f[-1]) <= tiny:
            f.pop()
        m = len(f) - 1
        if m == 0 or m % 2:
            raise FactorizationError(f"factorization failed: F has degree {m}")
        mono = C.cheb2poly(np.array(f, dtype=object))
        roots = mpmath.polyroots(list(reversed(list(mono))), maxsteps=500, extraprec=4 * dps)
        real_tol = mpmath.mpf(10) ** (-(dps // 2))
        ws, interval = [], []
        for r in roots:
            if abs(r - 1) <= pair_tol or abs(r + 1) <= pair_tol:
                ws.append(mpmath.mpf(1) if mpmath.re(r) > 0 else mpmath.mpf(-1))
                continue
            if abs(mpmath.im(r)) <= real_tol and abs(mpmath.re(r)) < 1:
                interval.append(mpmath.re(r))
                continue
            w = r - mpmath.sqrt(r - 1) * mpmath.sqrt(r + 1)
            ws.append(w if abs(w) <= 1 else 1 / w)
        for x0, half in _interval_clusters(interval, math.sqrt(pair_tol)):
            w0 = mpmath.mpc(x0, -mpmath.sqrt(1 - x0 * x0))
            ws.extend([w0, mpmath.conj(w0)] * half)
        npts = m + 1
        grid = [mpmath.expj(2 * mpmath.pi * k / npts) for k in range(npts)]
        vals = [mpmath.fprod([z - w for w in ws]) for z in grid]
        poly = [mpmath.fsum(vals[k] * mpmath.expj(-2 * mpmath.pi * j * k / npts) for k in range(npts)) / npts
                for j in range(npts)]
        big = max(abs(v) for v in poly)
        if max(abs(mpmath.im(v)) for v in poly) > mpmath.mpf(10) ** (-(dps // 2)) * max(1, big):
            raise FactorizationError("factorization failed: spectral factor is not real")
        a, c = _laurent_to_ac(np.array([mpmath.re(v) for v in poly], dtype=object), -(m // 2))
        recon = C.chebsub(C.chebmul(X2M1, C.chebmul(c, c)), C.chebmul(a, a))
        size = max(len(f), len(recon))
        fv = list(f) + [mpmath.mpf(0)] * (size - len(f))
        rv = list(recon) + [mpmath.mpf(0)] * (size - len(recon))
        k2 = mpmath.fdot(fv, rv) / mpmath.fdot(rv, rv)
        if not k2 > 0:
            raise FactorizationError("factorization failed: F is not of the form (x^2-1) c^2 - a^2")
        k = mpmath.sqrt(k2)
        a, c = a * k, c * k
        zero = mpmath.mpf(0)
        a[1 - (m // 2) % 2 :: 2] = zero
        c[(m // 2) % 2 :: 2] = zero
        err = float(max(abs(x - k2 * y) for x, y in zip(fv, rv))) / max(1.0, float(max(abs(v) for v in f)))
        if err > check_tol:
            raise FactorizationError(f"factorization failed: reconstruction error {err:.3g}")
        return SpectralFactor(ParityPoly(a, parity_of(m // 2)), ParityPoly(c, parity_of(m // 2 - 1)))


def _shift_parity(sf: SpectralFactor, n: int) -> SpectralFactor:
    """Multiply g by w when the factor has the wrong parity for n boosts.

    With g' = w g one has a' = x a + (x^2 - 1) c and c' = a + x c.
    """
    if sf.a.parity == parity_of(n):
        return sf
    if sf.a.coeffs.dtype == object:
        a, c = sf.a.coeffs, sf.c.coeffs
    else:
        a, c = sf.a.to_complex().real, sf.c.to_complex().real
    a2 = C.chebadd(C.chebmulx(a), C.chebmul(X2M1, c))
    c2 = C.chebadd(a, C.chebmulx(c))
    return SpectralFactor(ParityPoly(a2, parity_of(n)), ParityPoly(c2, parity_of(n - 1)))


def _exact_F(inp: CompletionInput, dps: int) -> list:
    """F from the real parts, formed in extended precision (exact for double inputs)."""
    with precision(dps):
        p = np.array([mpmath.mpf(v) for v in _real(inp.p_real.coeffs)], dtype=object)
        q = np.array([mpmath.mpf(v) for v in _real(inp.q_real.coeffs)], dtype=object)
        f = C.chebsub(C.chebsub(C.chebmul(p, p), C.chebmul(X2M1, C.chebmul(q, q))), [mpmath.mpf(1)])
        return list(f)


def _complete_pair_mp(inp: CompletionInput, dps: int, pair_tol: float) -> TransferPair:
    n = inp.n
    with precision(dps):
        sf = _shift_parity(_factor_F_mp(_exact_F(inp, dps), dps, pair_tol, 1e-8), n)
        a, c = sf.a.coeffs, sf.c.coeffs
        if len(a) - 1 > n or len(c) - 1 > max(n - 1, 0):
            raise FactorizationError(f"factorization failed: factor degrees exceed {n} boosts")
        pr, qr = _real(inp.p_real.coeffs), _real(inp.q_real.coeffs)
        p = [mpmath.mpc(pr[k] if k < len(pr) else 0, mpmath.re(a[k]) if k < len(a) else 0) for k in range(n + 1)]
        q = [mpmath.mpc(qr[k] if k < len(qr) else 0, mpmath.re(c[k]) if k < len(c) else 0) for k in range(n)]
        tp = TransferPair(ParityPoly(np.array(p, dtype=object), parity_of(n), trim=False),
                          ParityPoly(np.array(q, dtype=object), parity_of(n - 1), trim=False), n)
    return tp


def complete_pair(inp: CompletionInput, check: str = INTERVAL, pair_tol: float = PAIR_TOL,
                  dps: int | None = None) -> TransferPair:
    """Fill in imaginary parts so that (p + i a, q + i c) is a valid pair.

    ``dps`` forms and factors F in extended precision; the pair then carries
    mpmath coefficients, ready for ``layer_strip`` at the same precision.
    """
    f = build_F(inp, check=check)
    n = inp.n
    if dps:
        tp = _complete_pair_mp(inp, dps, pair_tol)
        d = identity_defect(tp)
        if d > 1e-8:
            raise FactorizationError(f"factorization failed: completed pair has identity defect {d:.3g}")
        return tp
    sf = _shift_parity(factor_F(f, pair_tol=pair_tol), n)
    a, c = sf.a.to_complex().real, sf.c.to_complex().real
    if len(a) - 1 > n or len(c) - 1 > max(n - 1, 0):
        raise FactorizationError(f"factorization failed: factor degrees exceed {n} boosts")
    p = C.chebadd(_real(inp.p_real.coeffs), 1j * a)
    q = C.chebadd(_real(inp.q_real.coeffs), 1j * c)
    # keep the copied real parts exact
    p.real[: len(inp.p_real.coeffs)] = _real(inp.p_real.coeffs)
    q.real[: len(inp.q_real.coeffs)] = _real(inp.q_real.coeffs)
    tp = TransferPair(ParityPoly(p, parity_of(n)), ParityPoly(q, parity_of(n - 1)), n)
    d = identity_defect(tp)
    if d > 1e-8:
        raise FactorizationError(f"factorization failed: completed pair has identity defect {d:.3g}")
    return tp


def _lead(arr, k):
    return arr[k] if k < len(arr) else 0


def _mp_array(arr) -> np.ndarray:
    return np.array([v if isinstance(v, mpmath.mpc) else mpmath.mpc(complex(v)) for v in arr], dtype=object)


def _pad(arr, k):
    if len(arr) >= k:
        return arr[:k]
    fill = np.array([mpmath.mpc(0)] * (k - len(arr)), dtype=object) if arr.dtype == object else np.zeros(k - len(arr), complex)
    return np.concatenate([arr, fill])


def layer_strip(tp: TransferPair, dps: int | None = None, stall_tol: float = 1e-3,
                verify_tol: float = 1e-6, degenerate_tol: float = 1e-12) -> PhaseList:
    """Recover boost-convention phases from a transfer pair.

    Each step reads the last phase from the leading coefficients,
    ``phi = arg(Q_{n-1} / P_n)``, multiplies by the inverse boost on the
    right and checks that both degrees drop by one. Nearly cancelling
    neighbours make the phases themselves ill-determined, so the intermediate
    check only catches gross stalls and the result is verified at the end by
    rebuilding the pair (relative coefficient tolerance ``verify_tol``).
    ``dps`` runs the recursion in extended precision.

    A pair whose P has degree n - 2k (below ``degenerate_tol``, relative) is
    an (n - 2k)-boost pair followed by k cancelling pairs; those are returned
    as trailing (0, pi) phases, since V_0 V_pi is the identity.
    """
    n = tp.n_boosts
    if n < 1:
        raise DomainError("layer_strip needs a pair with at least one boost")
    eps = 1e-14 if not dps else 10.0 ** (2 - dps)
    with precision(dps):
        if dps:
            p, q = _mp_array(tp.p.coeffs), _mp_array(tp.q.coeffs)
            expj, angle = mpmath.expj, lambda z: mpmath.arg(z)
        else:
            p, q = tp.p.to_complex(), tp.q.to_complex()
            expj, angle = (lambda t: complex(math.cos(t), math.sin(t))), (lambda z: math.atan2(z.imag, z.real))
        p, q = _pad(p, n + 1), _pad(q, n)
        scale = max(1.0, float(max(_abs(p).max(), _abs(q).max())))
        top = n
        while top >= 2 and float(abs(p[top])) <= degenerate_tol * scale:
            top -= 2
        p, q = p[: top + 1], q[:top]
        phases = []
        for deg in range(top, 0, -1):
            lp, lq = p[deg], q[deg - 1]
            if float(abs(lp)) <= eps * scale or float(abs(lq)) <= eps * scale:
                raise StrippingError(f"stripping stalled at degree {deg}: vanishing leading coefficient")
            phi = angle(lq / lp)
            phases.append(float(phi))
            e = expj(phi)
            # right-multiply by the inverse boost, i.e. boost_pair(phi + pi)
            new_p = _pad(C.chebsub(C.chebmulx(p), C.chebmul(X2M1, q) / e), deg + 1)
            new_q = _pad(C.chebsub(C.chebmulx(q), p * e), deg)
            drop = max(float(abs(new_p[deg])), float(abs(new_q[deg - 1])))
            if drop > stall_tol * scale:
                raise StrippingError(f"stripping stalled at degree {deg}: residual {drop:.3g}")
            p, q = new_p[:deg], new_q[: deg - 1]
        leftover = float(abs(p[0] - 1))
        if leftover > stall_tol * scale:
            raise StrippingError(
                f"stripping stalled at degree 0: leftover P = {complex(p[0]):.6g} is not 1"
            )
    filler = (0.0, math.pi) * ((n - top) // 2)
    out = PhaseList(tuple(reversed(phases)) + filler, BOOST)
    err = protocol_to_pair(out, dps=dps).max_coeff_diff(tp) / scale
    if err > verify_tol:
        raise StrippingError(f"stripping inaccurate: rebuilt pair differs by {err:.3g} (relative)")
    return out


FALLBACK_DPS = 40


def recover_phases(inp: CompletionInput, pair_tol: float = PAIR_TOL, dps: int | None = None) -> PhaseList:
    """Complete the real parts and strip the pair into boost phases.

    The double-precision route is tried first unless ``dps`` is given. When
    it fails, completion and stripping are redone with ``FALLBACK_DPS``
    digits (or ``dps``), which settles clustered roots of F. Inputs whose
    phases are themselves ill-conditioned still raise.
    """
    if not dps:
        try:
            return layer_strip(complete_pair(inp, pair_tol=pair_tol))
        except (FactorizationError, StrippingError):
            pass
    dps = dps or FALLBACK_DPS
    return layer_strip(complete_pair(inp, pair_tol=pair_tol, dps=dps), dps=dps)


def synthesize(target, picture: str = "su11", pair_tol: float = PAIR_TOL, dps: int | None = None,
               grid_points: int = 2001) -> PhaseList:
    """Phases of a boost protocol whose Re P equals the target polynomial.

    The target needs definite parity, ``|target| <= 1`` on [-1, 1] and
    ``target(1) = 1``. The result is in the SU(1,1) picture unless
    ``picture="su2"``.
    """
    if not isinstance(target, ParityPoly):
        target = ParityPoly(np.asarray(target, dtype=complex), NONE)
    c = target.to_complex()
    if np.max(np.abs(c.imag)) > 1e-12 * max(1.0, np.max(np.abs(c))):
        raise DomainError("target must have real coefficients")
    c = c.real
    par = infer_parity(c)
    if par == NONE:
        raise DomainError("target must have definite parity")
    n = len(np.trim_zeros(c, "b")) - 1
    if n < 1:
        raise DomainError("target must have degree at least 1")
    if par != parity_of(n):
        raise DomainError("target parity does not match its degree")
    xs = np.cos(np.linspace(0.0, math.pi, grid_points))
    vals = C.chebval(xs, c)
    worst = int(np.argmax(np.abs(vals)))
    if abs(vals[worst]) > 1.0 + 1e-10:
        raise NotCompletableError(f"target exceeds unit bound at x={xs[worst]:.12g} (|target| = {abs(vals[worst]):.12g})")
    inp = CompletionInput.from_coeffs(c[: n + 1], np.zeros(max(n, 1)), n)
    phases = recover_phases(inp, pair_tol=pair_tol, dps=dps)
    if picture == "su11":
        return phases
    if picture == "su2":
        return substitute_picture(phases, SU11_TO_SU2)
    raise DomainError(f"unknown picture {picture!r}")
