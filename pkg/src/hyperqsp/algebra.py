"""2x2 matrix arithmetic, SU(2)/SU(1,1) gates and protocol evaluation.

Two phase conventions are supported.

``boost``
    One phase per gate, ``S = G_{phi_0} G_{phi_1} ... G_{phi_{m-1}}`` with
    ``G`` the phased iterate (circular signal) or phased boost (hyperbolic
    signal). The k=0 factor is leftmost.

``rotation``
    The usual signal-processing layout with ``n + 1`` Z-rotations around
    ``n`` unphased signal gates,
    ``U = e^{i psi_0 Z} G e^{i psi_1 Z} ... G e^{i psi_n Z}``.
    The circular gate is ``e^{i theta X}`` and the hyperbolic gate is the
    unphased boost. Both give the same top-left polynomial.

Entries are Python complex numbers in double precision, or ``mpmath.mpc``
when a working precision ``dps`` is requested.
"""

from __future__ import annotations

import cmath
import math
from contextlib import nullcontext
from dataclasses import dataclass
from typing import Any, Iterable, Sequence

import mpmath
import numpy as np

from . import config
from .errors import DegenerateRotationError, DomainError

BOOST = "boost"
ROTATION = "rotation"
CONVENTIONS = (BOOST, ROTATION)

CIRCULAR = "circular"
HYPERBOLIC = "hyperbolic"

SU2_TO_SU11 = "su2_to_su11"
SU11_TO_SU2 = "su11_to_su2"


def precision(dps: int | None):
    """Context manager that sets mpmath working precision, or does nothing."""
    if not dps or mpmath.mp.dps == dps:
        return nullcontext()
    return mpmath.workdps(dps)


def _is_finite(z: Any) -> bool:
    if isinstance(z, (mpmath.mpf, mpmath.mpc)):
        return not (mpmath.isnan(z) or mpmath.isinf(z))
    return cmath.isfinite(complex(z))


def _scalar(z: Any, dps: int | None):
    if dps:
        return mpmath.mpc(z)
    return complex(z)


@dataclass(frozen=True)
class Mat2:
    a11: Any
    a12: Any
    a21: Any
    a22: Any
    dps: int | None = None

    def __post_init__(self):
        for name in ("a11", "a12", "a21", "a22"):
            if not _is_finite(getattr(self, name)):
                raise DomainError(f"non-finite matrix entry {name}={getattr(self, name)!r}")

    @classmethod
    def identity(cls, dps: int | None = None) -> "Mat2":
        with precision(dps):
            one, zero = _scalar(1, dps), _scalar(0, dps)
        return cls(one, zero, zero, one, dps)

    @classmethod
    def from_array(cls, arr, dps: int | None = None) -> "Mat2":
        a = np.asarray(arr)
        if a.shape != (2, 2):
            raise DomainError(f"expected a 2x2 array, got shape {a.shape}")
        with precision(dps):
            return cls(*(_scalar(v, dps) for v in a.ravel()), dps=dps)

    def __matmul__(self, other: "Mat2") -> "Mat2":
        dps = max(self.dps or 0, other.dps or 0) or None
        with precision(dps):
            return Mat2(
                self.a11 * other.a11 + self.a12 * other.a21,
                self.a11 * other.a12 + self.a12 * other.a22,
                self.a21 * other.a11 + self.a22 * other.a21,
                self.a21 * other.a12 + self.a22 * other.a22,
                dps,
            )

    def scale(self, c) -> "Mat2":
        with precision(self.dps):
            return Mat2(c * self.a11, c * self.a12, c * self.a21, c * self.a22, self.dps)

    @property
    def dagger(self) -> "Mat2":
        conj = mpmath.conj if self.dps else (lambda z: complex(z).conjugate())
        with precision(self.dps):
            return Mat2(conj(self.a11), conj(self.a21), conj(self.a12), conj(self.a22), self.dps)

    def det(self):
        with precision(self.dps):
            return self.a11 * self.a22 - self.a12 * self.a21

    def to_array(self) -> np.ndarray:
        """Double-precision copy as a 2x2 complex ndarray."""
        return np.array(
            [[complex(self.a11), complex(self.a12)], [complex(self.a21), complex(self.a22)]],
            dtype=complex,
        )

    def max_abs_diff(self, other: "Mat2") -> float:
        dps = max(self.dps or 0, other.dps or 0) or None
        with precision(dps):
            return float(max(abs(a - b) for a, b in zip(self.entries(), other.entries())))

    def entries(self) -> tuple:
        return (self.a11, self.a12, self.a21, self.a22)


@dataclass(frozen=True)
class Signal:
    """Signal angle: theta for circular gates, beta for hyperbolic ones."""

    kind: str
    value: float

    def __post_init__(self):
        if self.kind not in (CIRCULAR, HYPERBOLIC):
            raise DomainError(f"unknown signal kind {self.kind!r}")
        v = float(self.value)
        if not math.isfinite(v):
            raise DomainError("signal value must be finite")
        if self.kind == CIRCULAR and not (0.0 <= v <= math.pi):
            raise DomainError(f"circular signal angle {v} outside [0, pi]")
        if self.kind == HYPERBOLIC and not (0.0 <= v <= config.beta_max()):
            raise DomainError(f"boost strength {v} outside [0, {config.beta_max()}]")
        object.__setattr__(self, "value", v)

    @classmethod
    def circular(cls, theta: float) -> "Signal":
        return cls(CIRCULAR, theta)

    @classmethod
    def hyperbolic(cls, beta: float) -> "Signal":
        return cls(HYPERBOLIC, beta)

    @classmethod
    def at(cls, x: float, kind: str = HYPERBOLIC) -> "Signal":
        """Signal whose x equals the given value (x >= 1 hyperbolic, |x| <= 1 circular)."""
        x = float(x)
        if kind == HYPERBOLIC:
            if x < 1.0:
                raise DomainError(f"hyperbolic signal needs x >= 1, got {x}")
            return cls(kind, math.acosh(x))
        if abs(x) > 1.0:
            raise DomainError(f"circular signal needs |x| <= 1, got {x}")
        return cls(CIRCULAR, math.acos(x))

    @property
    def x(self) -> float:
        return math.cos(self.value) if self.kind == CIRCULAR else math.cosh(self.value)


@dataclass(frozen=True)
class PhaseList:
    phases: tuple
    convention: str = BOOST

    def __post_init__(self):
        if self.convention not in CONVENTIONS:
            raise DomainError(f"unknown phase convention {self.convention!r}")
        phases = tuple(float(p) for p in self.phases)
        if len(phases) < 1:
            raise DomainError("phase list must contain at least one phase")
        if not all(math.isfinite(p) for p in phases):
            raise DomainError("phases must be finite")
        object.__setattr__(self, "phases", phases)

    def __len__(self) -> int:
        return len(self.phases)

    def __iter__(self):
        return iter(self.phases)

    def __getitem__(self, k):
        return self.phases[k]

    def __add__(self, other: "PhaseList") -> "PhaseList":
        # plain concatenation only composes protocols in the one-phase-per-gate layout
        if self.convention != BOOST or other.convention != BOOST:
            raise DomainError("'+' concatenation is defined for boost-convention lists only")
        return PhaseList(self.phases + other.phases, BOOST)

    @property
    def n_boosts(self) -> int:
        return len(self.phases) if self.convention == BOOST else len(self.phases) - 1

    def to_boost(self) -> tuple["PhaseList | None", float]:
        """Equivalent boost-convention list and the trailing global Z phase ``s``.

        A rotation-convention protocol equals ``S * diag(e^{is}, e^{-is})``
        where ``S`` is the returned boost-convention product, so its top-left
        polynomial is ``e^{is} P`` and its off-diagonal one is ``e^{-is} Q``.
        With zero gates the returned list is ``None``.
        """
        if self.convention == BOOST:
            return self, 0.0
        psi = self.phases
        running = 0.0
        out = []
        for p in psi[:-1]:
            running += p
            out.append(2.0 * running)
        s = running + psi[-1]
        return (PhaseList(out, BOOST) if out else None), s


def as_phase_list(phases: PhaseList | Iterable[float], convention: str = BOOST) -> PhaseList:
    if isinstance(phases, PhaseList):
        return phases
    return PhaseList(tuple(phases), convention)


def _trig(theta, phi, dps):
    if dps:
        with precision(dps):
            theta, phi = mpmath.mpmathify(theta), mpmath.mpf(phi)
            return mpmath.cos(theta), mpmath.sin(theta), mpmath.expj(phi)
    return cmath.cos(theta), cmath.sin(theta), cmath.exp(1j * phi)


def phased_iterate(theta: float, phi: float, dps: int | None = None) -> Mat2:
    """W_phi(theta) = [[cos, e^{i phi} sin], [-e^{-i phi} sin, cos]]."""
    if not (math.isfinite(theta) and math.isfinite(phi)):
        raise DomainError("phased_iterate needs finite inputs")
    c, s, e = _trig(theta, phi, dps)
    with precision(dps):
        conj_e = 1 / e
        m = Mat2(_scalar(c, dps), e * s, -conj_e * s, _scalar(c, dps), dps)
    return m


def phased_boost(beta: float, phi: float, dps: int | None = None) -> Mat2:
    """V_phi(beta) = [[cosh, e^{i phi} sinh], [e^{-i phi} sinh, cosh]]."""
    if not (math.isfinite(beta) and math.isfinite(phi)):
        raise DomainError("phased_boost needs finite inputs")
    if beta < 0 or beta > config.beta_max():
        raise DomainError(f"boost strength {beta} outside [0, {config.beta_max()}]")
    if dps:
        with precision(dps):
            b = mpmath.mpf(beta)
            ch, sh = mpmath.cosh(b), mpmath.sinh(b)
            e = mpmath.expj(mpmath.mpf(phi))
            return Mat2(mpmath.mpc(ch), e * sh, sh / e, mpmath.mpc(ch), dps)
    ch, sh = math.cosh(beta), math.sinh(beta)
    e = cmath.exp(1j * phi)
    return Mat2(complex(ch), e * sh, e.conjugate() * sh, complex(ch))


def z_rotation(psi: float, dps: int | None = None) -> Mat2:
    """e^{i psi Z}."""
    with precision(dps):
        e = mpmath.expj(mpmath.mpf(psi)) if dps else cmath.exp(1j * psi)
        zero = _scalar(0, dps)
        return Mat2(e, zero, zero, 1 / e, dps)


def _gate(signal: Signal, phi: float, dps):
    if signal.kind == CIRCULAR:
        return phased_iterate(signal.value, phi, dps)
    return phased_boost(signal.value, phi, dps)


def eval_protocol(phi_list: PhaseList | Sequence[float], signal: Signal, dps: int | None = None) -> Mat2:
    """Ordered product of the protocol's gates at one signal value (k=0 leftmost)."""
    phi_list = as_phase_list(phi_list)
    with precision(dps):
        if phi_list.convention == BOOST:
            out = _gate(signal, phi_list[0], dps)
            for phi in phi_list.phases[1:]:
                out = out @ _gate(signal, phi, dps)
            return out
        # rotation layout: e^{i theta X} is the circular iterate at phase pi/2
        signal_phase = math.pi / 2 if signal.kind == CIRCULAR else 0.0
        g = _gate(signal, signal_phase, dps)
        out = z_rotation(phi_list[0], dps)
        for psi in phi_list.phases[1:]:
            out = out @ g @ z_rotation(psi, dps)
        return out


def _j_defect_entries(m: Mat2, sign: int):
    """Entries of M^dagger diag(1, sign) M - diag(1, sign)."""
    conj = mpmath.conj if m.dps else (lambda z: complex(z).conjugate())
    a, b, c, d = m.entries()
    e11 = conj(a) * a + sign * conj(c) * c - 1
    e12 = conj(a) * b + sign * conj(c) * d
    e21 = conj(b) * a + sign * conj(d) * c
    e22 = conj(b) * b + sign * conj(d) * d - sign
    return e11, e12, e21, e22


def pseudo_unitary_defect(m: Mat2) -> float:
    """max |M^dagger J M - J| with J = diag(1, -1)."""
    with precision(m.dps):
        return float(max(abs(e) for e in _j_defect_entries(m, -1)))


def unitary_defect(m: Mat2) -> float:
    """max |M^dagger M - I|."""
    with precision(m.dps):
        return float(max(abs(e) for e in _j_defect_entries(m, +1)))


def substitute_picture(phi_list: PhaseList | Sequence[float], direction: str) -> PhaseList:
    """Map phases between the SU(2) and SU(1,1) pictures.

    Boost convention: every phase shifts by +pi/2 (su2_to_su11) or -pi/2.
    Rotation convention: only the outer Z-rotations absorb the shift, the
    first by +pi/2 and the last by -pi/2 (reversed for su11_to_su2); the
    top-left polynomial is unchanged.
    """
    phi_list = as_phase_list(phi_list)
    if direction == SU2_TO_SU11:
        sign = 1.0
    elif direction == SU11_TO_SU2:
        sign = -1.0
    else:
        raise DomainError(f"unknown substitution direction {direction!r}")
    shift = sign * math.pi / 2
    if phi_list.convention == BOOST:
        return PhaseList(tuple(p + shift for p in phi_list), BOOST)
    phases = list(phi_list.phases)
    phases[0] += shift
    phases[-1] -= shift
    return PhaseList(tuple(phases), ROTATION)


def rotation_decompose(m: Mat2, tol: float = 1e-10) -> tuple[float, float]:
    """Angles (xi, R) of a unitary with real part cos(xi) on the diagonal.

    ``xi = arccos(Re a11)`` and ``R = arccos(Im a11 / sin xi)``; R is the
    polar angle of the rotation axis measured from Z towards X, so that
    ``U = cos xi I + i sin xi (cos R Z + sin R X)`` for the symmetric
    signal-processing form.
    """
    if unitary_defect(m) > tol:
        raise DomainError("rotation_decompose needs a unitary matrix")
    re = float(mpmath.re(m.a11)) if m.dps else complex(m.a11).real
    im = float(mpmath.im(m.a11)) if m.dps else complex(m.a11).imag
    if abs(re) > 1.0 + tol:
        raise DomainError(f"|Re a11| = {abs(re)} exceeds 1")
    re = min(1.0, max(-1.0, re))
    s2 = 1.0 - re * re
    if s2 <= 1e-14:
        raise DegenerateRotationError("rotation-angle undefined: (Re a11)^2 = 1")
    xi = math.acos(re)
    ratio = min(1.0, max(-1.0, im / math.sqrt(s2)))
    return xi, math.acos(ratio)
