"""Two-mode Heisenberg-picture maps carried by SU(1,1) protocols.

A map acts on the pair (a1, a2^dagger) as

    a1 -> u a1 + v a2^dagger,    a2 -> u a2 + v a1^dagger,

which preserves the bosonic commutators exactly when |u|^2 - |v|^2 = 1.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from typing import Any, Sequence

import mpmath

from . import config
from .algebra import Mat2, PhaseList, as_phase_list, phased_boost, precision, pseudo_unitary_defect
from .errors import DomainError
from .polyring import eval_poly, protocol_to_pair

LOW_GAIN_LIMIT = 0.05
AUTO = "auto"


class LowGainRegimeWarning(UserWarning):
    pass


@dataclass(frozen=True)
class BogoliubovMap:
    u: Any
    v: Any
    dps: int | None = None

    def as_complex(self) -> tuple[complex, complex]:
        return complex(self.u), complex(self.v)


@dataclass(frozen=True)
class StagedInterferometer:
    """Sequence of (beta, phi) amplifier stages, applied left to right."""

    stages: tuple

    def __post_init__(self):
        stages = tuple((float(b), float(p)) for b, p in self.stages)
        if not stages:
            raise DomainError("an interferometer needs at least one stage")
        for b, _ in stages:
            if not (0.0 <= b <= config.beta_max()):
                raise DomainError(f"stage gain {b} outside [0, {config.beta_max()}]")
        object.__setattr__(self, "stages", stages)


def uniform_stages(beta: float, theta: float, phi: float, n_stages: int) -> StagedInterferometer:
    """N equal stages whose phases advance by -theta: phi, phi - theta, ..."""
    if n_stages < 1:
        raise DomainError("need at least one stage")
    return StagedInterferometer(tuple((beta, phi - k * theta) for k in range(n_stages)))


def _resolve_dps(dps, n_boosts: int, beta: float) -> int | None:
    if dps != AUTO:
        return dps
    # double precision keeps |u|^2 - |v|^2 to ~1e-12 only while e^{2 n beta} stays below ~1e4
    if 2.0 * n_boosts * beta < 9.0:
        return None
    return config.auto_dps(n_boosts, beta)


def commutator_defect(b: BogoliubovMap) -> float:
    """| |u|^2 - |v|^2 - 1 |."""
    with precision(b.dps):
        return float(abs(abs(b.u) ** 2 - abs(b.v) ** 2 - 1))


def bogoliubov_from_matrix(m: Mat2, tol: float = 1e-8) -> BogoliubovMap:
    """u = a11, v = a12 of an SU(1,1) matrix acting on (a1, a2^dagger)."""
    d = pseudo_unitary_defect(m)
    if d > tol:
        raise DomainError(f"not a mode transform: pseudo-unitary defect {d:.3g}")
    return BogoliubovMap(m.a11, m.a12, m.dps)


def composite_mode_map(phi_list: PhaseList | Sequence[float], beta: float, dps=AUTO) -> BogoliubovMap:
    """u = P(cosh beta), v = sinh(beta) Q(cosh beta)."""
    if not (0.0 <= beta <= config.beta_max()):
        raise DomainError(f"beta {beta} outside [0, {config.beta_max()}]")
    pl = as_phase_list(phi_list)
    dps = _resolve_dps(dps, pl.n_boosts, beta)
    tp = protocol_to_pair(pl, dps=dps)
    with precision(dps):
        if dps:
            b = mpmath.mpf(beta)
            x, sh = mpmath.cosh(b), mpmath.sinh(b)
        else:
            x, sh = math.cosh(beta), math.sinh(beta)
        u = eval_poly(tp.p, x)
        v = sh * eval_poly(tp.q, x)
    return BogoliubovMap(u, v, dps)


@dataclass(frozen=True)
class LowGainAmplitude:
    value: complex
    in_regime: bool


def low_gain_effective(beta: float, theta: float, phi: float, n_stages: int) -> LowGainAmplitude:
    """sinh(beta) sum_k e^{i(phi - k theta)}, the effective single-stage amplitude.

    Equal to ``e^{i(phi - (N-1) theta/2)} sinh(beta) sin(N theta/2) / sin(theta/2)``,
    with the limit N e^{i phi} sinh(beta) when theta is a multiple of 2 pi.
    ``in_regime`` is False (and a warning is issued) for beta > 0.05.
    """
    if n_stages < 1:
        raise DomainError("need at least one stage")
    if beta < 0:
        raise DomainError("beta must be non-negative")
    n = n_stages
    half = 0.5 * theta
    s = math.sin(half)
    if abs(s) < 1e-12:
        # sin(N t) / sin(t) -> N cos(N t) / cos(t) as t -> k pi
        ratio = n * math.cos(n * half) / math.cos(half)
    else:
        ratio = math.sin(n * half) / s
    value = cmath.exp(1j * (phi - (n - 1) * half)) * math.sinh(beta) * ratio
    ok = beta <= LOW_GAIN_LIMIT
    if not ok:
        warnings.warn(f"beta = {beta} is outside the low-gain regime (<= {LOW_GAIN_LIMIT})",
                      LowGainRegimeWarning, stacklevel=2)
    return LowGainAmplitude(complex(value), ok)


def staged_amplitude_exact(stages: StagedInterferometer, dps=AUTO) -> BogoliubovMap:
    """Exact product of the per-stage phased boosts."""
    total_beta = sum(b for b, _ in stages.stages)
    dps = _resolve_dps(dps, 1, total_beta)
    with precision(dps):
        m = Mat2.identity(dps)
        for b, p in stages.stages:
            m = m @ phased_boost(b, p, dps)
    return BogoliubovMap(m.a11, m.a12, dps)


def controlled_squeeze_branches(beta0: float, beta1: float, phi_list: PhaseList | Sequence[float],
                                dps=AUTO) -> tuple[BogoliubovMap, BogoliubovMap]:
    """Composite maps for the control in |0> (gain beta0) and |1> (gain beta1)."""
    return composite_mode_map(phi_list, beta0, dps), composite_mode_map(phi_list, beta1, dps)
