"""Named protocol families: Chebyshev, monotone amplification, constant phase.

The monotone and constant-phase families are written in the rotation
convention (n + 1 phases around n unphased boosts); see ``algebra``.
"""

from __future__ import annotations

import math
import warnings
from dataclasses import dataclass
from typing import Callable, Iterable, Sequence

import numpy as np
from numpy.polynomial import chebyshev as C

from . import config
from .algebra import BOOST, ROTATION, PhaseList, Signal, as_phase_list, eval_protocol
from .errors import DomainError

MAX_MONOTONE_LEVEL = 8
POLE_TOL = 1e-12
DEGENERATE_WINDOW = 1e-6

SECANT = "secant"
SIMPLE = "simple"
CHEBYSHEV_LOWER = "chebyshev_lower"
BOUND_KINDS = (SECANT, SIMPLE, CHEBYSHEV_LOWER)

LARGE_X = "large_x"
NEAR_MINUS = "near_critical_minus"
NEAR_PLUS = "near_critical_plus"


class DegenerateLimitWarning(UserWarning):
    pass


@dataclass(frozen=True)
class ConstantProtocol:
    """n boosts interleaved with n + 1 identical Z-rotations by phi."""

    n: int
    phi: float

    def __post_init__(self):
        if self.n < 1:
            raise DomainError("constant protocol needs n >= 1 boosts")
        if not (0.0 < self.phi < math.pi / 2):
            raise DomainError(f"phi = {self.phi} outside (0, pi/2)")

    @property
    def sec_phi(self) -> float:
        return 1.0 / math.cos(self.phi)

    def phases(self) -> PhaseList:
        return gen_constant(self.n, self.phi)

    def unimodular_defect(self, grid: int = 201) -> float:
        """max | |lambda+-| - 1 | over a grid of |x| <= sec(phi)."""
        xs = np.linspace(-self.sec_phi, self.sec_phi, grid)
        worst = 0.0
        for x in xs:
            lp, lm = constant_eigenvalues(self.phi, x)
            worst = max(worst, abs(abs(lp) - 1), abs(abs(lm) - 1))
        return worst


@dataclass(frozen=True)
class StepSpec:
    mu: float
    xi: float
    delta: float

    def __post_init__(self):
        if not self.mu > 1:
            raise DomainError("step location mu must exceed 1")
        if not self.xi > 0:
            raise DomainError("step distance xi must be positive")
        if not self.delta > 0:
            raise DomainError("gap half-width delta must be positive")
        if not self.mu - self.delta > 1:
            raise DomainError("need mu - delta > 1")

    @property
    def phi(self) -> float:
        return math.acos(1.0 / self.mu)


def gen_trivial(n: int) -> PhaseList:
    """n zero phases; the top-left entry is T_n."""
    if n < 1:
        raise DomainError("gen_trivial needs n >= 1")
    return PhaseList((0.0,) * n, BOOST)


def inverse_phases(phi_list: PhaseList | Sequence[float]) -> PhaseList:
    """Reverse and negate, then shift the new ends by +pi/2 and -pi/2."""
    pl = as_phase_list(phi_list, ROTATION)
    if len(pl) < 2:
        raise DomainError("inverse_phases needs at least two phases")
    out = [-p for p in reversed(pl.phases)]
    out[0] += math.pi / 2
    out[-1] -= math.pi / 2
    return PhaseList(tuple(out), pl.convention)


def concat_protocols(a: PhaseList | Sequence[float], b: PhaseList | Sequence[float]) -> PhaseList:
    """Join two lists, merging the trailing phase of ``a`` with the leading phase of ``b``."""
    a, b = as_phase_list(a, ROTATION), as_phase_list(b, ROTATION)
    if a.convention != b.convention:
        raise DomainError("cannot concatenate lists in different conventions")
    merged = a.phases[:-1] + (a.phases[-1] + b.phases[0],) + b.phases[1:]
    return PhaseList(merged, a.convention)


MONOTONE_BASE = (0.0, -math.pi / 6 + math.pi / 2, math.pi / 6 - math.pi / 2, 0.0)


def monotone_step(phi_list: PhaseList) -> PhaseList:
    pieces = [phi_list, PhaseList((-math.pi / 6,), ROTATION), inverse_phases(phi_list),
              PhaseList((math.pi / 6,), ROTATION), phi_list]
    out = pieces[0]
    for piece in pieces[1:]:
        out = concat_protocols(out, piece)
    return out


def gen_monotone_amplify(level: int, base: Iterable[float] = MONOTONE_BASE) -> PhaseList:
    """Monotone amplification protocol with |P|^2 = x^(2 * 3^(level+1)).

    ``base`` exists to reproduce the two-entry variant for comparison;
    only the default four-entry base has the stated modulus.
    """
    if level < 0:
        raise DomainError("level must be non-negative")
    if level > MAX_MONOTONE_LEVEL:
        raise DomainError(f"level {level} > {MAX_MONOTONE_LEVEL}: length grows like 3^level")
    out = PhaseList(tuple(base), ROTATION)
    for _ in range(level):
        out = monotone_step(out)
    return out


def amplify_expected_modulus(level: int, x: float) -> float:
    """x^(2 * 3^(level+1))."""
    if x < 1:
        raise DomainError("amplify_expected_modulus needs x >= 1")
    exponent = 2 * 3 ** (level + 1)
    log_val = exponent * math.log(x) if x > 1 else 0.0
    if log_val > 709.0:
        raise DomainError(f"x^{exponent} overflows double precision (log value {log_val:.1f})")
    return x ** exponent


def gen_constant(n: int, phi: float) -> PhaseList:
    """n boosts with n + 1 identical phases (rotation convention)."""
    if n < 1:
        raise DomainError("gen_constant needs n >= 1 boosts")
    return PhaseList((float(phi),) * (n + 1), ROTATION)


def constant_eigenvalues(phi: float, x: float) -> tuple[complex, complex]:
    """Eigenvalues cos(phi) (x +- sqrt(x^2 - sec^2 phi)) of e^{i phi Z} V."""
    c = math.cos(phi)
    root = np.sqrt(complex(x * x - 1.0 / (c * c)))
    return complex(c * (x + root)), complex(c * (x - root))


def _closed_form(n: int, phi: float, x: float) -> complex:
    c, s = math.cos(phi), math.sin(phi)
    r = np.sqrt(complex(x * x * c * c - 1.0))
    lp, lm = x * c + r, x * c - r
    bracket = (r + 1j * x * s) * lp**n + (r - 1j * x * s) * lm**n
    return complex(np.exp(1j * phi) * bracket / (2.0 * r))


def _closed_form_displayed(n: int, phi: float, x: float) -> complex:
    c, s = math.cos(phi), math.sin(phi)
    r = np.sqrt(complex(x * x * c * c - 1.0))
    lp, lm = x * c + r, x * c - r
    bracket = (r - 1j * x * s) * lm**n + (r + 1j * x * s) * lp**n
    pref = 0.5 * np.exp(-1j * (n - 1) * phi) / np.sqrt(complex(x * x - 1.0 / (c * c)))
    return complex(pref * bracket)


def constant_closed_form(n: int, phi: float, x: float, variant: str = "corrected") -> complex:
    """Top-left entry of the constant-phase protocol from the eigen-decomposition.

    ``P = e^{i phi} [ (r + i x sin phi) l+^n + (r - i x sin phi) l-^n ] / (2 r)``
    with ``r = sqrt(x^2 cos^2 phi - 1)`` and ``l+- = x cos phi +- r``.
    ``variant="displayed"`` evaluates the version with prefactor
    ``e^{-i(n-1)phi} / (2 sqrt(x^2 - sec^2 phi))``, whose modulus is smaller
    by a factor cos(phi). Within 1e-6 of x = sec(phi) the two-sided average
    is returned and a DegenerateLimitWarning is issued.
    """
    if n < 1:
        raise DomainError("closed form needs n >= 1")
    f = {"corrected": _closed_form, "displayed": _closed_form_displayed}.get(variant)
    if f is None:
        raise DomainError(f"unknown closed-form variant {variant!r}")
    crit = 1.0 / math.cos(phi)
    if abs(abs(x) - crit) < DEGENERATE_WINDOW:
        warnings.warn("degenerate point, limit taken", DegenerateLimitWarning, stacklevel=2)
        sign = 1.0 if x >= 0 else -1.0
        return 0.5 * (f(n, phi, sign * (crit + DEGENERATE_WINDOW)) + f(n, phi, sign * (crit - DEGENERATE_WINDOW)))
    return f(n, phi, x)


def constant_oracle(n: int, phi: float, x: float, dps: int | None = None) -> complex:
    """Brute-force matrix product for the constant-phase protocol.

    Beyond cosh(beta_max) no boost is admissible, so the composed transfer
    polynomial is evaluated instead.
    """
    if 1.0 <= x <= config.x_max():
        return complex(eval_protocol(gen_constant(n, phi), Signal.at(x), dps=dps).a11)
    from .polyring import eval_poly, protocol_to_pair

    return complex(eval_poly(protocol_to_pair(gen_constant(n, phi), dps=dps).p, x))


def secant_bound(phi: float, x: float) -> float:
    c = math.cos(phi)
    return (1.0 / math.cos(0.5 * math.pi * x * c) - 1.0) / (1.0 / math.cos(0.5 * math.pi * c) - 1.0)


def bound(kind: str, n: int, phi: float, x: float) -> float:
    """Analytic bounds for the constant-phase protocol.

    secant: B(phi, x), compared with |P|^2 on [1, sec phi).
    simple: 1 + x tan(phi) / sqrt(sec^2 phi - x^2), compared with |P|.
    chebyshev_lower: T_n(x cos phi) on [sec phi, inf); |P| >= sqrt of it.
    """
    if not (0.0 < phi < math.pi / 2):
        raise DomainError(f"phi = {phi} outside (0, pi/2)")
    crit = 1.0 / math.cos(phi)
    if kind in (SECANT, SIMPLE):
        if abs(x - crit) <= POLE_TOL:
            return math.inf
        if not (1.0 <= x < crit):
            raise DomainError(f"{kind} bound needs 1 <= x < sec(phi) = {crit:.12g}, got x = {x}")
        if kind == SECANT:
            return secant_bound(phi, x)
        return 1.0 + x * math.tan(phi) / math.sqrt(crit * crit - x * x)
    if kind == CHEBYSHEV_LOWER:
        if x < crit - POLE_TOL:
            raise DomainError(f"chebyshev_lower bound needs x >= sec(phi) = {crit:.12g}, got x = {x}")
        t = max(1.0, x * math.cos(phi))
        return math.cosh(n * math.acosh(t))
    raise DomainError(f"unknown bound kind {kind!r}; expected one of {BOUND_KINDS}")


@dataclass(frozen=True)
class AsymptoteReport:
    kind: str
    quantity: str  # "|P|" or "|P|^2"
    displayed: float
    derived: float
    oracle: float

    @property
    def ratio(self) -> float:
        """oracle / displayed."""
        return self.oracle / self.displayed if self.displayed else math.inf


def asymptote(kind: str, n: int, phi: float, arg: float) -> AsymptoteReport:
    """Leading-order behaviour of the constant-phase protocol with an oracle value.

    large_x (arg = x): |P| ~ x^n cos^{n+1}(phi) / 2^{n+1} as displayed;
        the eigen-decomposition gives (2 x cos phi)^n / (2 cos phi).
    near_critical_minus (arg = eps): B(phi, sec phi - eps) ~
        eps^-1 (2/pi) sec(phi) / D - 1 / D with D = sec(pi cos(phi)/2) - 1.
    near_critical_plus (arg = eps): displayed sqrt(1 + n^2 tan^2 phi) for
        |P|^2; the exact limit of |P|^2 is 1 + n^2 tan^2 phi.
    """
    if not (0.0 < phi < math.pi / 2):
        raise DomainError(f"phi = {phi} outside (0, pi/2)")
    c = math.cos(phi)
    crit = 1.0 / c
    if kind == LARGE_X:
        x = float(arg)
        displayed = x**n * c ** (n + 1) / 2 ** (n + 1)
        derived = (2 * x * c) ** n / (2 * c)
        oracle = abs(constant_oracle(n, phi, x))
        return AsymptoteReport(kind, "|P|", displayed, derived, oracle)
    if kind == NEAR_MINUS:
        eps = float(arg)
        if not (0 < eps < crit - 1):
            raise DomainError(f"eps must lie in (0, sec(phi) - 1) = (0, {crit - 1:.6g})")
        d = 1.0 / math.cos(0.5 * math.pi * c) - 1.0
        displayed = (2 / math.pi) * crit / (d * eps) - 1.0 / d
        derived = secant_bound(phi, crit - eps)
        oracle = abs(constant_oracle(n, phi, crit - eps)) ** 2
        return AsymptoteReport(kind, "|P|^2", displayed, derived, oracle)
    if kind == NEAR_PLUS:
        eps = float(arg)
        if eps <= 0:
            raise DomainError("eps must be positive")
        t2 = math.tan(phi) ** 2
        displayed = math.sqrt(1 + n * n * t2)
        derived = 1 + n * n * t2
        oracle = abs(constant_oracle(n, phi, crit + eps)) ** 2
        return AsymptoteReport(kind, "|P|^2", displayed, derived, oracle)
    raise DomainError(f"unknown asymptote kind {kind!r}")


@dataclass(frozen=True)
class WeakStepReport:
    ok: bool
    worst_violation: float
    worst_x: float | None
    side: str | None
    checked: int

    def __bool__(self) -> bool:
        return self.ok


def weak_step_check(samples: Iterable[tuple[float, float]], g_bound: Callable[[float], float],
                    h_bound: Callable[[float], float], split: float, tol: float = 1e-9) -> WeakStepReport:
    """value <= g below the split and value >= h at or above it.

    The tolerance is relative to max(1, |bound|). The report names the worst
    violation (positive means violated).
    """
    pts = [(float(x), float(v)) for x, v in samples]
    if not pts:
        raise DomainError("weak_step_check needs samples")
    xs = [x for x, _ in pts]
    if any(b < a for a, b in zip(xs, xs[1:])):
        raise DomainError("samples must be sorted by x")
    if not (xs[0] <= split <= xs[-1]):
        raise DomainError(f"split {split} outside the sampled range [{xs[0]}, {xs[-1]}]")
    worst, worst_x, side = -math.inf, None, None
    for x, v in pts:
        if x < split:
            b = g_bound(x)
            excess = (v - b) / max(1.0, abs(b)) if math.isfinite(b) else -math.inf
            label = "below"
        else:
            b = h_bound(x)
            excess = (b - v) / max(1.0, abs(b))
            label = "above"
        if excess > worst:
            worst, worst_x, side = excess, x, label
    return WeakStepReport(worst <= tol, worst, worst_x, side, len(pts))


def min_length_estimate(step: StepSpec, phi: float | None = None) -> int:
    """ceil( delta^{-1/2} sqrt( xi cot phi + csc phi / (sec(pi cos(phi)/2) - 1) ) )."""
    if phi is None:
        phi = step.phi
    if min(abs(phi), abs(phi - math.pi / 2)) < 1e-3 or not (0 < phi < math.pi / 2):
        raise DomainError(f"phi = {phi} too close to 0 or pi/2; the length bound diverges there")
    d = 1.0 / math.cos(0.5 * math.pi * math.cos(phi)) - 1.0
    value = math.sqrt(step.xi / math.tan(phi) + 1.0 / (math.sin(phi) * d)) / math.sqrt(step.delta)
    return int(math.ceil(value))


def length_scaling(step: StepSpec) -> float:
    """The mu * xi / delta scaling figure for the minimum length."""
    return step.mu * step.xi / step.delta


def step_separation(n: int, step: StepSpec) -> float:
    """|P(mu + delta)| - |P(mu - delta)| for the constant protocol at phi = arcsec(mu)."""
    phi = step.phi
    return abs(constant_oracle(n, phi, step.mu + step.delta)) - abs(constant_oracle(n, phi, step.mu - step.delta))


def sweep_constant(n: int, phi: float, xs: Sequence[float]) -> np.ndarray:
    """P(x) of the constant protocol on a grid, via its transfer pair."""
    from .polyring import eval_poly, protocol_to_pair

    tp = protocol_to_pair(gen_constant(n, phi))
    return np.asarray(eval_poly(tp.p, np.asarray(xs, dtype=float)), dtype=complex)
