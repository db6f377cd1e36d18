import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from numpy.polynomial import chebyshev as C

from hyperqsp.algebra import SU11_TO_SU2, PhaseList, Signal, eval_protocol, substitute_picture
from hyperqsp.errors import (DomainError, FactorizationError, InfeasibleError, NotCompletableError,
                             StrippingError)
from hyperqsp.polyring import (EVEN, ODD, ParityPoly, TransferPair, boost_pair, chebyshev, compose_pair, eval_poly,
                               identity_defect, protocol_to_pair)
from hyperqsp.synthesis import (HALF_LINE, CompletionInput, build_F, complete_pair, factor_F, layer_strip,
                                recover_phases, synthesize)

angles = st.floats(-math.pi, math.pi, allow_nan=False)


def mono(p: ParityPoly) -> np.ndarray:
    return C.cheb2poly(p.to_complex())


def real_parts(tp: TransferPair) -> CompletionInput:
    return CompletionInput.from_coeffs(tp.p.to_complex().real, tp.q.to_complex().real, tp.n_boosts)


def test_build_F_examples():
    f = build_F(CompletionInput.from_coeffs([0, 1], [1], 1))
    assert np.max(np.abs(f.to_complex())) <= 1e-15
    f = build_F(CompletionInput.from_coeffs([0, 0, 1], [0, 2], 2))
    assert np.max(np.abs(f.to_complex())) <= 1e-15
    f = build_F(CompletionInput.from_coeffs([0, 0, 1], [0], 2))
    assert np.allclose(mono(f), [0, 0, -4, 0, 4])


def test_factor_F_examples():
    sf = factor_F(ParityPoly([0.0], EVEN))
    assert np.max(np.abs(sf.a.to_complex())) == 0 and np.max(np.abs(sf.c.to_complex())) == 0
    f = ParityPoly(C.poly2cheb([0, 0, -4, 0, 4]), EVEN)
    sf = factor_F(f)
    # the (x^2 - 1) content lands in c: F = (x^2 - 1) c^2 - a^2 with c = 2x, a = 0
    assert np.allclose(np.abs(mono(sf.c)), [0, 2], atol=1e-12)
    assert np.max(np.abs(sf.a.to_complex())) <= 1e-12
    # (x^2 - 1)^2 is positive inside (-1, 1), where -F would have to be a sum of squares
    with pytest.raises(FactorizationError):
        factor_F(ParityPoly(C.poly2cheb([1, 0, -2, 0, 1]), EVEN))


def test_complete_pair_examples():
    tp = complete_pair(CompletionInput.from_coeffs([0, 1], [1], 1))
    assert np.allclose(mono(tp.p), [0, 1]) and np.allclose(mono(tp.q), [1])
    tp = complete_pair(CompletionInput.from_coeffs([0, 0, 1], [0], 2))
    assert np.allclose(mono(tp.p), [-1, 0, 2], atol=1e-14)
    assert np.allclose(mono(tp.q), [0, 2j], atol=1e-14)
    tp = complete_pair(CompletionInput.from_coeffs([0, 0, 0, 1], [0], 3))
    assert identity_defect(tp) <= 1e-8
    assert np.allclose(tp.p.to_complex().real, [0, 0, 0, 1])


def test_completion_input_gauge():
    with pytest.raises(DomainError):
        CompletionInput.from_coeffs([0, -1], [0], 1)
    with pytest.raises(DomainError):
        CompletionInput.from_coeffs([0.5, 0.5], [0], 1)


def test_half_line_check_is_weaker_than_interval():
    # the real part of a genuine protocol always passes the interval check;
    # the half-line criterion is not enough to decide completability by itself
    tp = protocol_to_pair([0.3, 1.7, -0.9, 2.4])
    complete_pair(real_parts(tp))
    try:
        complete_pair(real_parts(tp), check=HALF_LINE)
    except InfeasibleError:
        pass


def test_layer_strip_examples():
    assert layer_strip(boost_pair(0.7)).phases == pytest.approx((0.7,))
    phases = (0.1, 0.4, -0.2)
    assert layer_strip(protocol_to_pair(phases)).phases == pytest.approx(phases, abs=1e-12)
    phi = 1.3
    assert layer_strip(compose_pair(boost_pair(phi), boost_pair(phi))).phases == pytest.approx((phi, phi))


def test_layer_strip_cancelling_pairs():
    # V_phi V_{phi+pi} is the identity, so these pairs have degree deficits
    for phases in ([0.0, math.pi], [0.3, 0.3 + math.pi, 1.1], [0.5, 0.5 + math.pi, 0.2, 0.2 + math.pi]):
        tp = protocol_to_pair(phases)
        out = layer_strip(tp)
        assert len(out) == len(phases)
        assert protocol_to_pair(out).max_coeff_diff(tp) <= 1e-14


def test_synthesize_examples():
    for n in (1, 2, 5, 12):
        phases = synthesize(chebyshev("T", n))
        assert len(phases) == n
        assert protocol_to_pair(phases).p.to_complex().real == pytest.approx(np.eye(n + 1)[n], abs=1e-10)
    assert synthesize([0, 1]).phases == pytest.approx((math.pi / 2,))
    assert synthesize([0, 1], picture="su2").phases == pytest.approx((0.0,))
    target = C.poly2cheb([0, 0, 0, 1])
    phases = synthesize(target)
    assert len(phases) == 3
    xs = np.linspace(-1, 1, 201)
    got = np.asarray(eval_poly(protocol_to_pair(phases).p, xs)).real
    assert np.max(np.abs(got - xs**3)) <= 1e-6


def test_synthesize_rejections():
    with pytest.raises(NotCompletableError):
        synthesize([0, 2])
    with pytest.raises(DomainError):
        synthesize([0.5, 0.5])
    with pytest.raises(DomainError):
        synthesize([0, 1j])


def test_synthesized_su2_phases_embed_target():
    """The SU(2)-picture phases give a circular protocol whose P equals the hyperbolic one continued."""
    phases = synthesize(C.poly2cheb([0, 0, 0, 1]))
    su2 = substitute_picture(phases, SU11_TO_SU2)
    assert isinstance(su2, PhaseList) and len(su2) == 3
    for theta in (0.2, 0.9, 2.1):
        m = eval_protocol(su2, Signal.circular(theta))
        assert abs(complex(m.a11).real - math.cos(theta) ** 3) <= 1e-8


def _real_p(tp: TransferPair) -> np.ndarray:
    return tp.p.to_complex().real


@settings(max_examples=25)
@given(st.integers(0, 2**32 - 1), st.integers(1, 10))
def test_round_trip_from_real_parts(seed, n):
    # generic phases; structured inputs are covered below
    phases = np.random.default_rng(seed).uniform(-math.pi, math.pi, n)
    tp = protocol_to_pair(phases)
    done = complete_pair(real_parts(tp))
    assert identity_defect(done) <= 1e-8
    real_only = TransferPair(done.p.real(), done.q.real(), done.n_boosts)
    assert real_only.max_coeff_diff(TransferPair(tp.p.real(), tp.q.real(), tp.n_boosts)) <= 1e-12
    again = protocol_to_pair(layer_strip(done))
    assert again.max_coeff_diff(done) <= 1e-6


@settings(max_examples=40)
@given(st.lists(st.sampled_from([0.0, 0.5, 1.0, 3.125, -math.pi / 2]), min_size=1, max_size=9))
def test_structured_round_trip_is_accurate_or_raises(phases):
    """Repeated and nearly cancelling phases either round-trip or fail loudly."""
    tp = protocol_to_pair(phases)
    try:
        out = recover_phases(real_parts(tp))
    except (FactorizationError, StrippingError):
        return
    # stripping verifies the rebuilt pair to 1e-6 relative to its largest coefficient
    scale = max(1.0, float(np.max(np.abs(tp.p.to_complex()))), float(np.max(np.abs(tp.q.to_complex()))))
    assert np.max(np.abs(_real_p(protocol_to_pair(out)) - _real_p(tp))) <= 2e-6 * scale


def test_clustered_roots_need_extended_completion():
    tp = protocol_to_pair([0.5, 0.5, 0.0, 0.5, 0.5])
    with pytest.raises(FactorizationError):
        layer_strip(complete_pair(real_parts(tp)))
    out = recover_phases(real_parts(tp))
    assert np.max(np.abs(_real_p(protocol_to_pair(out)) - _real_p(tp))) <= 1e-12


def test_ill_conditioned_phases_fail_loudly():
    tp = protocol_to_pair([0.0, 0.0, 3.125, 0.0, 0.0, 1.0])
    with pytest.raises(StrippingError, match="inaccurate"):
        recover_phases(real_parts(tp))


@settings(max_examples=25)
@given(st.lists(angles, min_size=1, max_size=8))
def test_strip_inverts_protocol_to_pair(phases):
    tp = protocol_to_pair(phases, dps=40)
    out = layer_strip(tp, dps=40)
    assert protocol_to_pair(out, dps=40).max_coeff_diff(tp) <= 1e-9 * max(1.0, float(np.max(np.abs(tp.p.to_complex()))))
