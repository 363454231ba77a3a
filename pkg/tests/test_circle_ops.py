import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy import integrate

from homkernel import circle_ops as co
from homkernel import funcspace as fs
from homkernel import verify as vf

SQ = math.sqrt(2 * math.pi)
ALPHAS = fs.circle_nodes(64)


def e(k):
    return fs.trigpoly({k: 1.0})


def random_trigpoly(degree, seed):
    return vf.random_trigpoly(np.random.default_rng(seed), degree)[0]


# ---------------------------------------------------------------- multipliers

@pytest.mark.parametrize("mult", [co.k1_multiplier, co.hilbert_multiplier, co.j_multiplier])
def test_multipliers_odd(mult):
    ks = np.arange(-40, 41)
    np.testing.assert_array_equal(mult(-ks), -mult(ks))


def test_multiplier_values_and_identity():
    ks = np.arange(-9, 10)
    np.testing.assert_array_equal(co.k1_multiplier([1, -1, 2, 0, 3, -4]),
                                  [-2j, 2j, 0, 0, -2j, 0])
    np.testing.assert_array_equal(co.hilbert_multiplier(ks) + co.j_multiplier(ks),
                                  co.k1_multiplier(ks))


@pytest.mark.parametrize("k", [1, 3, 7, -1, -5])
def test_k1_multiplier_against_scipy(k):
    # (1/pi) pv int e^{ik(a-t)}/sin t dt = e^{ika} (-2i/pi) int_0^pi sin(kt)/sin t dt
    val = integrate.quad(lambda t: math.sin(k * t) / math.sin(t), 0, math.pi, limit=200)[0]
    assert co.k1_multiplier(k) == pytest.approx(-2j / math.pi * val, abs=1e-12)


# ---------------------------------------------------------------- K1

@pytest.mark.parametrize("k,m", [(1, -2j), (2, 0), (-1, 2j), (3, -2j), (-4, 0), (0, 0)])
def test_k1_quadrature_on_exponentials(k, m):
    img = co.k1_apply_quadrature(e(k), 2048)
    np.testing.assert_allclose(img.values, m * e(k)(img.nodes), atol=1e-8)


def test_k1_spectral_examples():
    out = co.k1_apply_spectral(fs.FourierSpectrum.from_dict({1: 1.0}))
    assert out[1] == -2j
    assert np.all(co.k1_apply_spectral(fs.FourierSpectrum.from_dict({0: 1.0})).coeffs == 0)


@pytest.mark.parametrize("seed", range(3))
def test_k1_backends_agree_degree_32(seed):
    phi = random_trigpoly(32, seed)
    q = co.k1_apply(phi, 4096, backend="quadrature").values
    s = co.k1_apply(phi, 4096, backend="spectral").values
    assert np.max(np.abs(q - s)) <= 1e-8


def test_k1_regularized_matches_spectral():
    phi = random_trigpoly(12, 4)
    r = co.k1_apply(phi, alphas=ALPHAS, backend="regularized")
    s = co.k1_apply(phi, alphas=ALPHAS, backend="spectral")
    np.testing.assert_allclose(r, s, atol=1e-12)


def test_k1_real_to_real():
    cusp = fs.holder_cusp(0.5)
    img = co.k1_apply_quadrature(lambda t: cusp(t - 0.4), 512)
    assert np.isrealobj(img.values)
    np.testing.assert_allclose(co.k1_apply_quadrature(fs.cosine(3), 512).values.imag, 0)


def test_k1_of_constant_is_zero():
    assert np.all(co.k1_apply_quadrature(fs.constant(2.5), 256).values == 0)


def test_k1_norm_on_first_mode():
    q = co.k1_apply_quadrature(e(1), 2048)
    ratio = np.linalg.norm(q.values) / np.linalg.norm(e(1)(q.nodes))
    assert ratio == pytest.approx(2.0, abs=1e-10)


def test_unknown_backend():
    with pytest.raises(ValueError):
        co.k1_apply(e(1), 64, backend="fast")
    with pytest.raises(ValueError):
        co.hilbert_circle(e(1), 64, backend="fast")


# ---------------------------------------------------------------- H

@pytest.mark.parametrize("k,m", [(1, -1j), (-3, 1j), (2, -1j), (0, 0)])
@pytest.mark.parametrize("backend", ["quadrature", "spectral", "regularized"])
def test_hilbert_circle_examples(k, m, backend):
    vals = co.hilbert_circle(e(k), 1024, alphas=ALPHAS, backend=backend)
    np.testing.assert_allclose(vals, m * e(k)(ALPHAS), atol=1e-8)


@given(st.integers(0, 2 ** 16))
@settings(max_examples=10, deadline=None)
def test_hilbert_backends_agree(seed):
    phi = random_trigpoly(10, seed)
    q = co.hilbert_circle(phi, 1024, alphas=ALPHAS)
    s = co.hilbert_circle(phi, 1024, alphas=ALPHAS, backend="spectral")
    assert np.max(np.abs(q - s)) <= 1e-8


# ---------------------------------------------------------------- J

W = fs.HolderWitness(0.5, 10.0)


@pytest.mark.parametrize("k,m", [(1, -1j), (2, 1j), (-1, 1j), (-2, -1j), (5, -1j)])
def test_j_examples(k, m):
    vals = co.j_apply(e(k), W, alphas=ALPHAS)
    np.testing.assert_allclose(vals, m * e(k)(ALPHAS), atol=1e-10)


def test_j_of_constant_is_zero():
    assert np.max(np.abs(co.j_apply(fs.constant(3.0), W, alphas=ALPHAS))) < 1e-14


def test_j_direct_oracle_on_cusp():
    # scipy on the folded form: the bracket vanishes at t = pi by periodicity
    g = 0.5
    phi = fs.holder_cusp(g)
    a = 0.7
    f = lambda t: float(phi(a - t) - phi(a + t)) * math.tan(t / 2) / (2 * math.pi)
    ref = integrate.quad(f, 0, math.pi, limit=400, points=[a])[0]
    assert co.j_apply(phi, fs.HolderWitness(g, 1.0), alphas=[a])[0] == pytest.approx(ref, abs=1e-7)


def test_j_refuses_without_witness():
    with pytest.raises(ValueError, match="HolderWitness"):
        co.j_apply(e(1), None, alphas=ALPHAS)


# ---------------------------------------------------------------- K1 = H + J

def test_decomposition_on_trigpoly():
    phi = random_trigpoly(8, 11)
    assert co.k1_decomposition_check(phi, W, 1024, alphas=ALPHAS) <= 1e-8
    assert co.k1_decomposition_check(e(0), W, 256, alphas=ALPHAS) <= 1e-14


@pytest.mark.parametrize("g", [0.25, 0.5, 0.75])
def test_decomposition_on_cusp_regularized(g):
    phi = fs.holder_cusp(g)
    dev = co.k1_decomposition_check(phi, fs.HolderWitness(g, 2 ** -g), alphas=ALPHAS,
                                    hilbert_backend="regularized", k1_backend="regularized")
    assert dev <= 1e-10


def test_decomposition_on_cusp_midpoint_example():
    phi = fs.holder_cusp(0.5)
    dev = co.k1_decomposition_check(phi, fs.HolderWitness(0.5, 2 ** -0.5), 2 ** 14,
                                    alphas=ALPHAS)
    assert dev <= 1e-4


# ---------------------------------------------------------------- polar operators

def test_k2_tensor_examples():
    a = np.array([0.0, 0.4, -2.0])
    # the polar kernel 1/sin(theta - alpha) reflects K1, so the mode-1 factor is +2i
    phi = fs.PolarTensorSum([(fs.indicator(0, 1), e(1))])
    np.testing.assert_allclose(co.k2_apply(phi, a), 2j * e(1)(a), atol=1e-8)
    phi = fs.PolarTensorSum([(fs.exp_decay(), e(3))])
    np.testing.assert_allclose(co.k2_apply(phi, a), 2j * e(3)(a), atol=1e-6)


@pytest.mark.parametrize("backend", ["quadrature", "spectral"])
def test_k2_radial_null(backend):
    phi = fs.PolarTensorSum([(fs.exp_decay(2.0), fs.constant(1.7)),
                             (fs.indicator(0, 3), fs.constant(-0.2))])
    assert np.max(np.abs(co.k2_apply(phi, ALPHAS, 256, backend=backend))) <= 1e-14


def test_calK_examples():
    phi = fs.PolarTensorSum([(fs.indicator(0, 1), e(1))])
    assert co.calK_apply(phi, 2.0, 0.0)[0] == pytest.approx(1j / SQ, abs=1e-8)
    v1 = co.calK_apply(phi, 1.0, [0.3])
    v2 = co.calK_apply(phi, 2.0, [0.3])
    np.testing.assert_allclose(v2, v1 / 2, rtol=1e-14)
    with pytest.raises(ValueError):
        co.calK_apply(phi, 0.0, [0.3])


def test_calK_direct_matches_tensor_form():
    phi = fs.PolarTensorSum([(fs.exp_decay(1.5), e(1)), (fs.indicator(0, 2), fs.cosine(3))])
    direct = co.calK_direct(lambda rho, th: phi(rho, th), 1.5, 0.8, n_angle=256,
                            rho_max=60.0)
    assert direct == pytest.approx(co.calK_apply(phi, 1.5, [0.8])[0], abs=1e-8)
    with pytest.raises(ValueError):
        co.calK_direct(lambda rho, th: phi(rho, th), 0.0, 0.8)
