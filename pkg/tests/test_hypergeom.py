import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from biunivalent.errors import ParameterError
from biunivalent.hypergeom import (
    HohlovParams,
    bernardi_apply,
    bernardi_params,
    bernardi_quadrature,
    gauss_2f1_series,
    hohlov_apply,
    hohlov_apply_by_convolution,
    named_operator,
    phi_n,
    phi_sequence,
    pochhammer,
)
from biunivalent.series import NormalizedFunction, eval_at

from conftest import random_function

positive = st.floats(0.05, 6.0)


def test_pochhammer_examples():
    assert pochhammer(3.7, 0) == 1
    assert pochhammer(1, 4) == 24
    assert pochhammer(2, 3) == 24


def test_pochhammer_matches_gamma_ratio():
    # oracle: Gamma(alpha + n) / Gamma(alpha)
    for alpha in (0.3, 1.0, 2.5, 7.25):
        for n in range(12):
            expected = math.gamma(alpha + n) / math.gamma(alpha)
            assert pochhammer(alpha, n) == pytest.approx(expected, rel=1e-12)


def test_pochhammer_overflow():
    with pytest.raises(OverflowError):
        pochhammer(10.0, 400)


def test_phi_examples():
    assert phi_n(HohlovParams(2.3, 0.7, 5.1), 1) == 1
    ident = phi_sequence(HohlovParams(3.2, 1, 3.2), 20)
    assert np.allclose(ident, 1, rtol=1e-14, atol=0)
    libera = HohlovParams(1, 2, 3)
    assert phi_n(libera, 2) == pytest.approx(2 / 3, rel=1e-15)
    assert phi_n(libera, 3) == pytest.approx(1 / 2, rel=1e-15)
    n = np.arange(1, 51)
    assert np.allclose(phi_sequence(libera, 50), 2 / (n + 1), rtol=1e-12, atol=0)


def test_phi_matches_pochhammer_definition(rng):
    for _ in range(20):
        p = HohlovParams(*rng.uniform(0.2, 5, 3))
        direct = [
            pochhammer(p.a, n - 1) * pochhammer(p.b, n - 1) / (pochhammer(p.c, n - 1) * math.factorial(n - 1))
            for n in range(1, 31)
        ]
        assert np.allclose(phi_sequence(p, 30), direct, rtol=1e-12, atol=0)


@settings(max_examples=50, deadline=None)
@given(positive, positive, positive)
def test_phi_recurrence_and_positivity(a, b, c):
    p = HohlovParams(a, b, c)
    phi = phi_sequence(p, 50)
    assert np.all(phi > 0)
    for n in range(1, 50):
        lhs = phi[n] * ((c + n - 1) * n)
        rhs = phi[n - 1] * (a + n - 1) * (b + n - 1)
        assert lhs == pytest.approx(rhs, rel=1e-12)


def test_hohlov_params_validation():
    for bad in [(0, 1, 1), (1, -2, 1), (1, 1, math.inf), (1j, 1, 1)]:
        with pytest.raises(ParameterError):
            HohlovParams(*bad)


def test_gauss_2f1_examples():
    p = HohlovParams(2.2, 0.4, 1.3)
    assert gauss_2f1_series(p, 5).coeffs[0] == 1
    assert np.allclose(gauss_2f1_series(HohlovParams(1, 1, 1), 10).coeffs, 1)
    assert gauss_2f1_series(HohlovParams(1, 2, 3), 4).coeffs[2] == pytest.approx(0.5, rel=1e-15)


def test_gauss_2f1_closed_form():
    # 2F1(1, 1; 2; z) = -log(1 - z) / z
    s = gauss_2f1_series(HohlovParams(1, 1, 2), 60)
    z = 0.3 + 0.2j
    assert eval_at(s, z) == pytest.approx(-np.log(1 - z) / z, rel=1e-14)


def test_hohlov_examples(rng):
    f = random_function(rng, 12)
    assert np.allclose(hohlov_apply(HohlovParams(2.5, 1, 2.5), f).coeffs, f.coeffs, rtol=1e-15, atol=0)
    out = hohlov_apply(HohlovParams(1, 2, 3), NormalizedFunction.from_taylor([1]))
    assert np.allclose(out.coeffs, [0, 1, 2 / 3])
    z = NormalizedFunction.identity(5)
    assert np.array_equal(hohlov_apply(HohlovParams(0.3, 4, 1.1), z).coeffs, z.coeffs)


def test_hohlov_factorization(rng):
    for _ in range(20):
        p = HohlovParams(*rng.uniform(0.2, 5, 3))
        f = random_function(rng, 16)
        a = hohlov_apply(p, f).coeffs
        b = hohlov_apply_by_convolution(p, f).coeffs
        assert np.allclose(a, b, rtol=1e-12, atol=1e-300)


def test_hohlov_order_argument(rng):
    f = random_function(rng, 6)
    assert hohlov_apply(HohlovParams(1, 1, 1), f, order=10).order == 10


def test_bernardi_examples(rng):
    out = bernardi_apply(NormalizedFunction.from_taylor([1]), 1)
    assert np.allclose(out.coeffs, [0, 1, 2 / 3])
    f = random_function(rng, 10)
    n = np.arange(1, 11)
    assert np.allclose(bernardi_apply(f, 0).coeffs[1:], f.coeffs[1:] / n, rtol=1e-15)
    for delta in (0, 1, 2.5):
        g = random_function(rng, 14)
        a = bernardi_apply(g, delta).coeffs
        b = hohlov_apply(bernardi_params(delta), g).coeffs
        assert np.allclose(a, b, rtol=1e-12, atol=0)


def test_bernardi_quadrature_matches_termwise(rng):
    f = random_function(rng, 14)
    for delta in (0, 1, 2.5):
        image = bernardi_apply(f, delta)
        for z in (0.3, 0.5j, -0.2 + 0.4j):
            assert abs(bernardi_quadrature(f, delta, z) - eval_at(image, z)) <= 1e-8


def test_bernardi_delta_domain():
    with pytest.raises(ParameterError):
        bernardi_apply(NormalizedFunction.identity(3), -1)


def test_named_operators(rng):
    assert named_operator("libera") == HohlovParams(1, 2, 3)
    assert named_operator("alexander") == HohlovParams(1, 1, 2)
    assert named_operator("carlson_shaffer", 2, 5) == HohlovParams(2, 1, 5)
    f = random_function(rng, 9)
    assert np.allclose(hohlov_apply(named_operator("identity", 1.7), f).coeffs, f.coeffs, rtol=1e-15, atol=0)
    with pytest.raises(ParameterError):
        named_operator("ruscheweyh")
    with pytest.raises(ParameterError):
        named_operator("carlson_shaffer", 2)
