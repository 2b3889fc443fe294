#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# SPDX-License-Identifier: BSD-3-Clause
# test_fractional
# Copyright (C) 2026 fade contributors
# see AUTHORS.rst for a list of contributors

"""
Checks the fractional building blocks: admissibility, Grunwald weights, skew coefficients and the symbol
"""

import cmath
import math
import pytest
from numpy import abs as np_abs, arange, array, conj, exp, linspace, sum as np_sum
from numpy.random import default_rng
from numpy.testing import assert_allclose, assert_array_equal
from scipy.special import gammaln

from fade.core.exceptions import ParametersError
from fade.core.fractional import grunwald_weights, riesz_feller_symbol, skew_coefficients, validate_params
from fade.core.parameters import ModelParams


def params(**changes):
    base = {'nu': 0.3, 'd': 3, 'alpha': 1.5, 'theta': 0.3, 'L': 7, 'T': 1}
    return ModelParams(**{**base, **changes})


@pytest.mark.parametrize('changes', [{}, {'alpha': 2, 'theta': 0}, {'nu': -1.0}, {'alpha': 1.2, 'theta': -0.8}])
def test_admissible_parameters(changes):
    p = params(**changes)
    assert validate_params(p) is p


@pytest.mark.parametrize('changes, message', [
    ({'theta': 0.6}, 'skew bound'),
    ({'alpha': 2, 'theta': 0.1}, 'skew bound'),
    ({'alpha': 1.0}, 'order range'),
    ({'alpha': 2.5}, 'order range'),
    ({'d': 0}, 'sign constraint: d'),
    ({'L': -7}, 'sign constraint: L'),
    ({'T': 0}, 'sign constraint: T'),
    ({'nu': float('nan')}, 'nu must be finite'),
])
def test_inadmissible_parameters(changes, message):
    with pytest.raises(ParametersError, match=message):
        validate_params(params(**changes))


def test_every_violation_is_reported():
    with pytest.raises(ParametersError) as e:
        validate_params(params(alpha=3, d=-1, T=-1))
    assert 'order range' in str(e.value)
    assert 'sign constraint: d' in str(e.value)
    assert 'sign constraint: T' in str(e.value)


def test_missing_model_constant():
    with pytest.raises(ParametersError, match='must include'):
        ModelParams(nu=0.3, d=3, alpha=1.5, L=7)


def test_grunwald_weights_closed_forms():
    assert_allclose(grunwald_weights(1.5, 3).values, [1, -1.5, 0.375, 0.0625], rtol=0, atol=1e-15)
    assert_array_equal(grunwald_weights(2, 3).values, [1, -2, 1, 0])
    assert grunwald_weights(1.5, 0).values.tolist() == [1.0]


def test_grunwald_weights_sum_to_zero():
    assert abs(np_sum(grunwald_weights(1.5, 1000).values)) < 1e-4


@pytest.mark.parametrize('alpha', [1.1, 1.5, 1.9])
def test_grunwald_recurrence_against_log_gamma(alpha):
    xi = grunwald_weights(alpha, 50).values
    k = arange(51)
    magnitude = exp(gammaln(k - alpha) - gammaln(-alpha) - gammaln(k + 1))
    assert_allclose(np_abs(xi), magnitude, rtol=1e-12)
    assert xi[0] == 1
    assert xi[1] == -alpha


def test_grunwald_weights_positive_after_first_two():
    for alpha in linspace(1.01, 1.99, 25):
        assert (grunwald_weights(alpha, 200).values[2:] > 0).all()


@pytest.mark.parametrize('alpha, K', [(1.0, 3), (2.1, 3), (1.5, -1), (1.5, 2.5)])
def test_grunwald_weights_invalid(alpha, K):
    with pytest.raises(ParametersError):
        grunwald_weights(alpha, K)


def test_skew_coefficients_values():
    symmetric = skew_coefficients(1.5, 0)
    assert symmetric.a_r == symmetric.a_l
    assert symmetric.a_r == pytest.approx(-0.70711, abs=1e-5)
    skewed = skew_coefficients(1.5, 0.3)
    assert skewed.a_r == pytest.approx(-0.95106, abs=1e-5)
    assert skewed.a_l == pytest.approx(-0.30902, abs=1e-5)
    assert skewed.a_r == pytest.approx(math.sin(0.6 * math.pi) / math.sin(1.5 * math.pi), rel=1e-14)


def test_skew_coefficients_classical_limit():
    assert skew_coefficients(2, 0) == (-0.5, -0.5)
    # the generic formula tends to the same value
    near = skew_coefficients(2 - 1e-7, 0)
    assert near.a_r == pytest.approx(-0.5, abs=1e-6)


def test_skew_coefficients_mirror_symmetry():
    for alpha, theta in [(1.5, 0.3), (1.2, 0.7), (1.8, 0.1)]:
        forward, mirrored = skew_coefficients(alpha, theta), skew_coefficients(alpha, -theta)
        assert forward.a_r == pytest.approx(mirrored.a_l, rel=1e-14)
        assert forward.a_l == pytest.approx(mirrored.a_r, rel=1e-14)


def test_skew_coefficients_reject_skew_bound():
    with pytest.raises(ParametersError, match='skew bound'):
        skew_coefficients(1.5, 0.6)


def test_symbol_values():
    assert riesz_feller_symbol(0.0, 1.5, 0.3) == 0
    assert riesz_feller_symbol(1.0, 2, 0) == 1
    expected = 2 ** 1.5 * cmath.exp(-0.15j * math.pi)
    assert complex(riesz_feller_symbol(-2.0, 1.5, 0.3)) == pytest.approx(expected, rel=1e-14)


def test_symbol_vectorized_and_conjugate_symmetric():
    k = linspace(-10, 10, 101)
    psi = riesz_feller_symbol(k, 1.5, 0.3)
    assert psi.shape == k.shape
    assert_allclose(riesz_feller_symbol(-k, 1.5, 0.3), conj(psi), rtol=1e-15)


def test_symbol_real_part_positive():
    rng = default_rng(1234)
    for _ in range(1000):
        alpha = rng.uniform(1.001, 2.0)
        bound = min(alpha, 2 - alpha)
        theta = rng.uniform(-bound, bound)
        k = rng.uniform(-50, 50)
        if k == 0:
            continue
        assert riesz_feller_symbol(k, alpha, theta).real > 0


def test_symbol_rejects_inadmissible_order():
    with pytest.raises(ParametersError, match='order range'):
        riesz_feller_symbol(array([1.0]), 0.5, 0)
