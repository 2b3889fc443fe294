#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# SPDX-License-Identifier: BSD-3-Clause
# fade.core.fractional: Riesz-Feller operator building blocks
# Copyright (C) 2026 fade contributors
# see AUTHORS.rst for a list of contributors

"""
fade.core.fractional
====================

Building blocks of the Riesz-Feller derivative shared by the finite-difference and spectral solvers:
admissibility of the model constants, normalized Grunwald weights, skew coefficients of the shifted Grunwald
formula and the Fourier symbol.

The operator is defined through its symbol: the Fourier transform (convention ``F[f](k) = int exp(ikx) f(x) dx``)
of ``D^alpha_theta f`` is ``-psi(k) F[f](k)`` with ``psi(k) = |k|^alpha exp(i sign(k) theta pi / 2)``.
"""

from collections import namedtuple
from logging import getLogger
from math import isfinite
from numpy import abs as np_abs, arange, asarray, concatenate, cos, cumprod, ndim, ones, pi, sign, sin

from fade.core.exceptions import ParametersError
from fade.core.parameters import ModelParams

logger = getLogger(__name__)


class GrunwaldWeights(namedtuple('GrunwaldWeights', 'alpha values')):
    """Normalized Grunwald weights xi_{alpha,k} = Gamma(k - alpha) / (Gamma(-alpha) Gamma(k + 1)), k = 0..K

    :param alpha: fractional order
    :param values: numpy array of the K + 1 weights
    """


class SkewCoefficients(namedtuple('SkewCoefficients', 'a_r a_l')):
    """Weights of the left- and right-sided shifted Grunwald sums

    :param a_r: coefficient of the left-sided (-inf to x) derivative
    :param a_l: coefficient of the right-sided (x to +inf) derivative
    """


def _order_and_skew_violations(alpha: float, theta: float):
    violations = []
    if not 1 < alpha <= 2:
        violations.append(f'order range: alpha must satisfy 1 < alpha <= 2, got alpha = {alpha}')
    elif abs(theta) > min(alpha, 2 - alpha):
        violations.append(f'skew bound: |theta| must not exceed min(alpha, 2 - alpha) = {min(alpha, 2 - alpha):g}, '
                          f'got theta = {theta}')
    return violations


def validate_params(params: ModelParams) -> ModelParams:
    """Check the admissibility constraints of the model constants

    Returns the parameters unchanged, or raises a :class:`ParametersError` naming every violated constraint.

    >>> p = validate_params(ModelParams(nu=0.3, d=3, alpha=1.5, theta=0.3, L=7, T=1))
    >>> p.alpha
    1.5
    """
    values = params.asdict()
    violations = [f'{key} must be finite' for key, value in values.items() if not isfinite(value)]
    if not violations:
        violations.extend(_order_and_skew_violations(params.alpha, params.theta))
        for key in ('d', 'L', 'T'):
            if values[key] <= 0:
                violations.append(f'sign constraint: {key} must be positive, got {key} = {values[key]}')
    if violations:
        raise ParametersError('Inadmissible model parameters: ' + '; '.join(violations))
    return params


def grunwald_weights(alpha: float, K: int) -> GrunwaldWeights:
    """Grunwald weights xi_{alpha,0..K} by the recurrence xi_k = xi_{k-1} (k - 1 - alpha) / k

    The Gamma ratio is never evaluated directly: Gamma(k - alpha) overflows long before the weights become
    negligible.

    >>> [float(v) for v in grunwald_weights(1.5, 3).values]
    [1.0, -1.5, 0.375, 0.0625]
    >>> [float(v) for v in grunwald_weights(2, 3).values]
    [1.0, -2.0, 1.0, 0.0]
    """
    if not 1 < alpha <= 2:
        raise ParametersError(f'order range: alpha must satisfy 1 < alpha <= 2, got alpha = {alpha}')
    if int(K) != K or K < 0:
        raise ParametersError(f'Number of Grunwald weights must be a non-negative integer, got K = {K}')
    k = arange(1, int(K) + 1)
    values = concatenate((ones(1), cumprod((k - 1 - alpha) / k)))
    return GrunwaldWeights(float(alpha), values)


def skew_coefficients(alpha: float, theta: float) -> SkewCoefficients:
    """Skew coefficients of the shifted Grunwald discretization

    a_r = sin((alpha - theta) pi / 2) / sin(alpha pi) and a_l = sin((alpha + theta) pi / 2) / sin(alpha pi).
    At alpha = 2 both are the 0/0 limit -1/2, which turns the stencil into the classical second difference.

    >>> skew_coefficients(2, 0)
    SkewCoefficients(a_r=-0.5, a_l=-0.5)
    """
    violations = _order_and_skew_violations(alpha, theta)
    if violations:
        raise ParametersError('Inadmissible skew coefficients: ' + '; '.join(violations))
    if alpha == 2:
        return SkewCoefficients(-0.5, -0.5)
    denominator = sin(alpha * pi)
    return SkewCoefficients(float(sin((alpha - theta) * pi / 2) / denominator),
                            float(sin((alpha + theta) * pi / 2) / denominator))


def riesz_feller_symbol(k, alpha: float, theta: float):
    """Fourier symbol psi(k) = |k|^alpha (cos(theta pi / 2) + i sign(k) sin(theta pi / 2))

    Accepts a scalar or an array of wavenumbers; the real part is positive for every k != 0.

    >>> complex(riesz_feller_symbol(1.0, 2, 0))
    (1+0j)
    >>> complex(riesz_feller_symbol(0.0, 1.5, 0.3))
    0j
    """
    violations = _order_and_skew_violations(alpha, theta)
    if violations:
        raise ParametersError('Inadmissible symbol parameters: ' + '; '.join(violations))
    k = asarray(k, dtype=float)
    half_skew = theta * pi / 2
    psi = np_abs(k) ** alpha * (cos(half_skew) + 1j * sign(k) * sin(half_skew))
    return psi if ndim(psi) else psi[()]
