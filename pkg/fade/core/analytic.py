#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# SPDX-License-Identifier: BSD-3-Clause
# fade.core.analytic: whole-line spectral solution of the direct problem
# Copyright (C) 2026 fade contributors
# see AUTHORS.rst for a list of contributors

"""
fade.core.analytic
==================

Independent oracle for the finite-difference solver. On the whole real line the Green function of the
space-fractional advection-dispersion equation is known through its Fourier transform

    G^(k, t) = exp((i nu k - d psi(k)) t)

and the solution with initial value g0 and constant source f is

    u^(k, t) = G^(k, t) g0^(k) + Phi(k, t) f^(k),    Phi(k, t) = (exp(z t) - 1) / z,    z = i nu k - d psi(k)

Every inverse transform ``(1 / 2 pi) int exp(-ikx) h(k) dk`` is evaluated by the trapezoidal rule on
``n_k + 1`` equispaced nodes of ``[-k_max, k_max]``. Such a rule is exact for trigonometric polynomials of the
periodic window ``2 pi / dk``: the numerical Green function is the periodized kernel, it integrates to one over
the window up to rounding, and the whole-line answer is recovered when the window is wide enough for the kernel
tails (see ``x_pad``).

The oracle ignores the Dirichlet boundaries of the finite domain; it only agrees with the finite-difference
solution while the solution is negligible near x = 0 and x = L.
"""

from dataclasses import dataclass
from logging import getLogger
from math import ceil, log, log2
from typing import Callable, Optional, Tuple
from numpy import abs as np_abs, arange, asarray, atleast_1d, cos, empty, exp, linspace, max as np_max, ndarray, \
    ones, pi, sum as np_sum, zeros
from scipy.integrate import simpson

from fade.core.exceptions import ParametersError, QuadratureError
from fade.core.fractional import riesz_feller_symbol, validate_params
from fade.core.parameters import ModelParams, SpectralConfig

logger = getLogger(__name__)

TAIL_TOLERANCE = 1e-8
"""A truncated transform whose last sample still exceeds this magnitude is reported as unresolved."""

DEFAULT_K_MAX_CAP = 512.0
SERIES_THRESHOLD = 1e-4
CHUNK = 256


@dataclass(frozen=True)
class GreenKernel:
    """Samples of the Green function transform at one time on the quadrature nodes"""
    t: float
    k: ndarray
    weights: ndarray
    values: ndarray
    params: ModelParams


def _exponent(k, p: ModelParams):
    return 1j * p.nu * k - p.d * riesz_feller_symbol(k, p.alpha, p.theta)


def quadrature_nodes(cfg: SpectralConfig) -> Tuple[ndarray, ndarray]:
    """Trapezoidal nodes k_n = n dk, n = -n_k/2..n_k/2, and their weights (half weight at both ends)

    >>> k, w = quadrature_nodes(SpectralConfig(k_max=32.0, n_k=64))
    >>> float(k[0]), float(k[-1]), float(w[0]), float(w[1])
    (-32.0, 32.0, 0.5, 1.0)
    """
    half = cfg.n_k // 2
    k = arange(-half, half + 1) * cfg.dk
    weights = ones(k.size) * cfg.dk
    weights[0] = weights[-1] = cfg.dk / 2
    return k, weights


def green_hat(k, t: float, p: ModelParams):
    """Fourier transform of the Green function, exp((i nu k - d psi(k)) t)

    Its modulus exp(-d |k|^alpha cos(theta pi / 2) t) does not depend on nu.

    >>> complex(green_hat(0.0, 1.0, ModelParams(nu=0.3, d=3, alpha=1.5, theta=0.3, L=7, T=1)))
    (1+0j)
    """
    if t < 0:
        raise ParametersError(f'Green function needs t >= 0, got t = {t}')
    return exp(_exponent(k, p) * t)


def green_kernel(t: float, p: ModelParams, cfg: SpectralConfig) -> GreenKernel:
    validate_params(p)
    k, weights = quadrature_nodes(cfg)
    return GreenKernel(t=float(t), k=k, weights=weights, values=green_hat(k, t, p), params=p)


def _check_tail(t: float, p: ModelParams, cfg: SpectralConfig):
    tail = exp(-p.d * cfg.k_max ** p.alpha * cos(p.theta * pi / 2) * t)
    if tail > TAIL_TOLERANCE:
        logger.warning(f'Spectral truncation k_max = {cfg.k_max:g} is too small for t = {t:g}: '
                       f'|G^(k_max)| = {tail:.3g} > {TAIL_TOLERANCE:g}')
    return tail


def _inverse_transform(x, k: ndarray, weighted: ndarray) -> Tuple[ndarray, float]:
    """(1 / 2 pi) sum_n weighted_n exp(-i k_n x) and the largest imaginary residue"""
    x = atleast_1d(asarray(x, dtype=float))
    flat = x.ravel()
    values = empty(flat.size)
    residue = 0.0
    for start in range(0, flat.size, CHUNK):
        block = flat[start:start + CHUNK]
        result = exp(-1j * block[:, None] * k[None, :]) @ weighted / (2 * pi)
        values[start:start + CHUNK] = result.real
        if result.size:
            residue = max(residue, float(np_max(np_abs(result.imag))))
    return values.reshape(x.shape), residue


def _scalar_or_array(values: ndarray, x):
    return float(values[0]) if asarray(x).ndim == 0 else values


def green_eval(x, t: float, p: ModelParams, cfg: SpectralConfig, with_residue: bool = False):
    """Green function G(x, t) by trapezoidal inversion of green_hat

    The real part is returned; the imaginary part vanishes up to rounding because the nodes are symmetric and
    green_hat(-k) is the conjugate of green_hat(k). With ``with_residue`` the largest imaginary magnitude is returned
    as well.

    :raises QuadratureError: t <= 0
    """
    if t <= 0:
        raise QuadratureError(f'Green function evaluation needs t > 0, got t = {t}')
    _check_tail(t, p, cfg)
    kernel = green_kernel(t, p, cfg)
    values, residue = _inverse_transform(x, kernel.k, kernel.weights * kernel.values)
    logger.debug(f'green_eval at t = {t:g}: imaginary residue {residue:.3g}')
    values = _scalar_or_array(values, x)
    return (values, residue) if with_residue else values


def green_profile(t: float, p: ModelParams, cfg: SpectralConfig, center: Optional[float] = None):
    """Green function on the n_k equispaced points of one periodic window centred on ``center`` (default L / 2)"""
    center = p.L / 2 if center is None else center
    h = cfg.window / cfg.n_k
    x = center + (arange(cfg.n_k) - cfg.n_k // 2) * h
    return x, green_eval(x, t, p, cfg)


def green_normalization(t: float, p: ModelParams, cfg: SpectralConfig) -> float:
    """Integral of the Green function over one periodic window, 1 up to rounding when the transform is resolved"""
    x, values = green_profile(t, p, cfg)
    return float(np_sum(values) * (x[1] - x[0]))


def time_integral_kernel(k, T: float, p: ModelParams):
    """Phi(k, T) = int_0^T exp(z s) ds = (exp(z T) - 1) / z with z = i nu k - d psi(k)

    Near z = 0 the quotient loses digits, there a short Taylor series is used; Phi(0, T) = T.

    >>> p = ModelParams(nu=0.3, d=3, alpha=1.5, theta=0.3, L=7, T=1)
    >>> complex(time_integral_kernel(0.0, 1.0, p))
    (1+0j)
    """
    if T < 0:
        raise ParametersError(f'Time integral needs T >= 0, got T = {T}')
    k_array = atleast_1d(asarray(k, dtype=float))
    z = _exponent(k_array, p)
    zT = z * T
    small = np_abs(zT) < SERIES_THRESHOLD
    result = zeros(z.shape, dtype=complex)
    large = ~small
    result[large] = (exp(zT[large]) - 1) / z[large]
    s = zT[small]
    result[small] = T * (1 + s / 2 + s ** 2 / 6 + s ** 3 / 24)
    return result[0] if asarray(k).ndim == 0 else result.reshape(asarray(k).shape)


def transform_on_domain(profile: Callable, k: ndarray, L: float, n_y: int = 2048) -> ndarray:
    """F[profile](k) = int_0^L exp(iky) profile(y) dy by Simpson's rule, the profile being zero outside [0, L]"""
    y = linspace(0.0, L, n_y + 1)
    samples = asarray(profile(y), dtype=float) * ones(y.size)
    result = empty(k.size, dtype=complex)
    for start in range(0, k.size, CHUNK):
        block = k[start:start + CHUNK]
        result[start:start + CHUNK] = simpson(exp(1j * block[:, None] * y[None, :]) * samples, x=y, axis=1)
    return result


def analytic_solution(x, t: float, f: Optional[Callable], g0: Optional[Callable], p: ModelParams,
                      cfg: SpectralConfig, n_y: int = 2048):
    """Whole-line solution u(x, t) for the initial value g0 and the constant source f, both supported on [0, L]

    Either profile may be None (zero). Discontinuous profiles (e.g. a source switched off outside [0, L] while
    non-zero at the ends) produce Gibbs oscillations of the truncated transform.

    :raises QuadratureError: t <= 0
    """
    if t <= 0:
        raise QuadratureError(f'Analytic solution needs t > 0, got t = {t}')
    validate_params(p)
    _check_tail(t, p, cfg)
    k, weights = quadrature_nodes(cfg)
    u_hat = zeros(k.size, dtype=complex)
    if g0 is not None:
        u_hat += green_hat(k, t, p) * transform_on_domain(g0, k, p.L, n_y)
    if f is not None:
        u_hat += time_integral_kernel(k, t, p) * transform_on_domain(f, k, p.L, n_y)
    values, residue = _inverse_transform(x, k, weights * u_hat)
    logger.debug(f'analytic_solution at t = {t:g}: imaginary residue {residue:.3g}')
    return _scalar_or_array(values, x)


def spectral_config_for(p: ModelParams, t_min: float, x_pad: Optional[float] = None, tail: float = 1e-12,
                        k_max_cap: float = DEFAULT_K_MAX_CAP, k_max_floor: float = 0.0) -> SpectralConfig:
    """Quadrature settings resolving green_hat down to ``tail`` for every t >= t_min

    The window 2 pi / dk covers [-x_pad, L + x_pad]; x_pad defaults to 10 L so that the heavy tails of the
    fractional kernel barely wrap around. Source terms decay only algebraically in k, so solutions with a source
    usually want a k_max_floor well above the Green function requirement.

    :raises QuadratureError: t_min is so small that k_max would exceed k_max_cap
    """
    validate_params(p)
    if t_min <= 0:
        raise QuadratureError(f'Spectral settings need t_min > 0, got {t_min}')
    x_pad = 10 * p.L if x_pad is None else x_pad
    damping = p.d * cos(p.theta * pi / 2) * t_min
    k_max = max((-log(tail) / damping) ** (1 / p.alpha), k_max_floor)
    if k_max > k_max_cap:
        raise QuadratureError(f't = {t_min:g} is too small for the spectral oracle: k_max = {k_max:.4g} exceeds '
                              f'{k_max_cap:g}')
    needed = k_max * (p.L + 2 * x_pad) / pi
    n_k = max(64, 2 ** int(ceil(log2(needed))))
    cfg = SpectralConfig(k_max=float(k_max), n_k=n_k, x_pad=float(x_pad))
    logger.debug(f'spectral settings for t >= {t_min:g}: k_max = {cfg.k_max:.4g}, n_k = {cfg.n_k}')
    return cfg
