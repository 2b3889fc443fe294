#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# SPDX-License-Identifier: BSD-3-Clause
# fade.core.parameters: parameters of the model, the grids and the solvers
# Copyright (C) 2026 fade contributors
# see AUTHORS.rst for a list of contributors

"""
fade.core.parameters
====================

This module contains the parameter classes shared by all solvers: the physical model constants, the
finite-difference grid, the spectral quadrature configuration, the regularization settings and the
measurement noise specification.

All instances are read-only once built.
"""

from typing import Optional, Sequence
from numpy import asarray, all as np_all, diff, geomspace, linspace, pi

from fade.core.exceptions import ParametersError


class Parameters:
    def asdict(self):
        class_dict = self.__class__.__dict__
        instance_dict = self.__dict__
        new_dict = {}
        for key in class_dict:
            if isinstance(class_dict[key], property):
                new_dict[key] = instance_dict['_' + key]
        return new_dict

    def __repr__(self):
        fields = ', '.join(f'{k}={v!r}' for k, v in self.asdict().items())
        return f'{self.__class__.__name__}({fields})'


class ModelParams(Parameters):
    """Constants of the space-fractional advection-dispersion equation

    dc/dt = -nu dc/dx + d D^alpha_theta c + r(x) on 0 < x < L, 0 < t <= T

    :params nu: average velocity [length/time]
    :params d: dispersion coefficient [length^alpha/time]
    :params alpha: fractional order, 1 < alpha <= 2
    :params theta: skewness, |theta| <= min(alpha, 2 - alpha)
    :params L: domain length
    :params T: final (observation) time

    Admissibility is not enforced here, see :func:`fade.core.fractional.validate_params`.
    """
    def __init__(self, **kwargs):
        try:
            self._nu = float(kwargs['nu'])
            self._d = float(kwargs['d'])
            self._alpha = float(kwargs['alpha'])
            self._theta = float(kwargs.get('theta', 0.0))
            self._L = float(kwargs['L'])
            self._T = float(kwargs['T'])
        except KeyError as e:
            raise ParametersError(f'Model parameters must include {e}. Configuration: {kwargs}')
        except (TypeError, ValueError) as e:
            raise ParametersError(f'Model parameters must be real numbers: {e}. Configuration: {kwargs}')

    @property
    def nu(self):
        return self._nu

    @property
    def d(self):
        return self._d

    @property
    def alpha(self):
        return self._alpha

    @property
    def theta(self):
        return self._theta

    @property
    def L(self):
        return self._L

    @property
    def T(self):
        return self._T

    def replace(self, **changes):
        """Copy with some constants changed, e.g. ``p.replace(nu=0.0)``"""
        return ModelParams(**{**self.asdict(), **changes})

    def to_json(self):
        return self.asdict()


class Grid(Parameters):
    """Uniform space/time discretization of [0, L] x [0, T]

    There are N space intervals (N - 1 interior unknowns, zero Dirichlet values at both ends) and M implicit time
    steps.

    >>> g = Grid(N=4, M=2, L=2.0, T=1.0)
    >>> g.dx, g.dt
    (0.5, 0.5)
    >>> [float(x) for x in g.x]
    [0.5, 1.0, 1.5]
    """
    def __init__(self, N: int, M: int, L: float, T: float):
        if int(N) != N or N < 3:
            raise ParametersError(f'Grid needs an integer N >= 3 space intervals, got N = {N}')
        if int(M) != M or M < 1:
            raise ParametersError(f'Grid needs an integer M >= 1 time steps, got M = {M}')
        if L <= 0 or T <= 0:
            raise ParametersError(f'Grid needs L > 0 and T > 0, got L = {L}, T = {T}')
        self._N = int(N)
        self._M = int(M)
        self._L = float(L)
        self._T = float(T)
        self._dx = self._L / self._N
        self._dt = self._T / self._M

    @classmethod
    def from_params(cls, params: ModelParams, N: int, M: int):
        return cls(N=N, M=M, L=params.L, T=params.T)

    @property
    def N(self):
        return self._N

    @property
    def M(self):
        return self._M

    @property
    def L(self):
        return self._L

    @property
    def T(self):
        return self._T

    @property
    def dx(self):
        return self._dx

    @property
    def dt(self):
        return self._dt

    @property
    def n_interior(self):
        return self._N - 1

    @property
    def x(self):
        """interior nodes x_i = i dx, i = 1..N-1"""
        return linspace(self._dx, self._L - self._dx, self._N - 1)

    def refined(self, factor: int = 2):
        """Same domain with N and M multiplied by factor"""
        return Grid(N=self._N * factor, M=self._M * factor, L=self._L, T=self._T)


class SpectralConfig(Parameters):
    """Quadrature settings of the whole-line spectral oracle

    :params k_max: frequency truncation, the trapezoidal rule runs on [-k_max, k_max]
    :params n_k: number of quadrature intervals (even, >= 64)
    :params x_pad: zero-padding kept on each side of [0, L] inside the periodic quadrature window
    """
    def __init__(self, k_max: float, n_k: int, x_pad: float = 0.0):
        if k_max <= 0:
            raise ParametersError(f'Spectral truncation must be positive, got k_max = {k_max}')
        if int(n_k) != n_k or n_k < 64 or n_k % 2:
            raise ParametersError(f'Spectral quadrature needs an even n_k >= 64, got n_k = {n_k}')
        if x_pad < 0:
            raise ParametersError(f'Zero-padding length must be non-negative, got x_pad = {x_pad}')
        self._k_max = float(k_max)
        self._n_k = int(n_k)
        self._x_pad = float(x_pad)

    @property
    def k_max(self):
        return self._k_max

    @property
    def n_k(self):
        return self._n_k

    @property
    def x_pad(self):
        return self._x_pad

    @property
    def dk(self):
        return 2 * self._k_max / self._n_k

    @property
    def window(self):
        """period of the x-space image of the k-grid, 2 pi / dk"""
        return self._n_k * pi / self._k_max

    def to_json(self):
        return self.asdict()


class RegularizationConfig(Parameters):
    """Tikhonov settings

    :params order: stabilizer order, 0 for ||R|| and 1 for ||R'||
    :params lambda_grid: strictly increasing positive regularization parameters scanned by the L-curve
    :params fixed_lambda: when set, the L-curve is bypassed and this value is used
    """
    def __init__(self, order: int = 1, lambda_grid: Optional[Sequence[float]] = None,
                 fixed_lambda: Optional[float] = None):
        if order not in (0, 1):
            raise ParametersError(f'Stabilizer order must be 0 or 1, got {order}')
        grid = asarray([] if lambda_grid is None else lambda_grid, dtype=float).ravel()
        if grid.size and (not np_all(grid > 0) or not np_all(diff(grid) > 0)):
            raise ParametersError('Regularization grid must be positive and strictly increasing')
        if lambda_grid is not None and not grid.size:
            raise ParametersError('Regularization grid is empty')
        if fixed_lambda is not None and fixed_lambda <= 0:
            raise ParametersError(f'Fixed regularization parameter must be positive, got {fixed_lambda}')
        self._order = int(order)
        self._lambda_grid = grid if grid.size else None
        self._fixed_lambda = None if fixed_lambda is None else float(fixed_lambda)

    @classmethod
    def log_spaced(cls, order: int, lambda_min: float, lambda_max: float, count: int = 30,
                   fixed_lambda: Optional[float] = None):
        if lambda_min <= 0 or lambda_max < lambda_min or count < 1:
            raise ParametersError(f'Invalid regularization grid [{lambda_min}, {lambda_max}] with {count} points')
        grid = geomspace(lambda_min, lambda_max, int(count)) if count > 1 else [lambda_min]
        return cls(order=order, lambda_grid=grid, fixed_lambda=fixed_lambda)

    @property
    def order(self):
        return self._order

    @property
    def lambda_grid(self):
        """None means: build the default grid from the forward map scale"""
        return self._lambda_grid

    @property
    def fixed_lambda(self):
        return self._fixed_lambda


class NoiseSpec(Parameters):
    """Relative multiplicative Gaussian measurement noise

    :params level: relative standard deviation sigma, between 0 and 1
    :params seed: seed of the deterministic generator
    """
    def __init__(self, level: float = 0.0, seed: int = 0):
        if not 0 <= level <= 1:
            raise ParametersError(f'Noise level must lie in [0, 1], got {level}')
        if int(seed) != seed or seed < 0:
            raise ParametersError(f'Noise seed must be a non-negative integer, got {seed}')
        self._level = float(level)
        self._seed = int(seed)

    @property
    def level(self):
        return self._level

    @property
    def seed(self):
        return self._seed

    def to_json(self):
        return {'level': self.level, 'seed': self.seed}
