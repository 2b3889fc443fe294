#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# SPDX-License-Identifier: BSD-3-Clause
# fade.core.forward: implicit finite-difference solver of the direct problem
# Copyright (C) 2026 fade contributors
# see AUTHORS.rst for a list of contributors

"""
fade.core.forward
=================

Implicit Euler / shifted Grunwald discretization of

    dc/dt = -nu dc/dx + d D^alpha_theta c + r(x),    c(0, t) = c(L, t) = 0,    c(x, 0) = g0(x)

on the N - 1 interior nodes of a uniform grid. One step solves

    (I + G + L + V) C^{j+1} = C^j + dt r

where G and L carry the left and right shifted Grunwald sums (skew coefficients a_r, a_l included) and V the upwind
advection. Repeating the step M times gives the affine map C^M = A^M C^0 + K r, with
K = dt (A + A^2 + ... + A^M) = dt (I - A)^-1 (I - A^M) A the dense source-to-observation operator.
"""

from dataclasses import dataclass
from logging import getLogger
from typing import Optional, Tuple
from numpy import asarray, clip, eye, isfinite, ndarray, where, zeros, zeros_like, abs as np_abs, all as np_all, \
    arange, diag, sum as np_sum
from numpy.linalg import cond, matrix_power, solve
from scipy.linalg import lu_factor, lu_solve

from fade.core.exceptions import ParametersError, SingularSystemError
from fade.core.fractional import grunwald_weights, skew_coefficients, validate_params
from fade.core.parameters import Grid, ModelParams

logger = getLogger(__name__)

CLOSED_FORM_MAX_CONDITION = 1e12
"""Above this condition number of I - A the forward map is accumulated step by step instead of using the
closed form."""


@dataclass(frozen=True)
class SystemMatrices:
    """Dense operators of one implicit step

    Gm, Lm: left/right fractional stencils scaled by a_r d dt / dx^alpha and a_l d dt / dx^alpha
    Vm: upwind advection, nu dt / dx on the diagonal and -nu dt / dx on the subdiagonal
    S: implicit system matrix I + Gm + Lm + Vm
    A: one-step propagator S^-1
    """
    Gm: ndarray
    Lm: ndarray
    Vm: ndarray
    S: ndarray
    A: ndarray
    lu: Tuple[ndarray, ndarray]
    grid: Grid
    params: ModelParams

    @property
    def D_frac(self):
        return self.Gm + self.Lm


@dataclass(frozen=True)
class ForwardMap:
    """Source-to-observation operator Y = K r with Y = C^M - A^M C^0

    K already contains the dt factor of the discrete source term, so it acts on the samples r(x_i).
    """
    K: ndarray
    A_pow_M: ndarray
    grid: Grid
    params: ModelParams
    method: str = 'closed_form'


def _as_state(values, grid: Grid, name: str) -> ndarray:
    state = asarray(values, dtype=float)
    if state.ndim == 0 or state.shape[0] != grid.n_interior:
        raise ParametersError(f'{name} must have {grid.n_interior} interior values, got shape {state.shape}')
    if not np_all(isfinite(state)):
        raise ParametersError(f'{name} contains non-finite values')
    return state


def grunwald_stencils(params: ModelParams, grid: Grid) -> Tuple[ndarray, ndarray]:
    """Left and right shifted Grunwald matrices with their skew and scaling factors

    Row m of the left stencil holds xi_{m-n+1} for columns n <= m + 1; row m of the right stencil holds xi_{n-m+1}
    for n >= m - 1. Nodes outside the interior are the zero Dirichlet values and drop out of the sums.
    """
    n = grid.n_interior
    xi = grunwald_weights(params.alpha, n).values
    a = skew_coefficients(params.alpha, params.theta)
    scale = params.d * grid.dt / grid.dx ** params.alpha
    index = arange(n)
    offset = index[:, None] - index[None, :] + 1
    pattern = where(offset >= 0, xi[clip(offset, 0, n)], 0.0)
    return (a.a_r * scale) * pattern, (a.a_l * scale) * pattern.T


def upwind_advection(params: ModelParams, grid: Grid) -> ndarray:
    """Backward difference nu (c_i - c_{i-1}) dt / dx, implicit in time"""
    n = grid.n_interior
    courant = params.nu * grid.dt / grid.dx
    return courant * (eye(n) - eye(n, k=-1))


def assemble_operators(params: ModelParams, grid: Grid) -> SystemMatrices:
    """Build and factorize the implicit system I + Gm + Lm + Vm

    :raises ParametersError: inadmissible model constants
    :raises SingularSystemError: the system matrix cannot be factorized
    """
    validate_params(params)
    if abs(grid.L - params.L) > 1e-12 * params.L or abs(grid.T - params.T) > 1e-12 * params.T:
        raise ParametersError(f'Grid domain [0, {grid.L}] x [0, {grid.T}] does not match the model '
                              f'[0, {params.L}] x [0, {params.T}]')
    n = grid.n_interior
    Gm, Lm = grunwald_stencils(params, grid)
    Vm = upwind_advection(params, grid)
    S = eye(n) + (Gm + Lm) + Vm
    lu = lu_factor(S, check_finite=False)
    pivots = np_abs(diag(lu[0]))
    if not np_all(isfinite(pivots)) or pivots.min() <= 1e-14 * max(pivots.max(), 1.0):
        raise SingularSystemError(f'Implicit system matrix is singular for {params} on N = {grid.N}, M = {grid.M}')
    A = lu_solve(lu, eye(n), check_finite=False)
    logger.debug(f'assembled implicit system: n = {n}, dt/dx^alpha = {grid.dt / grid.dx ** params.alpha:.6g}')
    return SystemMatrices(Gm=Gm, Lm=Lm, Vm=Vm, S=S, A=A, lu=lu, grid=grid, params=params)


def step_implicit(mats: SystemMatrices, c_prev, r) -> ndarray:
    """One implicit step C^{j+1} = A (C^j + dt r)

    c_prev and r may also be (N-1) x m blocks, in which case every column is stepped independently.
    """
    c_prev = _as_state(c_prev, mats.grid, 'previous state')
    r = _as_state(r, mats.grid, 'source')
    return lu_solve(mats.lu, c_prev + mats.grid.dt * r, check_finite=False)


def solve_forward(params: ModelParams, grid: Grid, g0, r, mats: Optional[SystemMatrices] = None) -> ndarray:
    """Trajectory C^0..C^M of the direct problem as an (M + 1) x (N - 1) array

    :param g0: initial condition sampled on the interior nodes
    :param r: source sampled on the interior nodes
    :param mats: already assembled operators for (params, grid), assembled here when omitted
    """
    mats = assemble_operators(params, grid) if mats is None else mats
    g0 = _as_state(g0, grid, 'initial condition')
    r = _as_state(r, grid, 'source')
    trajectory = zeros((grid.M + 1, grid.n_interior))
    trajectory[0] = g0
    for j in range(grid.M):
        trajectory[j + 1] = step_implicit(mats, trajectory[j], r)
    return trajectory


def trajectory_mass(trajectory: ndarray, grid: Grid) -> ndarray:
    """Total mass sum_i c_i^j dx of every time level"""
    return np_sum(trajectory, axis=-1) * grid.dx


def _accumulated_map(mats: SystemMatrices) -> ndarray:
    """dt (A + A^2 + ... + A^M) by repeated multiplication"""
    grid = mats.grid
    power = eye(grid.n_interior)
    total = zeros_like(power)
    for _ in range(grid.M):
        power = mats.A @ power
        total += power
    return grid.dt * total


def forward_map_by_columns(params: ModelParams, grid: Grid, mats: Optional[SystemMatrices] = None) -> ndarray:
    """K built from M implicit steps applied to every unit source at once, C^0 = 0"""
    mats = assemble_operators(params, grid) if mats is None else mats
    unit_sources = eye(grid.n_interior)
    columns = zeros_like(unit_sources)
    for _ in range(grid.M):
        columns = step_implicit(mats, columns, unit_sources)
    return columns


def assemble_forward_map(params: ModelParams, grid: Grid, mats: Optional[SystemMatrices] = None,
                         method: str = 'closed_form') -> ForwardMap:
    """Dense source-to-observation map K and the propagator power A^M

    :param method: ``closed_form`` for dt (I - A)^-1 (I - A^M) A, ``columns`` for M implicit steps on the unit sources
    The closed form falls back to step-by-step accumulation when I - A is numerically singular.
    """
    mats = assemble_operators(params, grid) if mats is None else mats
    n = grid.n_interior
    A_pow_M = matrix_power(mats.A, grid.M)
    if method == 'columns':
        K = forward_map_by_columns(params, grid, mats)
    elif method == 'closed_form':
        complement = eye(n) - mats.A
        condition = cond(complement)
        if isfinite(condition) and condition < CLOSED_FORM_MAX_CONDITION:
            K = grid.dt * solve(complement, (eye(n) - A_pow_M) @ mats.A)
        else:
            logger.warning(f'I - A is numerically singular (condition {condition:.3g}), '
                           'accumulating the forward map step by step')
            K = _accumulated_map(mats)
            method = 'accumulated'
    else:
        raise ParametersError(f'Unknown forward map method {method!r}, use closed_form or columns')
    logger.debug(f'forward map assembled ({method}), n = {n}, M = {grid.M}')
    return ForwardMap(K=K, A_pow_M=A_pow_M, grid=grid, params=params, method=method)


def observation_vector(traj_final, A_pow_M: ndarray, c0) -> ndarray:
    """Y = C^M - A^M C^0, the part of the final state produced by the source"""
    traj_final = asarray(traj_final, dtype=float)
    c0 = asarray(c0, dtype=float)
    if traj_final.shape != c0.shape or A_pow_M.shape != (c0.size, c0.size):
        raise ParametersError(f'Observation dimensions disagree: C^M {traj_final.shape}, C^0 {c0.shape}, '
                              f'A^M {A_pow_M.shape}')
    return traj_final - A_pow_M @ c0
