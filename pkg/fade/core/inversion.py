#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# SPDX-License-Identifier: BSD-3-Clause
# fade.core.inversion: Tikhonov reconstruction of the source term
# Copyright (C) 2026 fade contributors
# see AUTHORS.rst for a list of contributors

"""
fade.core.inversion
===================

Reconstruction of the source samples R from the observation Y = K R by minimizing

    ||Y - K R||^2 + lambda ||D R||^2

where D is the identity (order 0) or the forward difference (order 1). The regularization parameter comes either
from the configuration or from the corner of the L-curve. The module also provides the diagnostics showing that the
problem is ill-posed: the singular spectrum of K, the Picard coefficients of an observation and the decay of
sinusoidal perturbations through K.
"""

from collections import namedtuple
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass
from logging import getLogger
from typing import Optional, Sequence, Tuple
from numpy import argmax, asarray, concatenate, diff, eye, full, geomspace, isfinite, log, nan, ndarray, sin, \
    sqrt, vstack, zeros, abs as np_abs, all as np_all, pi
from numpy.linalg import norm
from numpy.random import default_rng
from scipy.linalg import LinAlgError, lstsq, svd, svdvals

from fade.core.exceptions import InversionError, ParametersError
from fade.core.forward import ForwardMap, assemble_forward_map
from fade.core.parameters import Grid, ModelParams, NoiseSpec, RegularizationConfig

logger = getLogger(__name__)

DEFAULT_LAMBDA_DECADES = (-8, 2)
DEFAULT_LAMBDA_COUNT = 30
MONOTONICITY_TOLERANCE = 1e-8


@dataclass(frozen=True)
class InversionResult:
    """Reconstructed source and the quantities describing its quality

    relative_error_pct is only known when the true source was supplied.
    """
    r_est: ndarray
    lambda_used: float
    residual_norm: float
    solution_seminorm: float
    relative_error_pct: Optional[float] = None


@dataclass(frozen=True)
class LCurve:
    """Residual norm, seminorm and signed three-point curvature for every lambda of the grid

    The curvature is undefined (nan) for the first and last grid points.
    """
    lambdas: ndarray
    residual_norms: ndarray
    seminorms: ndarray
    curvature: ndarray
    selected: int
    at_edge: bool = False

    @property
    def points(self):
        return list(zip(self.residual_norms.tolist(), self.seminorms.tolist()))

    @property
    def lambda_selected(self):
        return float(self.lambdas[self.selected])


class PerturbationNorm(namedtuple('PerturbationNorm', 'n input_norm output_norm')):
    """Discrete L2 norms of delta_n = A sin(n pi x / L) and of K delta_n"""


def difference_matrix(order: int, n: int, dx: float = 1.0) -> ndarray:
    """Stabilizer D: identity for order 0, forward difference (n-1) x n for order 1

    >>> difference_matrix(1, 3).tolist()
    [[-1.0, 1.0, 0.0], [0.0, -1.0, 1.0]]
    """
    if int(n) != n or n < 2:
        raise ParametersError(f'Stabilizer needs n >= 2 unknowns, got {n}')
    if order == 0:
        return eye(n)
    if order == 1:
        return (eye(n, k=1) - eye(n))[:-1] / dx
    raise ParametersError(f'Stabilizer order must be 0 or 1, got {order}')


def tikhonov_solve(K: ndarray, Y, lam: float, D: ndarray) -> ndarray:
    """Minimizer of ||Y - K R||^2 + lam ||D R||^2

    Solved as the least-squares problem [K; sqrt(lam) D] R = [Y; 0], which is better conditioned than the normal
    equations (K^T K + lam D^T D) R = K^T Y.

    :raises InversionError: lam = 0 and K is rank deficient
    """
    K = asarray(K, dtype=float)
    Y = asarray(Y, dtype=float)
    D = asarray(D, dtype=float)
    if lam < 0 or not isfinite(lam):
        raise ParametersError(f'Regularization parameter must be finite and >= 0, got {lam}')
    if K.ndim != 2 or Y.shape != (K.shape[0],) or D.ndim != 2 or D.shape[1] != K.shape[1]:
        raise ParametersError(f'Dimensions disagree: K {K.shape}, Y {Y.shape}, D {D.shape}')
    if lam > 0:
        system = vstack((K, sqrt(lam) * D))
        rhs = concatenate((Y, zeros(D.shape[0])))
    else:
        system, rhs = K, Y
    try:
        R, _, rank, _ = lstsq(system, rhs, check_finite=False)
    except LinAlgError as e:
        raise InversionError(f'Least-squares solve failed for lambda = {lam:g}: {e}') from e
    if rank < K.shape[1]:
        if lam == 0:
            raise InversionError(f'K is rank deficient (rank {rank} < {K.shape[1]}), use a positive lambda')
        raise InversionError(f'Regularized system is rank deficient at lambda = {lam:g}')
    return R


def _curve_point(K: ndarray, Y: ndarray, D: ndarray, lam: float):
    R = tikhonov_solve(K, Y, lam, D)
    return R, float(norm(Y - K @ R)), float(norm(D @ R))


def default_lambda_grid(K: ndarray, D: ndarray, count: int = DEFAULT_LAMBDA_COUNT,
                        decades: Tuple[float, float] = DEFAULT_LAMBDA_DECADES) -> ndarray:
    """Log-spaced grid scaled by ||K^T K||_2 / ||D^T D||_2 so that it suits both stabilizer orders"""
    scale = norm(K, 2) ** 2 / norm(D, 2) ** 2
    grid = scale * geomspace(10.0 ** decades[0], 10.0 ** decades[1], count)
    logger.debug(f'default lambda grid [{grid[0]:.3g}, {grid[-1]:.3g}] with {count} points')
    return grid


def menger_curvature(x: ndarray, y: ndarray) -> ndarray:
    """Signed curvature of the circle through each three consecutive points, nan at both ends

    Positive values mean a counterclockwise turn; with lambda increasing along the L-curve the corner turns
    counterclockwise.
    """
    curvature = full(x.size, nan)
    for i in range(1, x.size - 1):
        ax, ay = x[i] - x[i - 1], y[i] - y[i - 1]
        bx, by = x[i + 1] - x[i], y[i + 1] - y[i]
        cx, cy = x[i + 1] - x[i - 1], y[i + 1] - y[i - 1]
        lengths = sqrt(ax * ax + ay * ay) * sqrt(bx * bx + by * by) * sqrt(cx * cx + cy * cy)
        curvature[i] = 2 * (ax * by - ay * bx) / lengths if lengths > 0 else 0.0
    return curvature


def _check_monotonicity(residuals: ndarray, seminorms: ndarray):
    if residuals.size < 2:
        return
    residual_drop = diff(residuals) < -MONOTONICITY_TOLERANCE * residuals.max()
    seminorm_rise = diff(seminorms) > MONOTONICITY_TOLERANCE * seminorms.max()
    if residual_drop.any() or seminorm_rise.any():
        logger.warning('L-curve is not monotone: the residual must grow and the seminorm shrink with lambda')


def l_curve_select(K: ndarray, Y, cfg: RegularizationConfig, D: Optional[ndarray] = None,
                   workers: Optional[int] = None) -> Tuple[float, LCurve]:
    """Corner of the L-curve (log residual norm, log seminorm) over the lambda grid of cfg

    The corner is the point of maximum three-point curvature, ties going to the larger lambda. When the curve is
    degenerate (all residuals equal or a zero norm) the median grid value is returned with a warning.
    With ``workers`` the grid is solved by a thread pool; results are merged in grid order.
    """
    K = asarray(K, dtype=float)
    Y = asarray(Y, dtype=float)
    D = difference_matrix(cfg.order, K.shape[1]) if D is None else D
    lambdas = default_lambda_grid(K, D) if cfg.lambda_grid is None else asarray(cfg.lambda_grid, dtype=float)
    if not lambdas.size:
        raise InversionError('Regularization grid is empty')

    def solve(lam):
        return _curve_point(K, Y, D, lam)[1:]

    if workers and workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            points = list(executor.map(solve, lambdas))
    else:
        points = [solve(lam) for lam in lambdas]
    residuals = asarray([p[0] for p in points])
    seminorms = asarray([p[1] for p in points])
    _check_monotonicity(residuals, seminorms)

    if lambdas.size == 1:
        curve = LCurve(lambdas, residuals, seminorms, full(1, nan), 0)
        return float(lambdas[0]), curve

    degenerate = not np_all(residuals > 0) or not np_all(seminorms > 0) \
        or residuals.max() - residuals.min() <= 1e-12 * residuals.max()
    if degenerate:
        selected = lambdas.size // 2
        logger.warning(f'Degenerate L-curve, using the median grid value lambda = {lambdas[selected]:.6g}')
        curve = LCurve(lambdas, residuals, seminorms, full(lambdas.size, nan), selected)
        return float(lambdas[selected]), curve

    curvature = menger_curvature(log(residuals), log(seminorms))
    if lambdas.size == 2:
        selected = 1
        at_edge = True
    else:
        interior = curvature[1:-1]
        selected = interior.size - int(argmax(interior[::-1]))  # last maximum, i.e. the larger lambda
        at_edge = selected in (1, lambdas.size - 2)
    if at_edge:
        logger.warning(f'L-curve corner lambda = {lambdas[selected]:.6g} lies at the edge of the grid '
                       f'[{lambdas[0]:.3g}, {lambdas[-1]:.3g}], consider widening it')
    logger.info(f'L-curve corner at lambda = {lambdas[selected]:.6g}')
    curve = LCurve(lambdas, residuals, seminorms, curvature, selected, at_edge)
    return float(lambdas[selected]), curve


def add_noise(Y, spec: NoiseSpec) -> ndarray:
    """Multiplicative Gaussian noise Y_i (1 + level zeta_i), reproducible through spec.seed"""
    Y = asarray(Y, dtype=float)
    if spec.level == 0:
        return Y.copy()
    zeta = default_rng(spec.seed).standard_normal(Y.shape)
    return Y * (1 + spec.level * zeta)


def relative_error(r_est, r_true) -> float:
    """100 ||r_est - r_true|| / ||r_true|| in percent

    >>> relative_error([3.0, 4.0], [3.0, 4.0])
    0.0
    """
    r_est = asarray(r_est, dtype=float)
    r_true = asarray(r_true, dtype=float)
    if r_est.shape != r_true.shape:
        raise ParametersError(f'Estimate {r_est.shape} and truth {r_true.shape} differ in length')
    reference = norm(r_true)
    if reference == 0:
        raise InversionError('Relative error is undefined for a zero true source')
    return float(100 * norm(r_est - r_true) / reference)


def svd_spectrum(K) -> ndarray:
    """Singular values of K, in descending order"""
    try:
        return svdvals(asarray(K, dtype=float), check_finite=False)
    except LinAlgError as e:
        raise InversionError(f'Singular value decomposition failed: {e}') from e


def picard_coefficients(K, Y) -> ndarray:
    """|u_i^T Y| for the left singular vectors of K, to compare against the singular values"""
    try:
        U = svd(asarray(K, dtype=float), compute_uv=True, check_finite=False)[0]
    except LinAlgError as e:
        raise InversionError(f'Singular value decomposition failed: {e}') from e
    return np_abs(U.T @ asarray(Y, dtype=float))


def sine_perturbation(grid: Grid, amplitude: float, n: int) -> ndarray:
    return amplitude * sin(n * pi * grid.x / grid.L)


def perturbation_decay_test(p: ModelParams, g: Grid, A_amp: float, n_modes: Sequence[int],
                            fmap: Optional[ForwardMap] = None):
    """Norms of delta_n = A sin(n pi x / L) and of its image K delta_n

    Both norms are discrete L2 norms sqrt(dx) ||.||_2. The input norm is A sqrt(L / 2) for every 1 <= n < N, while
    the output norm goes to zero with n: small data errors can come from large source errors.
    """
    fmap = assemble_forward_map(p, g) if fmap is None else fmap
    norms = []
    for n in n_modes:
        if int(n) != n or n < 1:
            raise ParametersError(f'Perturbation modes must be integers >= 1, got {n}')
        delta = sine_perturbation(g, A_amp, int(n))
        norms.append(PerturbationNorm(int(n), float(sqrt(g.dx) * norm(delta)),
                                      float(sqrt(g.dx) * norm(fmap.K @ delta))))
    return norms


def invert(fmap: ForwardMap, Y, reg: RegularizationConfig, r_true=None,
           workers: Optional[int] = None) -> Tuple[InversionResult, Optional[LCurve]]:
    """Tikhonov reconstruction with the fixed lambda of reg or the L-curve corner"""
    Y = asarray(Y, dtype=float)
    D = difference_matrix(reg.order, fmap.grid.n_interior, fmap.grid.dx)
    curve = None
    if reg.fixed_lambda is not None:
        lam = reg.fixed_lambda
    else:
        lam, curve = l_curve_select(fmap.K, Y, reg, D=D, workers=workers)
    R, residual, seminorm = _curve_point(fmap.K, Y, D, lam)
    error = None if r_true is None else relative_error(R, r_true)
    result = InversionResult(r_est=R, lambda_used=float(lam), residual_norm=residual, solution_seminorm=seminorm,
                             relative_error_pct=error)
    logger.debug(f'inversion with order {reg.order}, lambda = {lam:.6g}: residual {residual:.6g}, '
                 f'seminorm {seminorm:.6g}')
    return result, curve
