#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# SPDX-License-Identifier: BSD-3-Clause
# fade.tools.worker_utils: Experiment drivers shared by the CLI and scripts
# Copyright (C) 2026 fade contributors
# see AUTHORS.rst for a list of contributors

"""
fade.tools.worker_utils
=======================

Experiment drivers shared by the CLI and scripts. Every driver takes a :class:`.RunConfig` and returns pandas
tables; writing them is left to the caller.
"""
import logging
from typing import Optional, Tuple
from numpy import eye, nan
from numpy.linalg import norm
import pandas as pd

from fade.core.analytic import analytic_solution, spectral_config_for
from fade.core.exceptions import ConfigurationError, InversionError
from fade.core.forward import ForwardMap, assemble_forward_map, observation_vector, solve_forward, \
    trajectory_mass
from fade.core.inversion import LCurve, add_noise, default_lambda_grid, difference_matrix, invert, \
    perturbation_decay_test, picard_coefficients, relative_error, svd_spectrum, tikhonov_solve
from fade.core.parameters import Grid, NoiseSpec, RegularizationConfig
from fade.tools.json_io import RunConfig


logger = logging.getLogger(__name__)

SOURCE_K_MAX_FLOOR = 64.0


def _fd_solution(cfg: RunConfig, grid: Grid):
    trajectory = solve_forward(cfg.params, grid, cfg.sampled_initial_condition(grid), cfg.sampled_source(grid))
    return trajectory


def _oracle_solution(cfg: RunConfig, grid: Grid):
    spectral = cfg.spectral_config()
    if spectral is None:
        floor = 0.0 if cfg.source_is_zero else SOURCE_K_MAX_FLOOR
        spectral = spectral_config_for(cfg.params, cfg.T, x_pad=cfg.x_pad, k_max_floor=floor)
    f = None if cfg.source_is_zero else cfg.source
    g0 = None if cfg.ic_type == 'zero' else cfg.initial_condition
    return analytic_solution(grid.x, cfg.T, f, g0, cfg.params, spectral)


def _relative_difference_pct(values, reference) -> float:
    scale = norm(reference)
    return float(100 * norm(values - reference) / scale) if scale > 0 else nan


def forward_experiment(cfg: RunConfig) -> Tuple[pd.DataFrame, pd.DataFrame]:
    """Final profile of the direct problem, optionally next to the analytic oracle and on a refined grid

    Returns the profile table (x, c_fd[, c_analytic]) and one metadata row per grid level.
    """
    grids = [cfg.grid, cfg.grid.refined()] if cfg.refine else [cfg.grid]
    profile = None
    meta = []
    previous = None
    for grid in grids:
        trajectory = _fd_solution(cfg, grid)
        c_fd = trajectory[-1]
        row = {'N': grid.N, 'M': grid.M, 'mass_final': float(trajectory_mass(trajectory, grid)[-1])}
        columns = {'x': grid.x, 'c_fd': c_fd}
        if cfg.analytic:
            c_analytic = _oracle_solution(cfg, grid)
            columns['c_analytic'] = c_analytic
            row['discrepancy_pct'] = _relative_difference_pct(c_fd, c_analytic)
        if previous is not None:
            # every coarse node is every other fine node
            row['refinement_difference_pct'] = _relative_difference_pct(c_fd[1::2], previous)
        meta.append(row)
        previous = c_fd
        if profile is None:
            profile = pd.DataFrame(columns)
        logger.info(f'forward solution on N = {grid.N}, M = {grid.M}: {row}')
    meta_df = pd.DataFrame(meta)
    if cfg.refine and cfg.analytic:
        first, second = meta_df['discrepancy_pct']
        meta_df['discrepancy_ratio'] = [nan, first / second if second > 0 else nan]
    return profile, meta_df


def _regularization(cfg: RunConfig, fmap: ForwardMap, order: Optional[int] = None) -> RegularizationConfig:
    order = cfg.reg.order if order is None else order
    lambda_grid = cfg.reg.lambda_grid
    if lambda_grid is None and cfg.reg.fixed_lambda is None:
        D = difference_matrix(order, fmap.grid.n_interior, fmap.grid.dx)
        lambda_grid = default_lambda_grid(fmap.K, D, count=cfg.lambda_count)
    return RegularizationConfig(order=order, lambda_grid=lambda_grid, fixed_lambda=cfg.reg.fixed_lambda)


def synthetic_observation(cfg: RunConfig, fmap: ForwardMap, noise: Optional[NoiseSpec] = None):
    """Observation Y = C^M - A^M C^0 computed by the direct solver, with measurement noise"""
    grid = fmap.grid
    g0 = cfg.sampled_initial_condition(grid)
    trajectory = solve_forward(cfg.params, grid, g0, cfg.sampled_source(grid))
    Y = observation_vector(trajectory[-1], fmap.A_pow_M, g0)
    return add_noise(Y, cfg.noise if noise is None else noise)


def invert_experiment(cfg: RunConfig) -> Tuple[pd.DataFrame, pd.DataFrame, Optional[LCurve]]:
    """Reconstruction of the configured source from its noisy final observation"""
    fmap = assemble_forward_map(cfg.params, cfg.grid)
    Y = synthetic_observation(cfg, fmap)
    r_true = cfg.sampled_source()
    truth = None if cfg.source_is_zero else r_true
    result, curve = invert(fmap, Y, _regularization(cfg, fmap), r_true=truth, workers=cfg.workers)
    profile = pd.DataFrame({'x': cfg.grid.x, 'r_true': r_true, 'r_est': result.r_est})
    meta = {
        'lambda_used': result.lambda_used,
        'residual': result.residual_norm,
        'seminorm': result.solution_seminorm,
        'relative_error_pct': nan if result.relative_error_pct is None else result.relative_error_pct,
        'seed': cfg.noise.seed,
        'noise_level': cfg.noise.level,
        'order': cfg.reg.order,
    }
    if cfg.compare_unregularized:
        D = difference_matrix(cfg.reg.order, cfg.grid.n_interior, cfg.grid.dx)
        try:
            r_unreg = tikhonov_solve(fmap.K, Y, 0.0, D)
        except InversionError as e:
            logger.warning(f'no unregularized reconstruction: {e}')
            r_unreg = None
        profile['r_unreg'] = nan if r_unreg is None else r_unreg
        meta['unregularized_error_pct'] = nan if r_unreg is None or truth is None else relative_error(r_unreg, truth)
    return profile, pd.DataFrame([meta]), curve


def lcurve_experiment(cfg: RunConfig) -> pd.DataFrame:
    """The whole L-curve of the configured problem with the selected corner marked"""
    fmap = assemble_forward_map(cfg.params, cfg.grid)
    Y = synthetic_observation(cfg, fmap)
    lambda_grid = cfg.reg.lambda_grid
    if lambda_grid is None:
        D = difference_matrix(cfg.reg.order, cfg.grid.n_interior, cfg.grid.dx)
        lambda_grid = default_lambda_grid(fmap.K, D, count=cfg.lambda_count)
    # a fixed lambda is ignored here, the whole curve is wanted
    reg = RegularizationConfig(order=cfg.reg.order, lambda_grid=lambda_grid)
    _, curve = invert(fmap, Y, reg, workers=cfg.workers)
    return pd.DataFrame({
        'lambda': curve.lambdas,
        'residual_norm': curve.residual_norms,
        'seminorm': curve.seminorms,
        'curvature': curve.curvature,
        'selected': [i == curve.selected for i in range(curve.lambdas.size)],
    })


def _identity_map(cfg: RunConfig) -> ForwardMap:
    n = cfg.grid.n_interior
    return ForwardMap(K=eye(n), A_pow_M=eye(n), grid=cfg.grid, params=cfg.params, method='identity')


def diagnose_experiment(cfg: RunConfig) -> Tuple[pd.DataFrame, pd.DataFrame]:
    """Singular spectrum (with Picard coefficients when there is a source) and sine perturbation norms"""
    if cfg.debug_identity:
        logger.info('diagnosing the identity map instead of the forward map')
        fmap = _identity_map(cfg)
    else:
        fmap = assemble_forward_map(cfg.params, cfg.grid)
    sigma = svd_spectrum(fmap.K)
    spectrum = pd.DataFrame({'index': range(1, sigma.size + 1), 'sigma': sigma})
    if not cfg.source_is_zero:
        Y = add_noise(fmap.K @ cfg.sampled_source(), cfg.noise)
        spectrum['picard'] = picard_coefficients(fmap.K, Y)
    norms = perturbation_decay_test(cfg.params, cfg.grid, cfg.perturb_amplitude, cfg.perturb_modes, fmap=fmap)
    perturb = pd.DataFrame(norms, columns=['n', 'input_norm', 'output_norm'])
    logger.info(f'singular values span {sigma[0]:.3g} .. {sigma[-1]:.3g}')
    return spectrum, perturb


def sweep_experiment(cfg: RunConfig) -> pd.DataFrame:
    """Relative errors over grid sizes, noise levels, seeds and stabilizer orders

    The number of time steps follows N in the ratio M / N of the configuration.
    """
    if cfg.source_is_zero:
        raise ConfigurationError('The sweep needs a non-zero source to measure reconstruction errors')
    rows = []
    for N in cfg.sweep_N:
        M = max(1, round(cfg.M * N / cfg.N))
        grid = Grid.from_params(cfg.params, N=N, M=M)
        fmap = assemble_forward_map(cfg.params, grid)
        r_true = cfg.sampled_source(grid)
        regs = {order: _regularization(cfg, fmap, order) for order in cfg.sweep_orders}
        for level in cfg.sweep_noise_levels:
            for seed in cfg.sweep_seeds:
                Y = synthetic_observation(cfg, fmap, NoiseSpec(level=level, seed=seed))
                for order in cfg.sweep_orders:
                    result, _ = invert(fmap, Y, regs[order], r_true=r_true, workers=cfg.workers)
                    rows.append({'N': N, 'noise_level': level, 'seed': seed, 'order': order,
                                 'lambda_used': result.lambda_used,
                                 'relative_error_pct': result.relative_error_pct})
        logger.info(f'sweep finished for N = {N}')
    return pd.DataFrame(rows)
