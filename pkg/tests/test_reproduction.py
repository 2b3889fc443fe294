#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# SPDX-License-Identifier: BSD-3-Clause
# test_reproduction
# Copyright (C) 2026 fade contributors
# see AUTHORS.rst for a list of contributors

"""
End-to-end reproduction of the reconstruction example and of the solver cross-validation

The example reconstructs 5 sin(2 pi x / 7) from the final concentration of
-0.3 dc/dx + 3 D^1.5_0.3 c on [0, 7] up to T = 1 with N = M = 100.
"""

from math import sqrt
from pathlib import Path
import pytest
from numpy.testing import assert_allclose

from fade.core.forward import assemble_forward_map
from fade.core.inversion import difference_matrix, invert, relative_error, svd_spectrum, tikhonov_solve
from fade.core.parameters import NoiseSpec, RegularizationConfig
from fade.tools.json_io import load_run_config
from fade.tools.worker_utils import _regularization, diagnose_experiment, forward_experiment, \
    synthetic_observation, sweep_experiment


EXAMPLE_DATA = Path(__file__).parent.parent / 'fade' / 'example-data'


@pytest.fixture(scope='module')
def example():
    return load_run_config(EXAMPLE_DATA / 'sine_source.json')


@pytest.fixture(scope='module')
def sweep(example):
    cfg = example.replace(sweep_N=[100], sweep_noise_levels=[0.01, 0.02, 0.05], sweep_seeds=[0, 1, 2, 3, 4],
                          sweep_orders=[0, 1])
    return sweep_experiment(cfg)


def test_noise_free_reconstruction(example):
    fmap = assemble_forward_map(example.params, example.grid)
    Y = synthetic_observation(example, fmap, NoiseSpec(level=0.0, seed=0))
    reg = RegularizationConfig(order=1, fixed_lambda=1e-14)
    result, _ = invert(fmap, Y, reg, r_true=example.sampled_source())
    assert result.relative_error_pct < 1.0


@pytest.mark.parametrize('level, low, high', [(0.01, 1.0, 10.0), (0.05, 3.0, 15.0)])
def test_noisy_reconstruction_error(sweep, level, low, high):
    rows = sweep[(sweep['order'] == 1) & (sweep['noise_level'] == level)]
    assert len(rows) == 5
    assert low <= rows['relative_error_pct'].median() < high


@pytest.mark.parametrize('level', [0.01, 0.02, 0.05])
def test_first_order_stabilizer_wins(sweep, level):
    rows = sweep[sweep['noise_level'] == level].pivot(index='seed', columns='order', values='relative_error_pct')
    assert (rows[1] < rows[0]).sum() >= 4


def test_l_curve_corner_beats_the_grid_ends(example):
    fmap = assemble_forward_map(example.params, example.grid)
    Y = synthetic_observation(example, fmap)
    r_true = example.sampled_source()
    reg = _regularization(example, fmap)
    result, curve = invert(fmap, Y, reg, r_true=r_true)
    D = difference_matrix(1, example.grid.n_interior, example.grid.dx)
    for lam in curve.lambdas[[0, -1]]:
        assert result.relative_error_pct < relative_error(tikhonov_solve(fmap.K, Y, lam, D), r_true)


def test_classical_limit_matches_the_heat_kernel():
    cfg = load_run_config(EXAMPLE_DATA / 'heat_limit.json')
    profile, meta = forward_experiment(cfg)
    assert len(profile) == 399
    assert meta['discrepancy_pct'][0] < 1.0


def test_solvers_agree_and_converge():
    cfg = load_run_config(EXAMPLE_DATA / 'gaussian_pulse.json')
    _, meta = forward_experiment(cfg)
    assert meta['N'].tolist() == [400, 800]
    assert meta['discrepancy_pct'][0] < 2.0
    assert meta['discrepancy_ratio'][1] >= 1.3
    assert meta['mass_final'][1] > 0


def test_solvers_agree_on_the_example_constants():
    cfg = load_run_config(EXAMPLE_DATA / 'gaussian_pulse.json').replace(L=7.0, T=0.1, ic_center=3.5, ic_width=0.3)
    _, meta = forward_experiment(cfg)
    assert (meta['N'].tolist(), meta['M'].tolist()) == ([400, 800], [400, 800])
    assert meta['discrepancy_pct'][0] < 2.0
    assert meta['discrepancy_ratio'][1] >= 1.3


def test_ill_posedness(example):
    spectrum, perturb = diagnose_experiment(example)
    sigma = spectrum['sigma'].to_numpy()
    assert_allclose(sigma, svd_spectrum(assemble_forward_map(example.params, example.grid).K), rtol=1e-12)
    assert sigma[0] / sigma[-1] > 100
    assert perturb['n'].tolist() == [1, 2, 4, 8, 16, 32]
    outputs = perturb['output_norm'].to_numpy()
    assert (outputs[1:] < outputs[:-1]).all()
    assert outputs[0] / outputs[-1] >= 10
    assert (abs(perturb['input_norm'] / sqrt(3.5) - 1) < 0.02).all()
    assert 'picard' in spectrum.columns
