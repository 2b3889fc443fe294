#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# SPDX-License-Identifier: BSD-3-Clause
# fade.tools.json_io: Loading and saving run configurations in JSON format
# Copyright (C) 2026 fade contributors
# see AUTHORS.rst for a list of contributors

"""
fade.tools.json_io
==================

Loading and saving run configurations. A run configuration is a flat JSON object; every key has a default except
the model constants and the grid sizes. Unknown keys are rejected so that a typo never goes unnoticed.
"""

from logging import getLogger
from pathlib import Path
import json
from typing import Dict, Optional, Union

from fade.core.exceptions import ConfigurationError
from fade.core.fractional import validate_params
from fade.core.parameters import Grid, ModelParams, NoiseSpec, RegularizationConfig, SpectralConfig
from fade.core.utils import make_profile, sample_profile


_logger = getLogger(__name__)

DEFAULT_PERTURBATION_MODES = [1, 2, 4, 8, 16, 32]


class _JsonThing:
    """Base class for flat json configurations
    """
    def update_attr(self, default_values, kwargs, name):
        """Build the attributes based on kwargs dict
        """
        for k, v in default_values.items():
            setattr(self, k, kwargs.get(k, v))
            if k not in kwargs and v is not None:
                _logger.info(f'missing {k} attribute in {name}, default value is {k} = {v}')


class RunConfig(_JsonThing):
    """Everything an experiment needs: model, grid, source and initial profiles, noise, regularization,
    diagnostics and outputs
    """
    required = ('nu', 'd', 'alpha', 'L', 'T', 'N', 'M')
    default_values = {
        'nu': None,
        'd': None,
        'alpha': None,
        'theta': 0.0,
        'L': None,
        'T': None,
        'N': None,
        'M': None,
        'source_type': 'zero',
        'source_amplitude': 1.0,
        'source_wavenumber': 1.0,
        'source_center': None,
        'source_width': None,
        'source_samples': None,
        'ic_type': 'zero',
        'ic_amplitude': 1.0,
        'ic_wavenumber': 1.0,
        'ic_center': None,
        'ic_width': None,
        'ic_samples': None,
        'noise_level': 0.0,
        'seed': 0,
        'reg_order': 1,
        'lambda_min': None,
        'lambda_max': None,
        'lambda_count': 30,
        'fixed_lambda': None,
        'workers': 1,
        'analytic': False,
        'refine': False,
        'compare_unregularized': False,
        'debug_identity': False,
        'k_max': None,
        'n_k': None,
        'x_pad': None,
        'perturb_amplitude': 1.0,
        'perturb_modes': DEFAULT_PERTURBATION_MODES,
        'sweep_N': [40, 60, 80, 100, 120, 140, 160],
        'sweep_noise_levels': [0.01, 0.02, 0.05],
        'sweep_seeds': [0, 1, 2, 3, 4],
        'sweep_orders': [0, 1],
        'output_dir': '.',
    }

    def __init__(self, **kwargs):
        unknown = sorted(set(kwargs) - set(self.default_values))
        if unknown:
            raise ConfigurationError(f'Unknown configuration keys: {", ".join(unknown)}')
        missing = [k for k in self.required if kwargs.get(k) is None]
        if missing:
            raise ConfigurationError(f'Missing configuration keys: {", ".join(missing)}')
        self._raw = dict(kwargs)
        self.update_attr(self.default_values, kwargs, 'run configuration')
        self.params = validate_params(ModelParams(nu=self.nu, d=self.d, alpha=self.alpha, theta=self.theta,
                                                  L=self.L, T=self.T))
        self.grid = Grid.from_params(self.params, N=self.N, M=self.M)
        self.noise = NoiseSpec(level=self.noise_level, seed=self.seed)
        self.reg = self._regularization()
        self.source = make_profile(self.source_type, self.L, amplitude=self.source_amplitude,
                                   wavenumber=self.source_wavenumber, center=self.source_center,
                                   width=self.source_width, samples=self.source_samples)
        self.initial_condition = make_profile(self.ic_type, self.L, amplitude=self.ic_amplitude,
                                              wavenumber=self.ic_wavenumber, center=self.ic_center,
                                              width=self.ic_width, samples=self.ic_samples)
        if int(self.workers) != self.workers or self.workers < 1:
            raise ConfigurationError(f'workers must be a positive integer, got {self.workers}')
        self.output_dir = Path(self.output_dir)

    def _regularization(self) -> RegularizationConfig:
        if int(self.lambda_count) != self.lambda_count or self.lambda_count < 1:
            raise ConfigurationError(f'Regularization grid is empty: lambda_count = {self.lambda_count}')
        if (self.lambda_min is None) != (self.lambda_max is None):
            raise ConfigurationError('lambda_min and lambda_max must be given together')
        if self.lambda_min is None:
            return RegularizationConfig(order=self.reg_order, fixed_lambda=self.fixed_lambda)
        return RegularizationConfig.log_spaced(self.reg_order, self.lambda_min, self.lambda_max,
                                               count=self.lambda_count, fixed_lambda=self.fixed_lambda)

    @property
    def source_is_zero(self):
        return self.source_type == 'zero'

    def sampled_source(self, grid: Optional[Grid] = None):
        grid = self.grid if grid is None else grid
        return sample_profile(self.source, grid.x)

    def sampled_initial_condition(self, grid: Optional[Grid] = None):
        grid = self.grid if grid is None else grid
        return sample_profile(self.initial_condition, grid.x)

    def spectral_config(self) -> Optional[SpectralConfig]:
        """Explicit quadrature settings, or None to let the oracle choose them"""
        if self.k_max is None and self.n_k is None:
            return None
        if self.k_max is None or self.n_k is None:
            raise ConfigurationError('k_max and n_k must be given together')
        return SpectralConfig(k_max=self.k_max, n_k=self.n_k, x_pad=self.x_pad or 0.0)

    def replace(self, **changes):
        """New configuration with some keys changed, e.g. the --seed and --out overrides"""
        return RunConfig(**{**self._raw, **changes})

    def to_json(self) -> Dict:
        return {k: getattr(self, k) if k != 'output_dir' else str(self.output_dir) for k in self.default_values}


def load_json(filename: Union[str, Path]) -> dict:
    """load json data

    :param filename: Path to the file to convert
    :type filemname: Path
    :return: json data in a dictionnary
    :rtype: Dict
    """
    try:
        with open(filename, 'r', encoding='utf-8') as f:
            data = json.load(f)
    except OSError as e:
        raise ConfigurationError(f'Cannot read {filename}: {e.strerror}') from e
    except json.JSONDecodeError as e:
        raise ConfigurationError(f'{filename} is not valid JSON: {e}') from e
    return data


def save_json(obj: Dict, filename: Union[str, Path]):
    """Save in json format.

    :param obj: data to be saved
    :type obj: Dict
    :param filename: Path of the file where to save the data
    :type filename: Path
    """
    with open(filename, 'w', encoding='utf-8') as f:
        json.dump(obj, f, indent=2, ensure_ascii=False)


def load_run_config(filename: Union[str, Path], **overrides) -> RunConfig:
    """Read a run configuration; overrides that are None are ignored"""
    data = load_json(filename)
    if not isinstance(data, dict):
        raise ConfigurationError(f'{filename} must contain a JSON object')
    data.update({k: v for k, v in overrides.items() if v is not None})
    _logger.debug(f'run configuration loaded from {filename}')
    try:
        return RunConfig(**data)
    except (TypeError, ValueError) as e:
        raise ConfigurationError(f'Invalid value in {filename}: {e}') from e
