#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# SPDX-License-Identifier: BSD-3-Clause
# test_json_io
# Copyright (C) 2026 fade contributors
# see AUTHORS.rst for a list of contributors

"""
Checks run configurations: defaults, validation, overrides and the source and initial profiles
"""

from logging import INFO
from pathlib import Path
import pytest
from numpy import pi, sin
from numpy.testing import assert_allclose, assert_array_equal
import pandas as pd

from fade.core.exceptions import ConfigurationError, ParametersError, ProfileError
from fade.core.utils import make_profile, write_csv
from fade.tools.json_io import RunConfig, load_json, load_run_config, save_json


TEST_DIR = Path(__file__).parent
EXAMPLE_DATA = TEST_DIR.parent / 'fade' / 'example-data'
MINIMAL = {'nu': 0.3, 'd': 3.0, 'alpha': 1.5, 'L': 7.0, 'T': 1.0, 'N': 10, 'M': 5}


def test_minimal_configuration_uses_defaults(caplog):
    with caplog.at_level(INFO, logger='fade.tools.json_io'):
        cfg = RunConfig(**MINIMAL)
    assert cfg.theta == 0.0
    assert cfg.grid.n_interior == 9
    assert cfg.grid.dt == 0.2
    assert cfg.reg.order == 1
    assert cfg.reg.lambda_grid is None
    assert cfg.noise.level == 0.0
    assert cfg.workers == 1
    assert cfg.output_dir == Path('.')
    assert cfg.source_is_zero
    assert_array_equal(cfg.sampled_source(), 0.0)
    assert cfg.spectral_config() is None
    assert 'missing lambda_count attribute in run configuration' in caplog.text


@pytest.mark.parametrize('name', ['sine_source.json', 'heat_limit.json', 'gaussian_pulse.json'])
def test_example_configurations_load(name):
    cfg = load_run_config(EXAMPLE_DATA / name)
    assert cfg.params.alpha in (1.5, 2.0)


def test_example_source():
    cfg = load_run_config(EXAMPLE_DATA / 'sine_source.json')
    assert_allclose(cfg.sampled_source(), 5 * sin(2 * pi * cfg.grid.x / 7), rtol=1e-14, atol=1e-14)
    assert cfg.reg.order == 1
    assert cfg.noise.to_json() == {'level': 0.05, 'seed': 0}


def test_overrides():
    cfg = load_run_config(EXAMPLE_DATA / 'sine_source.json', seed=12, output_dir=None)
    assert cfg.noise.seed == 12
    assert cfg.output_dir == Path('fade-results')
    changed = cfg.replace(noise_level=0.01)
    assert changed.noise.level == 0.01
    assert changed.noise.seed == 12
    assert cfg.noise.level == 0.05


def test_to_json_round_trip(tmp_path):
    cfg = load_run_config(EXAMPLE_DATA / 'sine_source.json')
    save_json(cfg.to_json(), tmp_path / 'saved.json')
    again = load_run_config(tmp_path / 'saved.json')
    assert again.to_json() == cfg.to_json()
    assert load_json(tmp_path / 'saved.json')['output_dir'] == 'fade-results'


@pytest.mark.parametrize('changes, message', [
    ({'sigma': 1.0}, 'Unknown configuration keys: sigma'),
    ({'N': None}, 'Missing configuration keys: N'),
    ({'lambda_count': 0}, 'Regularization grid is empty'),
    ({'lambda_min': 1e-6}, 'must be given together'),
    ({'workers': 0}, 'workers must be a positive integer'),
    ({'source_type': 'square'}, 'Unknown profile type'),
    ({'ic_type': 'gaussian', 'ic_width': -1.0}, 'positive width'),
    ({'source_type': 'samples'}, 'needs a list of samples'),
])
def test_invalid_configuration(changes, message):
    with pytest.raises(ConfigurationError, match=message):
        RunConfig(**{**MINIMAL, **changes})


def test_invalid_model_is_a_parameters_error():
    with pytest.raises(ParametersError, match='skew bound'):
        RunConfig(**{**MINIMAL, 'theta': 0.9})


def test_spectral_settings_come_in_pairs():
    cfg = RunConfig(**{**MINIMAL, 'k_max': 32.0})
    with pytest.raises(ConfigurationError, match='given together'):
        cfg.spectral_config()
    explicit = RunConfig(**{**MINIMAL, 'k_max': 32.0, 'n_k': 256}).spectral_config()
    assert (explicit.k_max, explicit.n_k, explicit.x_pad) == (32.0, 256, 0.0)


def test_explicit_lambda_grid():
    cfg = RunConfig(**{**MINIMAL, 'lambda_min': 1e-6, 'lambda_max': 1e-2, 'lambda_count': 5, 'reg_order': 0})
    assert_allclose(cfg.reg.lambda_grid, [1e-6, 1e-5, 1e-4, 1e-3, 1e-2], rtol=1e-12)
    assert cfg.reg.order == 0


def test_tabulated_source_on_the_solver_grid():
    samples = [float(i) for i in range(1, 10)]
    cfg = RunConfig(**{**MINIMAL, 'source_type': 'samples', 'source_samples': samples})
    assert_allclose(cfg.sampled_source(), samples, rtol=1e-14)


def test_load_errors(tmp_path):
    with pytest.raises(ConfigurationError, match='Cannot read'):
        load_run_config(tmp_path / 'absent.json')
    broken = tmp_path / 'broken.json'
    broken.write_text('{"nu": 0.3,', encoding='utf-8')
    with pytest.raises(ConfigurationError, match='not valid JSON'):
        load_run_config(broken)
    listed = tmp_path / 'list.json'
    save_json([1, 2], listed)
    with pytest.raises(ConfigurationError, match='JSON object'):
        load_run_config(listed)
    texts = tmp_path / 'texts.json'
    save_json({**MINIMAL, 'N': 'ten'}, texts)
    with pytest.raises(ConfigurationError):
        load_run_config(texts)


def test_profiles():
    assert_array_equal(make_profile('zero', 7.0)([1.0, 2.0]), [0.0, 0.0])
    bump = make_profile('gaussian', 10.0, amplitude=2.0)
    assert float(bump(5.0)) == 2.0
    assert float(bump(5.5)) == pytest.approx(2 * 2.718281828459045 ** -0.5)
    with pytest.raises(ProfileError):
        make_profile('samples', 7.0, samples=[])


def test_csv_is_deterministic(tmp_path):
    df = pd.DataFrame({'x': [0.1, 1 / 3], 'y': [2.0, 1e-20]})
    write_csv(df, tmp_path / 'a.csv')
    write_csv(df.copy(), tmp_path / 'b.csv')
    content = (tmp_path / 'a.csv').read_bytes()
    assert content == (tmp_path / 'b.csv').read_bytes()
    assert content.decode('utf-8') == 'x,y\n0.10000000000000001,2\n0.33333333333333331,9.9999999999999995e-21\n'
