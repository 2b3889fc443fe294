#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# SPDX-License-Identifier: BSD-3-Clause
# conftest
# Copyright (C) 2026 fade contributors
# see AUTHORS.rst for a list of contributors

import pytest
from numpy import pi, sin

from fade.core.forward import assemble_forward_map
from fade.core.parameters import Grid, ModelParams


@pytest.fixture(scope='session')
def example_params():
    """Constants of the reconstruction example: -0.3 dc/dx + 3 D^1.5_0.3 c on [0, 7] up to T = 1"""
    return ModelParams(nu=0.3, d=3.0, alpha=1.5, theta=0.3, L=7.0, T=1.0)


@pytest.fixture(scope='session')
def example_grid(example_params):
    return Grid.from_params(example_params, N=100, M=100)


@pytest.fixture(scope='session')
def example_fmap(example_params, example_grid):
    return assemble_forward_map(example_params, example_grid)


@pytest.fixture(scope='session')
def example_source(example_grid):
    return 5 * sin(2 * pi * example_grid.x / 7)
