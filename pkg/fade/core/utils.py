#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# SPDX-License-Identifier: BSD-3-Clause
# fade.core.utils: profiles and output helpers used with fade
# Copyright (C) 2026 fade contributors
# see AUTHORS.rst for a list of contributors

"""
fade.core.utils
===============

This module contains utility functions that are used with fade: the source and initial-condition presets and the
CSV writer shared by all commands.
"""

from pathlib import Path
from typing import Callable, Optional, Sequence, Union
from numpy import asarray, exp, interp, isfinite, linspace, ndarray, pi, sin, zeros, zeros_like, all as np_all
import pandas as pd

from fade.core.exceptions import ProfileError

PROFILE_TYPES = ('zero', 'sine', 'gaussian', 'samples')
CSV_FLOAT_FORMAT = '%.17g'


def sine_profile(L: float, amplitude: float = 1.0, wavenumber: float = 1.0) -> Callable:
    """A sin(q pi x / L)

    >>> f = sine_profile(7.0, amplitude=5.0, wavenumber=2)
    >>> round(float(f(1.75)), 12)
    5.0
    """
    return lambda x: amplitude * sin(wavenumber * pi * asarray(x, dtype=float) / L)


def gaussian_profile(L: float, amplitude: float = 1.0, center: Optional[float] = None,
                     width: Optional[float] = None) -> Callable:
    """A exp(-(x - x0)^2 / (2 w^2)), centred on L / 2 with width L / 20 unless given"""
    center = L / 2 if center is None else center
    width = L / 20 if width is None else width
    if width <= 0:
        raise ProfileError(f'Gaussian profile needs a positive width, got {width}')
    return lambda x: amplitude * exp(-(asarray(x, dtype=float) - center) ** 2 / (2 * width ** 2))


def tabulated_profile(L: float, samples: Sequence[float]) -> Callable:
    """Piecewise linear profile through m samples at the interior nodes of a uniform grid of m + 1 intervals

    The profile vanishes at x = 0 and x = L, so m = N - 1 samples are reproduced exactly on the solver grid.

    >>> f = tabulated_profile(4.0, [1.0, 2.0, 1.0])
    >>> [float(v) for v in f([0.0, 1.0, 1.5, 2.0, 4.0])]
    [0.0, 1.0, 1.5, 2.0, 0.0]
    """
    values = asarray(samples, dtype=float).ravel()
    if not values.size:
        raise ProfileError('Tabulated profile needs at least one sample')
    if not np_all(isfinite(values)):
        raise ProfileError('Tabulated profile contains non-finite samples')
    nodes = linspace(0.0, L, values.size + 2)
    padded = zeros(values.size + 2)
    padded[1:-1] = values
    return lambda x: interp(asarray(x, dtype=float), nodes, padded)


def make_profile(kind: str, L: float, amplitude: float = 1.0, wavenumber: float = 1.0,
                 center: Optional[float] = None, width: Optional[float] = None,
                 samples: Optional[Sequence[float]] = None) -> Callable:
    """Source or initial-condition profile from its preset name

    :raises ProfileError: unknown preset or incomplete preset description
    """
    if kind == 'zero':
        return lambda x: zeros_like(asarray(x, dtype=float))
    if kind == 'sine':
        return sine_profile(L, amplitude, wavenumber)
    if kind == 'gaussian':
        return gaussian_profile(L, amplitude, center, width)
    if kind == 'samples':
        if samples is None:
            raise ProfileError('Profile type "samples" needs a list of samples')
        return tabulated_profile(L, samples)
    raise ProfileError(f'Unknown profile type {kind!r}, expected one of {", ".join(PROFILE_TYPES)}')


def sample_profile(profile: Callable, x: ndarray) -> ndarray:
    values = asarray(profile(x), dtype=float) * (zeros(x.shape) + 1)
    if not np_all(isfinite(values)):
        raise ProfileError('Profile evaluates to non-finite values on the grid')
    return values


def write_csv(df: pd.DataFrame, filename: Union[str, Path]):
    """Write a result table with a single header line and 17 significant digits

    Identical tables always give byte-identical files.
    """
    df.to_csv(filename, index=False, float_format=CSV_FLOAT_FORMAT, lineterminator='\n', encoding='utf-8')
