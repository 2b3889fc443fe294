#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# SPDX-License-Identifier: BSD-3-Clause
# fade.core.exceptions: Exceptions thrown by other fade modules
# Copyright (C) 2026 fade contributors
# see AUTHORS.rst for a list of contributors

"""
fade.core.exceptions
====================

Exceptions thrown by other fade modules
"""


class ConfigurationError(Exception):
    """User-provided configuration contains an error"""


class ParametersError(ConfigurationError):
    """Model, grid or solver parameters violate their admissibility constraints"""


class ProfileError(ConfigurationError):
    """Source or initial condition specification cannot be sampled"""


class NumericalError(Exception):
    """A computation failed on otherwise admissible input"""


class SingularSystemError(NumericalError):
    """The implicit system matrix cannot be factorized"""


class QuadratureError(NumericalError):
    """The spectral oracle cannot resolve the requested evaluation"""


class InversionError(NumericalError):
    """The regularized source estimation cannot be carried out"""
