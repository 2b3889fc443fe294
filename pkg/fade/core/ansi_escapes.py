#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# SPDX-License-Identifier: BSD-3-Clause
# fade.core.ansi_escapes: Terminal escape codes for colored CLI messages
# Copyright (C) 2026 fade contributors
# see AUTHORS.rst for a list of contributors

"""
fade.core.ansi_escapes
======================

Terminal escape codes for colored CLI messages
"""

red = '\x1b[1;31;40m'
blue = '\x1b[1;34;40m'
cyan = '\x1b[1;36;40m'
reset = '\x1b[0m'


def colored(text: str, color: str) -> str:
    """Wrap text in a color escape and the reset sequence

    >>> colored('ok', blue) == blue + 'ok' + reset
    True
    """
    return f'{color}{text}{reset}'
