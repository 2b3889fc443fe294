#!/usr/bin/env python3
# -*- coding: utf-8 -*-

# SPDX-License-Identifier: BSD-3-Clause
# fade.tools.cli: the fade command line
# Copyright (C) 2026 fade contributors
# see AUTHORS.rst for a list of contributors

"""
fade.tools.cli
==============

The ``fade`` command line. Every sub-command reads a JSON run configuration, runs one experiment and writes its
CSV tables to the output directory.

Exit status is 0 on success, 1 for usage and configuration errors and 2 when a computation fails.
"""

import argparse
import logging
import os
from pathlib import Path
import sys
from typing import List, Optional
import pandas as pd
from tabulate import tabulate

from fade.core import ansi_escapes
from fade.core import exceptions
from fade.core.utils import write_csv
from fade.tools.json_io import RunConfig, load_run_config
from fade.tools.worker_utils import diagnose_experiment, forward_experiment, invert_experiment, \
    lcurve_experiment, sweep_experiment


_logger = logging.getLogger(__name__)
_examples_dir = Path(__file__).parent.parent / 'example-data'
_help_footer = '''
Example configurations are shipped in the directory printed by fade-example-data.

'''
LOG_LEVEL_VARIABLE = 'FADE_LOG_LEVEL'
EXIT_CONFIGURATION_ERROR = 1
EXIT_NUMERICAL_ERROR = 2


def show_example_data_dir():
    """Print the example data directory path."""
    print(f'{_examples_dir}/')


class _ArgumentParser(argparse.ArgumentParser):
    """argparse exits with 2 on usage errors, which is reserved here for numerical failures"""
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f'{ansi_escapes.red}Invocation error:{ansi_escapes.reset} {message}', file=sys.stderr)
        sys.exit(EXIT_CONFIGURATION_ERROR)


def _setup_logging(args: argparse.Namespace):
    """Set up logging based on verbosity level, or on FADE_LOG_LEVEL when no -v is given.

    :param args: The parsed command-line arguments.
    :type args: argparse.Namespace
    """
    if args.verbose:
        level = {1: logging.INFO}.get(args.verbose, logging.DEBUG)
    else:
        level = getattr(logging, os.environ.get(LOG_LEVEL_VARIABLE, 'WARNING').upper(), None)
        if not isinstance(level, int):
            level = logging.WARNING
    logging.basicConfig(level=level)


def _output_dir(cfg: RunConfig) -> Path:
    try:
        cfg.output_dir.mkdir(parents=True, exist_ok=True)
    except OSError as e:
        raise exceptions.ConfigurationError(f'Cannot create output directory {cfg.output_dir}: {e.strerror}') from e
    return cfg.output_dir


def _save(df: pd.DataFrame, cfg: RunConfig, name: str) -> Path:
    path = _output_dir(cfg) / name
    write_csv(df, path)
    _logger.info(f'{len(df)} rows written to {path}')
    return path


def _summary(title: str, df: pd.DataFrame):
    print(f'{ansi_escapes.blue}{title}{ansi_escapes.reset}')
    print(tabulate(df, headers='keys', tablefmt='psql', showindex=False, floatfmt='.6g'))


def cmd_forward(cfg: RunConfig) -> List[Path]:
    """forward.csv with the final FD profile (and the oracle), forward_meta.csv with one row per grid"""
    profile, meta = forward_experiment(cfg)
    _summary('Direct problem', meta)
    return [_save(profile, cfg, 'forward.csv'), _save(meta, cfg, 'forward_meta.csv')]


def cmd_invert(cfg: RunConfig) -> List[Path]:
    """invert.csv with the true and reconstructed sources, invert_meta.csv with the reconstruction quality"""
    profile, meta, _ = invert_experiment(cfg)
    _summary('Inverse problem', meta)
    return [_save(profile, cfg, 'invert.csv'), _save(meta, cfg, 'invert_meta.csv')]


def cmd_lcurve(cfg: RunConfig) -> List[Path]:
    """lcurve.csv, one row per lambda with the corner marked"""
    curve = lcurve_experiment(cfg)
    _summary('L-curve corner', curve[curve['selected']])
    return [_save(curve, cfg, 'lcurve.csv')]


def cmd_diagnose(cfg: RunConfig) -> List[Path]:
    """svd.csv with the singular spectrum of K and perturb.csv with the sine perturbation norms"""
    spectrum, perturb = diagnose_experiment(cfg)
    _summary('Sine perturbations through K', perturb)
    return [_save(spectrum, cfg, 'svd.csv'), _save(perturb, cfg, 'perturb.csv')]


def cmd_sweep(cfg: RunConfig) -> List[Path]:
    """sweep.csv with the relative error of every (N, noise level, seed, order) reconstruction"""
    table = sweep_experiment(cfg)
    medians = table.groupby(['N', 'noise_level', 'order'], as_index=False)['relative_error_pct'].median()
    _summary('Median relative error [%]', medians)
    return [_save(table, cfg, 'sweep.csv')]


_COMMANDS = {
    'forward': (cmd_forward, 'solve the direct problem'),
    'invert': (cmd_invert, 'reconstruct the source from a noisy final observation'),
    'lcurve': (cmd_lcurve, 'tabulate the L-curve of the inverse problem'),
    'diagnose': (cmd_diagnose, 'singular spectrum and perturbation decay of the forward map'),
    'sweep': (cmd_sweep, 'relative errors over grids, noise levels, seeds and stabilizer orders'),
}


def _build_parser() -> argparse.ArgumentParser:
    parser = _ArgumentParser(
        prog='fade',
        description='Direct and inverse source problems of the space-fractional advection-dispersion equation',
        epilog=_help_footer,
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    subparsers = parser.add_subparsers(dest='command', required=True, metavar='COMMAND', parser_class=_ArgumentParser)
    for name, (_, help_text) in _COMMANDS.items():
        sub = subparsers.add_parser(name, help=help_text, description=help_text)
        sub.add_argument('--config', type=Path, required=True, metavar='FILE.json', help='run configuration')
        sub.add_argument('--seed', type=int, help='overrides the noise seed of the configuration')
        sub.add_argument('--out', type=Path, metavar='DIR', help='overrides the output directory of the configuration')
        sub.add_argument('-v', '--verbose', action='count', default=0,
                         help=f'increase verbosity (can be repeated), defaults to ${LOG_LEVEL_VARIABLE}')
    return parser


def main(args: Optional[List[str]] = None):
    parser = _build_parser()
    args = parser.parse_args(args if args is not None else sys.argv[1:])
    _setup_logging(args)
    command = _COMMANDS[args.command][0]
    try:
        cfg = load_run_config(args.config, seed=args.seed, output_dir=None if args.out is None else str(args.out))
        written = command(cfg)
    except exceptions.ParametersError as e:
        print(f'{ansi_escapes.red}Parameters error:{ansi_escapes.reset} {e}')
        sys.exit(EXIT_CONFIGURATION_ERROR)
    except exceptions.ConfigurationError as e:
        print(f'{ansi_escapes.red}Configuration error:{ansi_escapes.reset} {e}')
        sys.exit(EXIT_CONFIGURATION_ERROR)
    except exceptions.NumericalError as e:
        print(f'{ansi_escapes.red}Numerical failure:{ansi_escapes.reset} {e}')
        sys.exit(EXIT_NUMERICAL_ERROR)
    for path in written:
        print(f'{ansi_escapes.blue}Saved CSV to {path}{ansi_escapes.reset}')
