"""
fade is a solver suite for the one-dimensional space-fractional advection-dispersion equation with a
Riesz-Feller dispersion operator.

The finite-difference direct solver, the spectral Green-function oracle and the Tikhonov source estimator live in
:py:mod:`.core`.
Run configurations, experiment drivers and the ``fade`` command line are in :py:mod:`.tools`.
"""
