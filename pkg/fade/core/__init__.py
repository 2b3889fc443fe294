"""
Numerics of the space-fractional advection-dispersion equation

Model constants and discretization sizes are defined in :py:mod:`.parameters`.
The shared fractional calculus (Grunwald weights, skew coefficients, Fourier symbol) is in
:py:mod:`.fractional`; :py:mod:`.forward` steps the implicit scheme and builds the source-to-observation map,
:py:mod:`.analytic` evaluates the whole-line fundamental solution, and :py:mod:`.inversion` recovers the source.
"""
