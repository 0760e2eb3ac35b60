"""Bound states of attractive Dirac-delta wells in one and two dimensions.

The 1D well has a single bound state whose energy five independent
numerical routes must agree on; the 2D well is solved by matching
modified Bessel functions across a circle, and the energy of that
state is evaluated under both derivative-jump conventions.  All
special functions, quadrature, root finding, and the distributional
calculus are implemented in-package.
"""

__version__ = "0.1.0"
