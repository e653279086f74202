"""Renders pinchsim CSV output into figures.

Deliberately independent of the simulator package: the commented CSV schema
is the only interface.
"""

from .csvio import SchemaError, read_csv
from .plots import FigureSpec, plot_gain_vs_n, plot_kappa_sweep

__version__ = "0.1.0"
