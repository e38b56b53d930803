"""Generating functions of Euler characteristics of moduli of torsion free sheaves on toric surfaces."""

from .qseries import LaurentSeries, eta_inverse_power

__all__ = ["LaurentSeries", "eta_inverse_power"]
__version__ = "0.1.0"
