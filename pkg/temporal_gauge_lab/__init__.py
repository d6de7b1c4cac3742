"""
Finite-mode numerical lab for free electrodynamics in the temporal gauge
"""

__version__ = "0.1.0"
