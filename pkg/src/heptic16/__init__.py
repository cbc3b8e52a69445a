"""Computational checks for degree-16 rational curves on a general heptic fourfold."""

__version__ = "0.1.0"
