"""Exact Følner-function and isoperimetry checks for Z wr D and BS(1,p)."""

__version__ = "0.1.0"
