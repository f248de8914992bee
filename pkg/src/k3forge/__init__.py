"""Exact verification toolkit for K3 surfaces with a (Z/2)^2 automorphism group."""

__version__ = "0.1.0"
