"""Exact lattice and finite-group computations for elliptic fibrations and
quasi-polarizations on Enriques surfaces."""

__version__ = "0.1.0"
