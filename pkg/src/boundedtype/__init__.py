"""Numerics for meromorphic functions of bounded type on the upper half-plane."""

__version__ = "0.1.0"
