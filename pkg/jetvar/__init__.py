"""Symbolic variational calculus on jet spaces over a half-space with boundary x_n = 0."""

__version__ = "0.1.0"
