"""Clifford simulation of a Floquet cartoon matrix model and its scrambling diagnostics."""

__version__ = "0.1.0"
