"""Rasmussen s-invariant via dotted cobordisms, scanning and Lee-cycle divisibility."""

__version__ = "0.1.0"
