"""Exact symbolic toolkit for split G2 geometry and Lie contact twistor spaces."""

__version__ = "0.1.0"
