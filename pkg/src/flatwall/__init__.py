"""Flat walls, renditions and the counterwall family, checked by machine."""

__version__ = "0.1.0"
