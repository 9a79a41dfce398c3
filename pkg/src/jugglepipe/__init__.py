"""Juggling patterns, positroid varieties and affine pipe dreams."""

__version__ = "0.1.0"
