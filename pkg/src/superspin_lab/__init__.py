"""Numerical checks for boost-curve geometry, the joint boost algebra and deformed Dirac spinors."""

__version__ = "0.1.0"
