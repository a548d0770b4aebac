"""Numerical workbench for Berezin's symbol calculus on H modulo PSL(2,Z)."""

__version__ = "0.1.0"
