"""Pfaffian ideals of ladders, their codimension, and G-biliaison chains."""

__version__ = "0.1.0"
