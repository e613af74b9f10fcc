"""Weierstrass prefractals, increment bounds and box dimension."""

from .cli import app, main

__all__ = ["app", "main"]
