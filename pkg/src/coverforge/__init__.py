"""Computational toolkit for abelian ramified covers and their universal monoids."""

__version__ = "0.1.0"
