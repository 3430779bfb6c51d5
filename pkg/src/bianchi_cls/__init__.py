"""Desk-scale classification of principal congruence link complements."""

__version__ = "0.1.0"
