"""Exact verification of generator actions for the pre-twisted Yangian on type B/C flags."""

__version__ = "0.1.0"
