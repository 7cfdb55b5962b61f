"""Mutual information of linear codes over binary-input channels, and bounds on it."""

__version__ = "0.1.0"
