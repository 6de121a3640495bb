"""Decide sigma-normality of finite group rings, by brute force and by structure."""

__version__ = "0.1.0"
