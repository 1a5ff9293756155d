"""Wavelet sets for planar dilation families: construction and verification."""

__version__ = "0.1.0"
