"""Fuzzy headline-based character segmentation for handwritten Devanagari words."""

__version__ = "0.1.0"
