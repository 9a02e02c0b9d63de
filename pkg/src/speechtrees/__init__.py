"""Dysfluency augmentation and evaluation for constituency treebanks."""

__version__ = "0.1.0"
