"""Simulate LRU, FIFO, FWF and FAR on access graphs and compare them."""

__version__ = "0.1.0"
