"""Milnor and Tjurina numbers, Hilbert-Kunz style multiplicities and the mu/tau bound."""
__version__ = "0.1.0"
