"""Mathai entropy, Gini-type inequality indices and maximum entropy Lomax laws."""

__version__ = "0.1.0"
