"""Continuous distributions sharing the ``UnivariateModel`` contract."""
