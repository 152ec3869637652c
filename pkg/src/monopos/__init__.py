"""Exact monomial-positivity checks for determinants of the structured matrices X_n."""

__version__ = "0.1.0"
