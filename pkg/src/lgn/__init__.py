"""Legendrian surgery diagrams and open books."""
__version__ = "0.1.0"
