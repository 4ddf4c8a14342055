"""Central Kurdish variety toolkit."""

__version__ = "0.1.0"
