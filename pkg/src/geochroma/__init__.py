"""geochroma: decompositions and colorings of complete geometric graphs."""

__version__ = "0.1.0"
