"""Category algebras over rigs, states on categories and the GNS construction."""

__version__ = "0.1.0"
