"""k-abelian complexity of the Cantor sequence, by enumeration and by formula."""

__version__ = "0.1.0"
