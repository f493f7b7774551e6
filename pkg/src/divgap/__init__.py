"""divgap: search and verification toolkit for the divisibility
relation a^2(a^2+1) | b^2(b^2+1)."""

__version__ = "0.1.0"
