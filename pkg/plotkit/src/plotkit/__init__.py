"""plotkit: render gap-ratio scatter plots from pair-survey CSV/JSON."""

__version__ = "0.1.0"
