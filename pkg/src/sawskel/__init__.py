"""Self-avoiding walks, skeleton subshifts and geodesic growth on Cayley graphs."""

__version__ = "0.1.0"
