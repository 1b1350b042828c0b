"""smlab: eigenvalue statistics of powers of Haar-random classical-group matrices."""

__version__ = "0.3.0"
