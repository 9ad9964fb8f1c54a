"""Indoor RIS versus ambient-multipath benchmarking in 2D."""

__version__ = "0.1.0"
