"""Square-series J-fraction toolkit: exact convergents, q-series generators and theta numerics."""

__version__ = "0.1.0"
