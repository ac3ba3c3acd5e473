"""Higher-order conservation laws of u_{z zbar} = -f(u) on the infinite jet space."""

__version__ = "0.1.0"
