"""Exact computations for the hypersurfaces X_{l,d} = {x_11...x_1d + ... + x_l1...x_ld = 0}."""

__version__ = "0.1.0"
