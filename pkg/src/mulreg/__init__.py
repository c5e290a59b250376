"""mulreg: Locally bayesian estimation of a frontier under multiplicative uniform noise."""

from mulreg.__about__ import __version__

__all__ = ["__version__"]
