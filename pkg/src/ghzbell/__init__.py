"""Verification simulator for the GHZ operator algebra, counterfactual parity
scans and Bell-type inequalities over +-1 datasets."""

__version__ = "0.1.0"

from ._backend import BACKEND  # noqa: E402

__all__ = ["BACKEND", "__version__"]
