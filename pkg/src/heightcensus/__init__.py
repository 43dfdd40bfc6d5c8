"""Exact censuses of algebraic numbers of bounded degree and height."""

from __future__ import annotations

import sys

# schedule coefficients and P_k denominators run to thousands of digits
if hasattr(sys, "set_int_max_str_digits"):
    sys.set_int_max_str_digits(0)

__version__ = "0.1.0"
