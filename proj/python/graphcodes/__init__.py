"""Graph-concatenated error-correcting codes."""

from fractions import Fraction

from ._core import (
    Graph,
    GraphCode,
    GraphCodesError,
    Mother,
    certify_disperser,
    corrupt,
    plan_disperser,
    plan_multiset,
)

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "GraphCode",
    "GraphCodesError",
    "Mother",
    "certify_disperser",
    "corrupt",
    "plan_disperser",
    "plan_multiset",
    "rate",
]


def rate(code: GraphCode) -> Fraction:
    """Exact rate of a graph code, or raise if the dimension is irrational."""
    r = code.rate()
    if r is None:
        raise GraphCodesError("code dimension is not an exact rational")
    return Fraction(r[0], r[1])
