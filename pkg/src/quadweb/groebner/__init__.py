"""Groebner bases and the ideal toolkit built on them."""

from quadweb.groebner.engine import (
    Deadline,
    GroebnerBasis,
    GroebnerTimeout,
    buchberger,
    is_groebner,
)

__all__ = ["Deadline", "GroebnerBasis", "GroebnerTimeout", "buchberger", "is_groebner"]
