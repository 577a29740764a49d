"""Webs of quadrics through a fixed plane: assumption checks and derived invariants."""

from quadweb.webquadrics.web import (
    DerivedMatrices,
    Web,
    WebError,
    block_extract,
    matrix_identities,
    random_web_matrices,
    validate_web,
)

__all__ = [
    "DerivedMatrices",
    "Web",
    "WebError",
    "block_extract",
    "matrix_identities",
    "random_web_matrices",
    "validate_web",
]
