"""Exact symbolic-numeric toolkit for bivariate orthogonal polynomial families.

Builds Koornwinder-type bases from univariate weights, derives and verifies
matrix Pearson equations as exact rational identities, classifies the induced
second-order operators, and cross-validates orthogonality with high-precision
Gauss quadrature.  Every operation returns the same JSON-shaped report the
``kwpearson`` command-line tool emits.
"""

from ._kwpearson import (
    __version__,
    build,
    families,
    operator_classify,
    orthocheck,
    pearson_derive,
    pearson_verify,
    render_markdown,
    report_all,
)

__all__ = [
    "__version__",
    "build",
    "families",
    "operator_classify",
    "orthocheck",
    "pearson_derive",
    "pearson_verify",
    "render_markdown",
    "report_all",
]
