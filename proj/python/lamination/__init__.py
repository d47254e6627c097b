"""Exact invariant laminations of the circle."""

from ._core import (
    Geolamination,
    LaminationError,
    check,
    escape_depth,
    fixture,
    from_equivalence,
    from_minor,
    gaps,
    hausdorff,
    is_hyperbolic,
    is_qml_leaf,
    limit_geolaminations,
    linked,
    majors_and_minor,
    minor_quotient,
    orbit,
    pullback,
    qml_approx,
    siegel_set,
    sigma,
)

__all__ = [
    "Geolamination",
    "LaminationError",
    "check",
    "escape_depth",
    "fixture",
    "from_equivalence",
    "from_minor",
    "gaps",
    "hausdorff",
    "is_hyperbolic",
    "is_qml_leaf",
    "limit_geolaminations",
    "linked",
    "majors_and_minor",
    "minor_quotient",
    "orbit",
    "pullback",
    "qml_approx",
    "siegel_set",
    "sigma",
]
