"""JSON schemas for covariance matrices and standard-form parameters.

A covariance matrix is persisted as ``{"ordering": ..., "matrix": [[...]]}``
with ordering "q1p1q2p2" (the internal convention) or "q1q2p1p2" (converted
on read/write).  Parameters are ``{"b1":, "b2":, "c":, "d":}``.
"""

import numpy as np

from .errors import InvalidInput
from .symplectic import StandardFormParams

ORDERINGS = ("q1p1q2p2", "q1q2p1p2")

# index permutation between (q1,p1,q2,p2) and (q1,q2,p1,p2); involutive
_PERM = np.array([0, 2, 1, 3])


def cm_to_dict(cm: np.ndarray, ordering: str = "q1p1q2p2") -> dict:
    cm = np.asarray(cm, dtype=float)
    if ordering not in ORDERINGS:
        raise InvalidInput(f"unknown ordering {ordering!r}; expected one of {ORDERINGS}")
    if ordering == "q1q2p1p2":
        cm = cm[np.ix_(_PERM, _PERM)]
    return {"ordering": ordering, "matrix": [[float(v) for v in row] for row in cm]}


def cm_from_dict(obj: dict, ordering_override: str | None = None) -> np.ndarray:
    if not isinstance(obj, dict) or "matrix" not in obj:
        raise InvalidInput('expected an object with a "matrix" field')
    ordering = ordering_override or obj.get("ordering", "q1p1q2p2")
    if ordering not in ORDERINGS:
        raise InvalidInput(f"unknown ordering {ordering!r}; expected one of {ORDERINGS}")
    try:
        cm = np.asarray(obj["matrix"], dtype=float)
    except (TypeError, ValueError) as exc:
        raise InvalidInput(f"matrix field is not numeric: {exc}") from exc
    if cm.shape != (4, 4):
        raise InvalidInput(f"matrix must be 4x4, got {cm.shape}")
    if ordering == "q1q2p1p2":
        cm = cm[np.ix_(_PERM, _PERM)]
    return cm


def params_to_dict(p: StandardFormParams) -> dict:
    return {"b1": p.b1, "b2": p.b2, "c": p.c, "d": p.d}


def params_from_dict(obj: dict) -> StandardFormParams:
    try:
        return StandardFormParams(
            float(obj["b1"]), float(obj["b2"]), float(obj["c"]), float(obj["d"])
        )
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"invalid parameter object: {exc}") from exc
