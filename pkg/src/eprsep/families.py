"""Seeded generation of valid parameter sets and de-standardized matrices.

Sampling is rejection-based inside the physicality region: b1 >= b2 are
drawn uniformly in [1/2, b_max], the q-correlation c uniformly below its
uncertainty ceiling sqrt(b1 b2 - max(b1,b2)/(4 min(b1,b2))), d uniformly in
[-c, c], and the draw is accepted when the physicality invariant D is
non-negative.  Family constraints (thermal c = d = 0, c = d > 0, c = -d > 0,
b1 = b2) are applied exactly before the accept test, so family markers hold
to machine precision.  The edge/threshold families instead bisect the
correlation strength until D (respectively its partial transpose) vanishes.
"""

import math
from dataclasses import dataclass
from enum import Enum

import numpy as np

from .errors import NumericalFailure
from .symplectic import StandardFormParams, apply_local_symplectic, build_scaled_standard_cm

__all__ = ["Family", "FamilySpec", "sample_params", "random_local_symplectic", "randomize_cm"]


class Family(str, Enum):
    GENERIC = "generic"
    THERMAL = "thermal"
    MTS = "mts"  # mode-mixed thermal: c = d > 0
    STS = "sts"  # squeezed thermal: c = -d > 0
    SYMMETRIC = "symmetric"
    PHYSICALITY_EDGE = "edge"
    SEPARABILITY_THRESHOLD = "threshold"


@dataclass(frozen=True)
class FamilySpec:
    """What to sample: the family, the b range, and the draw biases.

    bias_entangled pushes c toward its ceiling and forces d < 0 so that
    roughly half the generic draws violate the PPT criterion; negative_d
    only forces the sign of d.
    """

    family: Family = Family.GENERIC
    b_max: float = 5.0
    seed: int = 0
    bias_entangled: bool = False
    negative_d: bool = False


def _c_ceiling(b1: float, b2: float) -> float:
    return math.sqrt(max(b1 * b2 - max(b1, b2) / (4.0 * min(b1, b2)), 0.0))


def _d_invariant(b1, b2, c, d):
    return (b1 * b2 - c * c) * (b1 * b2 - d * d) - 0.25 * (
        b1 * b1 + b2 * b2 + 2.0 * c * d
    ) + 0.0625


def _d_pt_invariant(b1, b2, c, d):
    return _d_invariant(b1, b2, c, -d)


def _bisect_correlation(b1, b2, ratio, target, c_hi):
    """Largest-c zero of target(c) with d = ratio * c on [0, c_hi], or None."""
    f_lo = target(b1, b2, 0.0, 0.0)
    f_hi = target(b1, b2, c_hi, ratio * c_hi)
    if f_lo <= 0.0 or f_hi >= 0.0:
        return None
    lo, hi = 0.0, c_hi
    for _ in range(200):
        if hi - lo <= 1e-15 * max(1.0, c_hi):
            break
        mid = 0.5 * (lo + hi)
        if target(b1, b2, mid, ratio * mid) > 0.0:
            lo = mid
        else:
            hi = mid
    return 0.5 * (lo + hi)


def sample_params(spec: FamilySpec, rng: np.random.Generator | None = None) -> StandardFormParams:
    """Draw one valid parameter set; deterministic for a given rng state."""
    if rng is None:
        rng = np.random.default_rng(spec.seed)
    for _ in range(100_000):
        if spec.family is Family.SYMMETRIC:
            b1 = b2 = rng.uniform(0.5, spec.b_max)
        else:
            lo_draw = rng.uniform(0.5, spec.b_max)
            hi_draw = rng.uniform(0.5, spec.b_max)
            b1, b2 = max(lo_draw, hi_draw), min(lo_draw, hi_draw)
        ceiling = _c_ceiling(b1, b2)

        if spec.family is Family.THERMAL:
            c = d = 0.0
        elif spec.family in (Family.MTS, Family.STS):
            if ceiling <= 0.0:
                continue
            c = rng.uniform(0.0, ceiling)
            if c == 0.0:
                continue
            d = c if spec.family is Family.MTS else -c
        elif spec.family in (Family.PHYSICALITY_EDGE, Family.SEPARABILITY_THRESHOLD):
            if ceiling <= 0.0:
                continue
            if spec.family is Family.SEPARABILITY_THRESHOLD:
                ratio = rng.uniform(-1.0, -0.05)
                c = _bisect_correlation(b1, b2, ratio, _d_pt_invariant, ceiling)
            else:
                ratio = rng.uniform(-1.0, 1.0)
                c = _bisect_correlation(b1, b2, ratio, _d_invariant, ceiling)
            if c is None:
                continue
            d = ratio * c
        else:  # GENERIC (and the symmetric correlations)
            if spec.bias_entangled:
                if ceiling <= 0.0:
                    continue
                c = rng.uniform(0.9, 0.999) * ceiling
                d = rng.uniform(-c, -0.5 * c)
            else:
                c = rng.uniform(0.0, ceiling) if ceiling > 0.0 else 0.0
                if spec.negative_d:
                    if c == 0.0:
                        continue
                    d = rng.uniform(-c, 0.0)
                else:
                    d = rng.uniform(-c, c) if c > 0.0 else 0.0

        if spec.family is Family.SYMMETRIC and spec.negative_d and d >= 0.0:
            continue
        if _d_invariant(b1, b2, c, d) >= -1e-12:
            return StandardFormParams(float(b1), float(b2), float(c), float(d))
    raise NumericalFailure(f"rejection sampling failed to converge for {spec}")


def random_local_symplectic(rng: np.random.Generator) -> np.ndarray:
    """One-mode symplectic factor: rotation * squeeze * rotation.

    The squeeze parameter is uniform in [-1, 1] and both angles uniform in
    [0, 2 pi); the determinant is 1 up to rounding.
    """
    theta1 = rng.uniform(0.0, 2.0 * math.pi)
    theta2 = rng.uniform(0.0, 2.0 * math.pi)
    r = rng.uniform(-1.0, 1.0)

    def rot(t):
        return np.array([[math.cos(t), -math.sin(t)], [math.sin(t), math.cos(t)]])

    return rot(theta1) @ np.diag([math.exp(r), math.exp(-r)]) @ rot(theta2)


def randomize_cm(p: StandardFormParams, seed: int) -> np.ndarray:
    """Standard-form matrix of `p` conjugated by random local symplectics.

    The output has the same parameter quadruple, spectra and indicators as
    the standard form; extraction recovers `p` up to roundoff.
    """
    rng = np.random.default_rng(seed)
    cm = build_scaled_standard_cm(p)
    s1 = random_local_symplectic(rng)
    s2 = random_local_symplectic(rng)
    return apply_local_symplectic(cm, s1, s2)
