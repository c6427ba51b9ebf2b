"""Scalar refinement machinery for weighted Young-type comparisons.

The correction subtracted from the weighted arithmetic mean is a sum of
levels.  Level j is driven by the floor indices r_j = floor(2^j nu) and
k_j = floor(2^(j-1) nu); its weight equals the distance from 2^(j-1) nu
to the nearest integer, so every weight is nonnegative and all weights
vanish exactly when nu is dyadic of level <= j.  The level-1 truncation
recovers the classical min(nu, 1-nu) * (sqrt(a) - sqrt(b))^2 correction.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

MAX_LEVELS = 32

# Snap 2^j * nu to an integer when it is this close; floating-point noise in
# nu must not flip a floor index.
_SNAP = 1e-12


@dataclass(frozen=True)
class RefinementParams:
    """Weight nu in [0, 1] and the number of correction levels."""

    nu: float
    levels: int = 1

    def __post_init__(self):
        if not (0.0 <= self.nu <= 1.0):
            raise DomainError(f"nu must lie in [0, 1], got {self.nu}")
        if not (1 <= int(self.levels) <= MAX_LEVELS):
            raise DomainError(f"levels must lie in 1..{MAX_LEVELS}, got {self.levels}")


@dataclass(frozen=True)
class LevelIndices:
    level: int
    r: int
    k: int
    weight: float


def _snap_floor(x: float) -> int:
    n = round(x)
    if abs(x - n) <= _SNAP * max(1.0, abs(x)):
        return int(n)
    return int(math.floor(x))


def level_indices(level: int, nu: float) -> LevelIndices:
    """Floor indices and weight for one refinement level.

    weight = (-1)^r * 2^(level-1) * nu + (-1)^(r+1) * floor((r+1)/2),
    which is always >= 0 for nu in [0, 1].
    """
    if not (1 <= int(level) <= MAX_LEVELS):
        raise DomainError(f"level must lie in 1..{MAX_LEVELS}, got {level}")
    if not (0.0 <= nu <= 1.0):
        raise DomainError(f"nu must lie in [0, 1], got {nu}")
    level = int(level)
    scaled = 2.0 ** (level - 1) * nu  # exact: power-of-two scaling
    r = _snap_floor(2.0 * scaled)
    k = _snap_floor(scaled)
    sign = -1.0 if r % 2 else 1.0
    weight = sign * scaled - sign * ((r + 1) // 2)
    return LevelIndices(level=level, r=r, k=k, weight=float(weight))


def printed_heinz_weight(li: LevelIndices) -> float:
    """The nu-free level weight (-1)^r 2^(j-1) + (-1)^(r+1) floor((r+1)/2).

    Kept verbatim for evidence; it can be negative (e.g. nu=0.3, level 2
    gives -1), so it is never used where nonnegativity is required.
    """
    sign = -1.0 if li.r % 2 else 1.0
    return sign * 2.0 ** (li.level - 1) - sign * ((li.r + 1) // 2)


def _bracket_sq(a: np.ndarray, b: np.ndarray, li: LevelIndices) -> np.ndarray:
    """Squared level bracket on nonnegative scalars (vectorized)."""
    two_j = 2.0**li.level
    half = 2.0 ** (li.level - 1)
    e_b1 = (half - li.k) / two_j
    e_a1 = li.k / two_j
    e_a2 = (li.k + 1) / two_j
    e_b2 = (half - li.k - 1) / two_j
    # e_b2 < 0 only at nu = 1 where the weight vanishes; callers skip that.
    t = b**e_b1 * a**e_a1 - a**e_a2 * b**e_b2
    return t * t


def weighted_bracket_sum(
    a, b, nu: float, levels: int, mode: str = "young"
) -> np.ndarray:
    """Sum over levels of weight_j * bracket_j(a, b)^2, vectorized in a, b.

    Modes select the level weights:
      "young"         the nonnegative weights of the refined Young comparison
      "half"          1/2 at every level (printed form of the sandwich bound)
      "printed_heinz" the nu-free printed Heinz weights (may be negative)

    Inputs are clamped at zero; the 0^0 = 1 convention applies.
    """
    a = np.maximum(np.asarray(a, dtype=np.float64), 0.0)
    b = np.maximum(np.asarray(b, dtype=np.float64), 0.0)
    out = np.zeros(np.broadcast(a, b).shape, dtype=np.float64)
    for j in range(1, int(levels) + 1):
        li = level_indices(j, nu)
        if mode == "young":
            w = li.weight
        elif mode == "half":
            w = 0.5
        elif mode == "printed_heinz":
            w = printed_heinz_weight(li)
        else:
            raise DomainError(f"unknown weight mode {mode!r}")
        if w == 0.0:
            continue
        out = out + w * _bracket_sq(a, b, li)
    return out


def refinement_S(a: float, b: float, params: RefinementParams) -> float:
    """The total correction S_N(nu) for positive scalars a, b."""
    if a <= 0 or b <= 0:
        raise DomainError(f"refinement requires a, b > 0, got a={a}, b={b}")
    return float(weighted_bracket_sum(a, b, params.nu, params.levels))


def young_refined_gap(a: float, b: float, params: RefinementParams) -> float:
    """nu*a + (1-nu)*b - S_N(nu) - a^nu b^(1-nu); nonnegative in exact arithmetic."""
    if a <= 0 or b <= 0:
        raise DomainError(f"gap requires a, b > 0, got a={a}, b={b}")
    nu = params.nu
    s = refinement_S(a, b, params)
    return nu * a + (1.0 - nu) * b - s - a**nu * b ** (1.0 - nu)


def _snap_floor_vec(x: np.ndarray) -> np.ndarray:
    n = np.round(x)
    snapped = np.abs(x - n) <= _SNAP * np.maximum(1.0, np.abs(x))
    return np.where(snapped, n, np.floor(x)).astype(np.int64)


def bracket_sum_vec(a: np.ndarray, b: np.ndarray, nu: np.ndarray, levels: int) -> np.ndarray:
    """Correction sum with elementwise ``nu``; fully vectorized."""
    a = np.maximum(np.asarray(a, dtype=np.float64), 0.0)
    b = np.maximum(np.asarray(b, dtype=np.float64), 0.0)
    nu = np.asarray(nu, dtype=np.float64)
    out = np.zeros(np.broadcast(a, b, nu).shape, dtype=np.float64)
    for j in range(1, int(levels) + 1):
        scaled = 2.0 ** (j - 1) * nu
        r = _snap_floor_vec(2.0 * scaled)
        k = _snap_floor_vec(scaled)
        sign = np.where(r % 2 == 0, 1.0, -1.0)
        w = sign * scaled - sign * ((r + 1) // 2)
        live = w != 0.0
        two_j = 2.0**j
        half = 2.0 ** (j - 1)
        # neutralize exponents where the weight vanishes: at nu = 1 the
        # last exponent is negative and would produce inf * 0
        kk = np.where(live, k, 0)
        e_b1 = (half - kk) / two_j
        e_a1 = kk / two_j
        e_a2 = (kk + 1) / two_j
        e_b2 = (half - kk - 1) / two_j
        t = b**e_b1 * a**e_a1 - a**e_a2 * b**e_b2
        out = out + np.where(live, w * t * t, 0.0)
    return out


def young_refined_gap_many(a, b, nu, levels: int) -> np.ndarray:
    """Vectorized refined-Young gap; ``nu`` may be an array matching a, b."""
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if np.any(a <= 0) or np.any(b <= 0):
        raise DomainError("gap requires a, b > 0")
    nu_arr = np.asarray(nu, dtype=np.float64)
    if np.any(nu_arr < 0) or np.any(nu_arr > 1):
        raise DomainError("nu must lie in [0, 1]")
    if not (1 <= int(levels) <= MAX_LEVELS):
        raise DomainError(f"levels must lie in 1..{MAX_LEVELS}, got {levels}")
    s = bracket_sum_vec(a, b, nu_arr, levels)
    return nu_arr * a + (1.0 - nu_arr) * b - s - a**nu_arr * b ** (1.0 - nu_arr)


def power_mean_rhs(a: float, b: float, nu: float, r: float) -> float:
    """(nu a^r + (1-nu) b^r)^(1/r) for r >= 1; exact arithmetic mix at r = 1."""
    if a <= 0 or b <= 0:
        raise DomainError(f"power mean requires a, b > 0, got a={a}, b={b}")
    if not (0.0 <= nu <= 1.0):
        raise DomainError(f"nu must lie in [0, 1], got {nu}")
    if r < 1.0:
        raise DomainError(f"power mean requires r >= 1, got {r}")
    if r == 1.0:
        return nu * a + (1.0 - nu) * b
    return float((nu * a**r + (1.0 - nu) * b**r) ** (1.0 / r))
