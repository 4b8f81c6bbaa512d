"""Standard normal CDF/quantile and Gaussian measure of convex bodies.

The measure gamma_n is the standard Gaussian probability measure on R^n
with density (2*pi)^(-n/2) * exp(-|x|^2 / 2). Closed forms exist for axis
boxes (product of interval measures), halfspaces, centered balls
(chi-square CDF) and the full space; everything else goes through the
seeded Monte Carlo estimator.

All confidence half-widths use the two-sided 99% convention, z = 2.576.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy import special

from .convex import AxisBox, Ball, ConvexBody, FullSpace, Halfspace
from .errors import CalibrationError, InvalidBodyError, UnsupportedBodyError

Z99 = 2.576  # two-sided 99% normal quantile, one convention everywhere

_SQRT2 = math.sqrt(2.0)
_INV_SQRT_2PI = 1.0 / math.sqrt(2.0 * math.pi)

# Monte Carlo shard size: each shard draws an independent substream from
# (seed, shard index), so any shard schedule aggregates to the same count.
MC_SHARD_SIZE = 1 << 15


@dataclass(frozen=True)
class MeasureEstimate:
    """A probability with provenance: exact closed form or Monte Carlo."""

    value: float
    method: str  # "exact" | "monte-carlo"
    half_width: float = 0.0
    samples: int = 0

    def __post_init__(self):
        if not 0.0 <= self.value <= 1.0:
            raise ValueError(f"measure must lie in [0, 1], got {self.value}")
        if self.half_width < 0.0:
            raise ValueError("half_width must be nonnegative")
        if self.method not in ("exact", "monte-carlo"):
            raise ValueError(f"unknown method {self.method!r}")
        if self.method == "exact" and self.half_width != 0.0:
            raise ValueError("exact estimates carry zero half_width")


# ---------------------------------------------------------------------------
# One-dimensional machinery
# ---------------------------------------------------------------------------

def std_normal_cdf(x):
    """Phi(x); accepts scalars or arrays, absolute error well below 1e-12."""
    arr = np.asarray(x, dtype=float)
    if np.any(np.isnan(arr)):
        raise ValueError("cdf input must not be NaN")
    if np.ndim(x) == 0 and not np.all(np.isfinite(arr)):
        raise ValueError("cdf input must be finite")
    out = 0.5 * special.erfc(-arr / _SQRT2)
    return float(out) if np.ndim(x) == 0 else out


def std_normal_pdf(x):
    arr = np.asarray(x, dtype=float)
    out = _INV_SQRT_2PI * np.exp(-0.5 * arr * arr)
    return float(out) if np.ndim(x) == 0 else out


# Acklam rational approximation coefficients for the initial quantile guess.
_A = (-3.969683028665376e+01, 2.209460984245205e+02, -2.759285104469687e+02,
      1.383577518672690e+02, -3.066479806614716e+01, 2.506628277459239e+00)
_B = (-5.447609879822406e+01, 1.615858368580409e+02, -1.556989798598866e+02,
      6.680131188771972e+01, -1.328068155288572e+01)
_C = (-7.784894002430293e-03, -3.223964580411365e-01, -2.400758277161838e+00,
      -2.549732539343734e+00, 4.374664141464968e+00, 2.938163982698783e+00)
_D = (7.784695709041462e-03, 3.224671290700398e-01, 2.445134137142996e+00,
      3.754408661907416e+00)


def _quantile_raw(p: np.ndarray) -> np.ndarray:
    out = np.empty_like(p)
    plow = 0.02425
    lo = p < plow
    hi = p > 1.0 - plow
    mid = ~(lo | hi)
    if np.any(lo):
        q = np.sqrt(-2.0 * np.log(p[lo]))
        out[lo] = (((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]) / \
                  ((((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0)
    if np.any(hi):
        q = np.sqrt(-2.0 * np.log(1.0 - p[hi]))
        out[hi] = -(((((_C[0] * q + _C[1]) * q + _C[2]) * q + _C[3]) * q + _C[4]) * q + _C[5]) / \
                  ((((_D[0] * q + _D[1]) * q + _D[2]) * q + _D[3]) * q + 1.0)
    if np.any(mid):
        q = p[mid] - 0.5
        r = q * q
        out[mid] = (((((_A[0] * r + _A[1]) * r + _A[2]) * r + _A[3]) * r + _A[4]) * r + _A[5]) * q / \
                   (((((_B[0] * r + _B[1]) * r + _B[2]) * r + _B[3]) * r + _B[4]) * r + 1.0)
    return out


def std_normal_quantile(p):
    """Phi^{-1}(p) for p in (0, 1): rational approximation plus one Newton step.

    The Newton refinement against the high-precision CDF brings the absolute
    error to ~1e-15, far inside the 1e-10 round-trip contract.
    """
    arr = np.asarray(p, dtype=float)
    if np.any(~((arr > 0.0) & (arr < 1.0))):
        raise ValueError("quantile input must lie strictly in (0, 1)")
    x = _quantile_raw(np.atleast_1d(arr).copy())
    cdf = 0.5 * special.erfc(-x / _SQRT2)
    pdf = _INV_SQRT_2PI * np.exp(-0.5 * x * x)
    x -= (cdf - np.atleast_1d(arr)) / pdf
    return float(x[0]) if np.ndim(p) == 0 else x.reshape(arr.shape)


_THETA_CACHE: float | None = None


def theta() -> float:
    """Width of the origin-centered interval carrying standard normal mass 1/2.

    Equals 2 * Phi^{-1}(3/4), about 1.3489795. Cached after the first call.
    """
    global _THETA_CACHE
    if _THETA_CACHE is None:
        _THETA_CACHE = 2.0 * std_normal_quantile(0.75)
    return _THETA_CACHE


def measure_interval(lo: float, hi: float) -> float:
    """gamma_1([lo, hi]); endpoints may be -inf / +inf."""
    if math.isnan(lo) or math.isnan(hi):
        raise ValueError("interval endpoints must not be NaN")
    if lo > hi:
        raise ValueError(f"interval endpoints out of order: {lo} > {hi}")
    return float(0.5 * special.erfc(-hi / _SQRT2) - 0.5 * special.erfc(-lo / _SQRT2))


# ---------------------------------------------------------------------------
# Measures of bodies
# ---------------------------------------------------------------------------

def measure_exact(body: ConvexBody) -> MeasureEstimate:
    """Closed-form gamma_n for axis boxes, halfspaces, centered balls, full space."""
    if isinstance(body, AxisBox):
        per_axis = 2.0 * std_normal_cdf(body.semiwidths) - 1.0
        value = float(np.prod(per_axis))
    elif isinstance(body, Halfspace):
        value = std_normal_cdf(body.offset / float(np.linalg.norm(body.normal)))
    elif isinstance(body, Ball):
        if not body.symmetric:
            raise UnsupportedBodyError(
                "no closed form for off-center balls -- use measure_mc")
        value = float(special.gammainc(body.dim / 2.0, body.radius**2 / 2.0))
    elif isinstance(body, FullSpace):
        value = 1.0
    else:
        raise UnsupportedBodyError(
            f"no closed form for kind {body.kind!r} -- use measure_mc")
    return MeasureEstimate(value=min(max(value, 0.0), 1.0), method="exact")


def mc_fraction(dim: int, membership, samples: int, seed: int) -> tuple[float, float]:
    """(hit fraction, 99% half-width) of standard normal points under a
    vectorized membership predicate; deterministic given (seed, shard layout).

    Each shard of MC_SHARD_SIZE points draws its own substream from
    (seed, shard index), so the aggregate count is schedule-independent.
    """
    if samples < 1000:
        raise ValueError(f"need at least 1000 samples, got {samples}")
    hits = 0
    done = 0
    shard = 0
    while done < samples:
        n = min(MC_SHARD_SIZE, samples - done)
        rng = np.random.default_rng(np.random.SeedSequence(seed, spawn_key=(shard,)))
        pts = rng.standard_normal((n, dim))
        hits += int(np.count_nonzero(membership(pts)))
        done += n
        shard += 1
    p = hits / samples
    hw = Z99 * math.sqrt(p * (1.0 - p) / samples)
    return p, hw


def measure_mc(body: ConvexBody, samples: int, seed: int) -> MeasureEstimate:
    """Hit fraction of i.i.d. standard normal points; deterministic per seed.

    half_width is the 99% binomial half-width 2.576 * sqrt(p(1-p)/samples).
    """
    p, hw = mc_fraction(body.dim, body.contains_many, samples, seed)
    return MeasureEstimate(value=p, method="monte-carlo", half_width=hw, samples=samples)


def measure_auto(body: ConvexBody, samples: int = 1 << 16, seed: int = 0) -> MeasureEstimate:
    """Exact measure when a closed form exists, Monte Carlo otherwise."""
    try:
        return measure_exact(body)
    except UnsupportedBodyError:
        return measure_mc(body, samples, seed)


def calibrate_scale(body: ConvexBody, target: float, tol: float = 1e-9,
                    samples: int = 1 << 16, seed: int = 0,
                    max_iter: int = 200) -> float:
    """Scale s with gamma_n(s * body) = target, by bisection on s.

    The measure of s*body is nondecreasing in s for bodies with the origin
    in the interior. Monte Carlo evaluations reuse one seed, so the hit sets
    are nested across scales and the bisection stays monotone.
    """
    if not 0.0 < target < 1.0:
        raise ValueError(f"target must lie in (0, 1), got {target}")
    if not body.contains(np.zeros(body.dim)):
        raise InvalidBodyError("calibration needs the origin inside the body")

    def mval(s: float) -> float:
        return measure_auto(body.scale(s), samples=samples, seed=seed).value

    lo = hi = 1.0
    m = mval(1.0)
    if m < target:
        for _ in range(80):
            hi *= 2.0
            if mval(hi) >= target:
                break
        else:
            raise CalibrationError(f"target {target} unreachable by upscaling")
    elif m > target:
        for _ in range(80):
            lo /= 2.0
            if mval(lo) <= target:
                break
        else:
            raise CalibrationError(f"target {target} unreachable by downscaling")
    else:
        return 1.0
    s = 0.5 * (lo + hi)
    for _ in range(max_iter):
        s = 0.5 * (lo + hi)
        if s == lo or s == hi:
            break
        v = mval(s)
        if abs(v - target) <= 0.25 * tol:
            return s
        if v < target:
            lo = s
        else:
            hi = s
    err = abs(mval(s) - target)
    if err > tol:
        raise CalibrationError(
            f"calibration stalled at |measure - target| = {err:.3g} > tol={tol} "
            "(estimator noise may exceed tol)")
    return s
