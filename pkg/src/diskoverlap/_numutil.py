"""Scalar helpers shared by the numeric modules."""

import math
import sys

from .errors import DomainError

EPS = sys.float_info.epsilon

# Arguments of arccos/arcsin/sqrt that overshoot their domain by at most
# this many machine epsilons (relative to `scale`) are treated as rounding
# dust and clamped; anything worse is a caller bug and raises.
_CLAMP_ULPS = 4.0


def clamp_unit(u, what="argument"):
    """Clamp u into [-1, 1], tolerating up to 4 eps of rounding overshoot."""
    if u > 1.0:
        if u - 1.0 <= _CLAMP_ULPS * EPS:
            return 1.0
        raise DomainError(f"{what} = {u!r} lies outside [-1, 1]")
    if u < -1.0:
        if -1.0 - u <= _CLAMP_ULPS * EPS:
            return -1.0
        raise DomainError(f"{what} = {u!r} lies outside [-1, 1]")
    return u


def clamp_nonneg(v, scale=1.0, what="radicand"):
    """Clamp v to 0 if negative by at most 4 eps relative to `scale`."""
    if v >= 0.0:
        return v
    if -v <= _CLAMP_ULPS * EPS * scale:
        return 0.0
    raise DomainError(f"{what} = {v!r} is negative beyond rounding tolerance")


def clamp_to_interval(v, lo, hi, what="argument"):
    """Clamp v into [lo, hi], tolerating 4 eps (relative to the span)."""
    window = _CLAMP_ULPS * EPS * max(1.0, abs(lo), abs(hi))
    if v < lo:
        if lo - v <= window:
            return lo
        raise DomainError(f"{what} = {v!r} lies outside [{lo}, {hi}]")
    if v > hi:
        if v - hi <= window:
            return hi
        raise DomainError(f"{what} = {v!r} lies outside [{lo}, {hi}]")
    return v


def require_finite(value, what):
    """Raise DomainError unless value is a finite float."""
    v = float(value)
    if not math.isfinite(v):
        raise DomainError(f"{what} must be finite, got {value!r}")
    return v
