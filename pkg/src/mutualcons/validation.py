"""Input validation helpers.

Every public solver funnels its vector arguments through these so that error
messages are uniform and nothing downstream has to re-check ranges.
"""

import numpy as np

from .exceptions import DimensionError, ValidationError

WEIGHT_SUM_TOL = 1e-9


def _as_1d(values, name):
    try:
        arr = np.asarray(values, dtype=float)
    except (TypeError, ValueError) as exc:
        raise ValidationError(f"{name}: not a numeric vector ({exc})") from None
    if arr.ndim != 1:
        raise ValidationError(f"{name}: expected a 1-D vector, got shape {arr.shape}")
    if arr.size == 0:
        raise ValidationError(f"{name}: must contain at least one entry")
    if not np.all(np.isfinite(arr)):
        raise ValidationError(f"{name}: contains NaN or infinite entries")
    return arr


def check_opinions(x, name="opinions"):
    """Return ``x`` as a float array after checking every entry lies in [0, 1]."""
    arr = _as_1d(x, name)
    bad = np.flatnonzero((arr < 0.0) | (arr > 1.0))
    if bad.size:
        i = int(bad[0])
        raise ValidationError(f"{name}[{i}] = {float(arr[i]):g} is outside [0, 1]")
    return arr


def check_weights(w, name="weights", n=None):
    """Return ``w`` as a float array after checking it is a weighting vector.

    Entries must lie in [0, 1] and sum to one within ``WEIGHT_SUM_TOL``.
    Unnormalized input is rejected; use :func:`normalized_from` for that.
    """
    arr = check_opinions(w, name)
    total = float(arr.sum())
    if abs(total - 1.0) > WEIGHT_SUM_TOL:
        raise ValidationError(f"{name}: entries sum to {float(total):.12g}, expected 1")
    if n is not None:
        check_same_length(n, arr, name)
    return arr


def normalized_from(raw, name="weights"):
    """Divide nonnegative ``raw`` by its sum, returning a weighting vector."""
    arr = _as_1d(raw, name)
    if np.any(arr < 0):
        raise ValidationError(f"{name}: negative entries cannot be normalized")
    total = float(arr.sum())
    if total <= 0:
        raise ValidationError(f"{name}: sum is zero, cannot normalize")
    return arr / total


def check_same_length(n, arr, name):
    if len(arr) != n:
        raise DimensionError(f"{name}: length {len(arr)} does not match n = {n}")


def check_threshold(value, name, allow_none=False):
    if value is None:
        if allow_none:
            return None
        raise ValidationError(f"{name}: required")
    try:
        v = float(value)
    except (TypeError, ValueError):
        raise ValidationError(f"{name}: expected a number, got {value!r}") from None
    if not 0.0 <= v <= 1.0:
        raise ValidationError(f"{name} = {v:g} is outside [0, 1]")
    return v
