"""Input validation helpers shared by the functional API and the estimators."""

from __future__ import annotations

import numpy as np

from .errors import (
    DimensionMismatchError,
    InvalidThresholdError,
    InvariantError,
)

# Tolerance for "rows sum to one" checks on normalized prediction matrices.
ROW_SUM_ATOL = 1e-6


def as_float_array(x, name: str = "array") -> np.ndarray:
    try:
        arr = np.asarray(x, dtype=float)
    except (TypeError, ValueError) as exc:
        raise InvariantError(f"{name} is not numeric: {exc}") from None
    if not np.all(np.isfinite(arr)):
        raise InvariantError(f"{name} contains non-finite entries")
    return arr


def check_binary(x, name: str = "labels") -> np.ndarray:
    """Coerce to an integer 0/1 array, rejecting anything else."""
    arr = as_float_array(x, name)
    if arr.size and not np.all((arr == 0) | (arr == 1)):
        raise InvariantError(f"{name} must contain only 0 and 1")
    return arr.astype(int)


def check_binary_vector(x, length: int | None = None, name: str = "labels") -> np.ndarray:
    arr = check_binary(x, name)
    if arr.ndim != 1:
        raise DimensionMismatchError(f"{name} must be 1-dimensional, got shape {arr.shape}")
    if length is not None and arr.shape[0] != length:
        raise DimensionMismatchError(f"{name} has length {arr.shape[0]}, expected {length}")
    return arr


def check_binary_matrix(x, cols: int | None = None, name: str = "labels") -> np.ndarray:
    arr = check_binary(x, name)
    if arr.ndim != 2:
        raise DimensionMismatchError(f"{name} must be 2-dimensional, got shape {arr.shape}")
    if cols is not None and arr.shape[1] != cols:
        raise DimensionMismatchError(f"{name} has {arr.shape[1]} columns, expected {cols}")
    return arr


def check_unit_interval(x, name: str = "values") -> np.ndarray:
    arr = as_float_array(x, name)
    if arr.size and (arr.min() < 0.0 or arr.max() > 1.0):
        raise InvariantError(f"{name} must lie in [0, 1]")
    return arr


def check_prob_matrix(x, normalized: bool = False, name: str = "probabilities") -> np.ndarray:
    """Validate an N x C probability matrix; if normalized, rows must sum to 1."""
    arr = check_unit_interval(x, name)
    if arr.ndim != 2:
        raise DimensionMismatchError(f"{name} must be 2-dimensional, got shape {arr.shape}")
    if arr.shape[1] < 1:
        raise DimensionMismatchError(f"{name} must have at least one class column")
    if normalized and arr.shape[0]:
        sums = arr.sum(axis=1)
        if np.max(np.abs(sums - 1.0)) > ROW_SUM_ATOL:
            raise InvariantError(f"{name} rows must sum to 1 within {ROW_SUM_ATOL}")
    return arr


def check_prob_vector(x, length: int | None = None, name: str = "probabilities") -> np.ndarray:
    arr = check_unit_interval(x, name)
    if arr.ndim != 1:
        raise DimensionMismatchError(f"{name} must be 1-dimensional, got shape {arr.shape}")
    if length is not None and arr.shape[0] != length:
        raise DimensionMismatchError(f"{name} has length {arr.shape[0]}, expected {length}")
    return arr


def check_same_shape(a: np.ndarray, b: np.ndarray, name_a: str, name_b: str) -> None:
    if a.shape != b.shape:
        raise DimensionMismatchError(
            f"{name_a} has shape {a.shape} but {name_b} has shape {b.shape}"
        )


def check_threshold(t) -> float:
    try:
        value = float(t)
    except (TypeError, ValueError):
        raise InvalidThresholdError(f"threshold must be a number, got {t!r}") from None
    if not (0.0 <= value <= 1.0):
        raise InvalidThresholdError(f"threshold must lie in [0, 1], got {value}")
    return value
