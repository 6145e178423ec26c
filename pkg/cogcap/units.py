"""
Decibel conversion for K-factors, power ratios and alpha.
"""
import numpy as np

from .exceptions import ValidationError


def db_to_linear(value_db):
    """
    Return 10^(value_db / 10).

    :param value_db: finite scalar or array_like in dB
    :returns: float or numpy array
    """
    values = np.asarray(value_db, dtype=float)
    if not np.all(np.isfinite(values)):
        raise ValidationError('dB values must be finite')
    result = np.power(10.0, values / 10.0)
    return float(result) if result.ndim == 0 else result


def linear_to_db(value):
    """
    Return 10 log10(value) for positive linear values.
    """
    values = np.asarray(value, dtype=float)
    if not np.all(np.isfinite(values)) or np.any(values <= 0.0):
        raise ValidationError('linear values must be finite and positive')
    result = 10.0 * np.log10(values)
    return float(result) if result.ndim == 0 else result
