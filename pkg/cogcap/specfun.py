"""
Zeroth-order modified Bessel function of the first kind
and the first-order Marcum Q-function.

Both functions accept scalars or numpy arrays and broadcast.
I0 uses the Cephes Chebyshev kernels from scipy.special;
Q1(a, b) is the survival function of a noncentral chi-square
variable with two degrees of freedom, Q1(a, b) = P(chi2'(2, a^2) > b^2).
"""
import numpy as np
from scipy import special, stats

from .exceptions import ValidationError


# I0(x) overflows a double just above x = 713
I0_OVERFLOW_LIMIT = 700.0


def check_non_negative(x, name='x'):
    """
    Return the argument as a float array,
    raising ValidationError for negative or non-finite entries.

    :param x: scalar or array_like
    :param name: name used in the error message
    :returns: numpy array
    """
    values = np.asarray(x, dtype=float)
    if not np.all(np.isfinite(values)):
        raise ValidationError(f'{name} must be finite')
    if np.any(values < 0.0):
        raise ValidationError(f'{name} must be non-negative')
    return values


def _as_output(values):
    # 0-d arrays come back as numpy scalars
    return values[()] if np.ndim(values) == 0 else values


def bessel_i0(x):
    """
    Return I0(x) for 0 <= x <= 700.

    Larger arguments overflow soon after; use bessel_i0e
    or log_bessel_i0 there.

    :param x: scalar or array_like, non-negative
    :returns: I0(x) >= 1
    """
    values = check_non_negative(x)
    if np.any(values > I0_OVERFLOW_LIMIT):
        raise ValidationError(f'I0 overflows above x = {I0_OVERFLOW_LIMIT}; '
                              'use bessel_i0e')
    return _as_output(special.i0(values))


def bessel_i0e(x):
    """
    Return the exponentially scaled exp(-x) I0(x),
    finite for every finite x >= 0.
    """
    return _as_output(special.i0e(check_non_negative(x)))


def log_bessel_i0(x):
    values = check_non_negative(x)
    return _as_output(np.log(special.i0e(values)) + values)


def marcum_q1(a, b):
    """
    Return the first-order Marcum Q-function

        Q1(a, b) = integral from b to infinity of
                   x exp(-(x^2 + a^2) / 2) I0(a x) dx.

    The a = 0 and b = 0 cases are evaluated analytically.

    :param a: scalar or array_like, non-negative
    :param b: scalar or array_like, non-negative
    :returns: value in [0, 1]
    """
    a_values = check_non_negative(a, 'a')
    b_values = check_non_negative(b, 'b')
    a_values, b_values = np.broadcast_arrays(a_values, b_values)
    result = np.exp(-0.5 * b_values * b_values)
    general = (a_values > 0.0) & (b_values > 0.0)
    if np.any(general):
        result = np.array(result)
        result[general] = stats.ncx2.sf(b_values[general] ** 2, 2,
                                        a_values[general] ** 2)
    return _as_output(np.clip(result, 0.0, 1.0))


def marcum_identity_residual(a, b):
    """
    Return Q1(a, b) + Q1(b, a) - 1 - exp(-(a^2 + b^2) / 2) I0(a b),
    which vanishes identically.
    """
    a_values = check_non_negative(a, 'a')
    b_values = check_non_negative(b, 'b')
    # exp(-(a^2 + b^2) / 2) I0(ab) = exp(-(a - b)^2 / 2) i0e(ab)
    bessel_term = (np.exp(-0.5 * (a_values - b_values) ** 2)
                   * special.i0e(a_values * b_values))
    return _as_output(marcum_q1(a_values, b_values)
                      + marcum_q1(b_values, a_values)
                      - 1.0 - bessel_term)
