from dataclasses import dataclass, replace
from enum import Enum
from typing import Optional

import math

from . import settings
from .exceptions import ValidationError


# largest number of primary receivers the alternating sums are trusted for
MAX_PRIMARIES = 64
MAX_SEED = 2**64


def check_real(value, name, minimum=None, strict=False):
    """
    Return the given value as a float
    after checking it is finite and not below the minimum.

    :param value: number to check
    :param name: name used in the error message
    :param minimum: lower bound or None
    :param strict: if True, the lower bound is excluded
    :returns: float
    """
    try:
        value = float(value)
    except (TypeError, ValueError):
        raise ValidationError(f'{name} must be a real number, got {value!r}')
    if not math.isfinite(value):
        raise ValidationError(f'{name} must be finite, got {value}')
    if minimum is not None:
        if strict and value <= minimum:
            raise ValidationError(f'{name} must be > {minimum}, got {value}')
        if not strict and value < minimum:
            raise ValidationError(f'{name} must be >= {minimum}, got {value}')
    return value


def check_count(value, name, minimum=1, maximum=None):
    """
    Return the given value as an int within [minimum, maximum].

    :param value: integer to check
    :param name: name used in the error message
    :returns: int
    """
    try:
        integer = int(value)
    except (TypeError, ValueError, OverflowError):
        integer = None
    if isinstance(value, bool) or integer is None or integer != value:
        raise ValidationError(f'{name} must be an integer, got {value!r}')
    value = integer
    if value < minimum or (maximum is not None and value > maximum):
        bounds = f'[{minimum}, {maximum}]' if maximum else f'>= {minimum}'
        raise ValidationError(f'{name} must be in {bounds}, got {value}')
    return value


def check_seed(seed):
    return check_count(seed, 'seed', minimum=0, maximum=MAX_SEED - 1)


class FadingKind(Enum):
    RAYLEIGH = 'rayleigh'
    RICIAN = 'rician'
    AWGN = 'awgn'


class Constraint(Enum):
    AVERAGE = 'avg'
    PEAK = 'peak'


class Method(Enum):
    CLOSED_FORM = 'closed-form-integrand'
    MONTE_CARLO = 'monte-carlo'


@dataclass(frozen=True)
class FadingModel:
    """
    Amplitude law of one link with unit mean power gain.

    AWGN is the no-fading limit (g = 1 always) and only
    serves as the reference scenario.


    Class methods defined here:

    rayleigh()

    rician(k_factor)

    awgn()
    """
    kind: FadingKind = FadingKind.RAYLEIGH
    k_factor: float = 0.0

    def __post_init__(self):
        try:
            kind = FadingKind(self.kind)
        except ValueError:
            raise ValidationError(f'unknown fading kind {self.kind!r}')
        k_factor = check_real(self.k_factor, 'k_factor', minimum=0.0)
        if kind is not FadingKind.RICIAN and k_factor != 0.0:
            raise ValidationError(f'{kind.value} fading takes no K-factor')
        object.__setattr__(self, 'kind', kind)
        object.__setattr__(self, 'k_factor', k_factor)

    def __str__(self):
        if self.kind is FadingKind.RICIAN:
            return f'Rician(K={self.k_factor:g})'
        return 'AWGN' if self.is_awgn else 'Rayleigh'

    @classmethod
    def rayleigh(cls):
        return cls(FadingKind.RAYLEIGH)

    @classmethod
    def rician(cls, k_factor):
        return cls(FadingKind.RICIAN, k_factor)

    @classmethod
    def awgn(cls):
        return cls(FadingKind.AWGN)

    @property
    def is_awgn(self):
        return self.kind is FadingKind.AWGN

    @property
    def is_rayleigh(self):
        """
        Check if the model is distributed as Rayleigh,
        which includes Rician fading with K = 0.
        """
        return (self.kind is FadingKind.RAYLEIGH
                or (self.kind is FadingKind.RICIAN and self.k_factor == 0.0))


@dataclass(frozen=True)
class RatioScenario:
    """
    Desired-link law (of sqrt(g1)), interference-link law
    (of each sqrt(g0i)) and the number of primary receivers.
    The ratio of interest is g1 / max_i g0i.
    """
    desired: FadingModel
    interference: FadingModel
    n_primaries: int = 1

    def __post_init__(self):
        for name in ('desired', 'interference'):
            if not isinstance(getattr(self, name), FadingModel):
                raise ValidationError(f'{name} must be a FadingModel')
        n_primaries = check_count(self.n_primaries, 'n_primaries',
                                  maximum=MAX_PRIMARIES)
        object.__setattr__(self, 'n_primaries', n_primaries)

    def __str__(self):
        label = f'{self.desired}/{self.interference}'
        if self.n_primaries > 1:
            label += f' n={self.n_primaries}'
        return label

    @property
    def is_awgn(self):
        return self.desired.is_awgn and self.interference.is_awgn

    def swapped(self):
        """
        Return the scenario with desired and interference laws exchanged,
        whose ratio is distributed as g0 / g1.
        """
        if self.n_primaries != 1:
            raise ValidationError('only single-primary scenarios '
                                  'can be swapped')
        return RatioScenario(self.interference, self.desired)


@dataclass(frozen=True)
class CapacityQuery:
    """
    Capacity request: constraint kind, linear interference-to-noise
    ratio alpha = Q / (N0 B), scenario and linear power ratio
    c = E{g1} / E{g0}. B = 1 and N0 = 1 throughout.
    """
    constraint: Constraint
    alpha: float
    scenario: RatioScenario
    c: float = 1.0

    def __post_init__(self):
        try:
            constraint = Constraint(self.constraint)
        except ValueError:
            raise ValidationError(f'unknown constraint {self.constraint!r}')
        object.__setattr__(self, 'constraint', constraint)
        object.__setattr__(self, 'alpha',
                           check_real(self.alpha, 'alpha', 0.0, strict=True))
        object.__setattr__(self, 'c',
                           check_real(self.c, 'c', 0.0, strict=True))
        if not isinstance(self.scenario, RatioScenario):
            raise ValidationError('scenario must be a RatioScenario')
        if (constraint is Constraint.AVERAGE
                and self.scenario.n_primaries > 1):
            raise ValidationError('the average received-power constraint '
                                  'is only supported for one primary '
                                  'receiver')

    def with_alpha(self, alpha):
        return replace(self, alpha=alpha)


@dataclass(frozen=True)
class CapacityResult:
    capacity: float
    method: Method
    alpha_eff: float
    gamma0: Optional[float] = None
    quadrature_error: float = 0.0
    std_error: Optional[float] = None
    samples: Optional[int] = None


@dataclass(frozen=True)
class McEstimate:
    """
    Monte Carlo point estimate, reproducible from (seed, samples).
    """
    value: float
    std_error: float
    samples: int
    seed: int

    def agrees_with(self, reference, sigmas=3.0):
        """
        Check if the reference lies within the given number
        of standard errors of the estimate.

        :param reference: exact or closed-form value
        :param sigmas: width of the band in standard errors
        :returns: bool
        """
        band = sigmas * self.std_error
        if band == 0.0:
            band = 1e-12 * max(1.0, abs(reference))
        return abs(self.value - reference) <= band


@dataclass(frozen=True)
class QuadratureSpec:
    absolute: float
    relative: float
    max_subdivisions: int

    def __post_init__(self):
        check_real(self.absolute, 'absolute tolerance', 0.0, strict=True)
        check_real(self.relative, 'relative tolerance', 0.0, strict=True)
        check_count(self.max_subdivisions, 'max_subdivisions')

    @classmethod
    def default(cls):
        return cls(settings['QUAD_ABS_TOL'],
                   settings['QUAD_REL_TOL'],
                   settings['QUAD_LIMIT'])

    def scaled(self, factor):
        """
        Return a copy with the absolute tolerance multiplied
        by the given factor (for integrals of small magnitude).
        """
        return replace(self, absolute=self.absolute * factor)
