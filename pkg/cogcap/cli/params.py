import click
import numpy as np

from ..exceptions import ValidationError
from ..models import check_real


class RangeType(click.ParamType):
    """
    start:stop:points, evenly spaced and inclusive.
    """
    name = 'start:stop:points'

    def convert(self, value, param, ctx):
        if isinstance(value, np.ndarray):
            return value
        parts = str(value).split(':')
        if len(parts) != 3:
            self.fail(f'{value!r} is not of the form start:stop:points',
                      param, ctx)
        try:
            start, stop = float(parts[0]), float(parts[1])
            points = int(parts[2])
        except ValueError:
            self.fail(f'{value!r} is not of the form start:stop:points',
                      param, ctx)
        if points < 2:
            self.fail('a range needs at least two points', param, ctx)
        try:
            start = check_real(start, 'start')
            stop = check_real(stop, 'stop')
        except ValidationError as e:
            self.fail(e.args[0], param, ctx)
        if start > stop:
            self.fail(f'start {start:g} exceeds stop {stop:g}', param, ctx)
        return np.linspace(start, stop, points)


class FloatListType(click.ParamType):
    """
    Comma-separated list of finite numbers.
    """
    name = 'x[,x...]'

    def convert(self, value, param, ctx):
        if isinstance(value, tuple):
            return value
        try:
            values = tuple(float(part) for part in str(value).split(','))
        except ValueError:
            self.fail(f'{value!r} is not a comma-separated list of numbers',
                      param, ctx)
        if not all(np.isfinite(values)):
            self.fail('values must be finite', param, ctx)
        return values


RANGE = RangeType()
FLOAT_LIST = FloatListType()
