from collections import namedtuple

import click

from ..exceptions import ConvergenceError, ValidationError


Exit = namedtuple('exit', ('name', 'code'))


SUCCESS = Exit('success', 0)
VALIDATION_FAILURE = Exit('validation failure', 1)
USAGE = Exit('usage error', 2)

LIBRARY_ERRORS = (ValidationError, ConvergenceError)


def generate_error(error, message=''):
    click.echo(f'Error ({error.name}): {message}', err=True)
    return error.code
