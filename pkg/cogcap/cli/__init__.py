import click
from dotenv import dotenv_values

from .. import create_app


# options that take several values on the command line
MULTIPLE_VALUE_KEYS = ('x', 'check')


def load_config(ctx, param, path):
    """
    Feed key = value pairs of a config file to every subcommand
    as defaults; flags given on the command line win.
    """
    if not path:
        return path
    values = {}
    for key, value in dotenv_values(path).items():
        if value is None:
            continue
        key = key.strip().lower().replace('-', '_')
        values[key] = [value] if key in MULTIPLE_VALUE_KEYS else value
    ctx.default_map = {name: dict(values) for name in ctx.command.commands}
    return path


@click.group(help='Ergodic capacity of cognitive radio links '
                  'under interference constraints.')
@click.option('--config', type=click.Path(exists=True, dir_okay=False),
              callback=load_config, is_eager=True, expose_value=False,
              help='File of key = value defaults mirroring the flags.')
def cli():
    create_app()


from . import checks, evaluation, sweeps
