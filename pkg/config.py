import os
from dotenv import load_dotenv


basedir = os.path.abspath(os.path.dirname(__file__))
envdir = os.path.join(basedir, '.env')
load_dotenv(envdir)


class Config:
    name = 'default'

    QUAD_ABS_TOL = float(os.environ.get('QUAD_ABS_TOL', 1e-10))
    QUAD_REL_TOL = float(os.environ.get('QUAD_REL_TOL', 1e-9))
    QUAD_LIMIT = int(os.environ.get('QUAD_LIMIT', 200))
    ROOT_TOL = float(os.environ.get('ROOT_TOL', 1e-9))

    MC_SAMPLES = int(os.environ.get('MC_SAMPLES', 10**6))
    MC_SEED = int(os.environ.get('MC_SEED', 42))
    MC_WORKERS = int(os.environ.get('MC_WORKERS', 1))
    MC_BLOCK_SIZE = int(os.environ.get('MC_BLOCK_SIZE', 65536))

    ALPHA_DB_START = float(os.environ.get('ALPHA_DB_START', -20.0))
    ALPHA_DB_STOP = float(os.environ.get('ALPHA_DB_STOP', 20.0))
    ALPHA_DB_POINTS = int(os.environ.get('ALPHA_DB_POINTS', 21))

    LOG_LEVEL = os.environ.get('LOG_LEVEL', 'WARNING')
    LOG_FORMAT = os.environ.get('LOG_FORMAT',
                                '%(asctime)s %(levelname)s %(name)s: '
                                '%(message)s')
