import logging

from config import Config


settings = dict()


def load_settings(config_object, **overrides):
    """
    Return the upper-case attributes of the given config object
    as a dictionary, updated with the given overrides.

    :param config_object: class or instance holding settings
    :returns: dictionary
    """
    loaded = {key: getattr(config_object, key)
              for key in dir(config_object)
              if key.isupper()}
    loaded.update(overrides)
    return loaded


def create_app(config_object=Config, **overrides):
    """
    Load settings and configure logging.

    :param config_object: class or instance holding settings
    :returns: the module-level settings dictionary
    """
    settings.clear()
    settings.update(load_settings(config_object, **overrides))
    logging.basicConfig(level=settings['LOG_LEVEL'],
                        format=settings['LOG_FORMAT'])
    logging.getLogger(__name__).setLevel(settings['LOG_LEVEL'])
    return settings


settings.update(load_settings(Config))
