import logging
import os
from typing import Optional

import plaster

from dssy_bench.errors import BadParam
from dssy_bench.schemas import SettingsSchema

APP_SECTION = 'app:dssy_bench'


def read_settings(config_uri: Optional[str]) -> dict:
    """Raw string settings of the app section, empty without a config."""
    if not config_uri:
        return {}
    path = config_uri.split('#', 1)[0]
    if not os.path.isfile(path):
        raise BadParam(f"config file not found: {path}")
    return dict(plaster.get_settings(config_uri, APP_SECTION))


def load_settings(config_uri: Optional[str] = None,
                  overrides: Optional[dict] = None) -> dict:
    """
    Validated ``dssy.*`` settings from ``config_uri`` with ``overrides``
    applied on top.

    :raises BadParam: on values the schema rejects
    """
    raw = read_settings(config_uri)
    raw.update(overrides or {})
    return SettingsSchema().load_or_raise(raw)


def setup_logging(config_uri: Optional[str] = None,
                  level: int = logging.WARNING) -> None:
    if config_uri:
        plaster.setup_logging(config_uri)
    else:
        logging.basicConfig(level=level)
