import logging

__version__ = "0.1.0"

from .algebra import make_algebra
from .decorators import validated
from .settings import config

logging.getLogger(__name__).addHandler(logging.NullHandler())
