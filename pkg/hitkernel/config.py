"""
Package-level configuration of the kernel.

The only tunable is the largest universe level the checker accepts. It is read
from the environment variable ``HITKERNEL_MAX_LEVEL`` when the package is
imported and can be replaced at runtime with :func:`set_max_level`.
"""

import logging
import os


logger = logging.getLogger(__name__)

DEFAULT_MAX_LEVEL = 4
MAX_LEVEL_ENV = "HITKERNEL_MAX_LEVEL"


def max_level_from_env(environ=None):
    """Read the maximum universe level from the environment.

    Parameters
    ----------
    environ : mapping, optional
        The environment to read from. Defaults to ``os.environ``.

    Returns
    -------
    int
        The configured level, or :data:`DEFAULT_MAX_LEVEL` if the variable is
        unset or does not hold a non-negative integer.
    """
    if environ is None:
        environ = os.environ
    raw = environ.get(MAX_LEVEL_ENV)
    if raw is None or raw.strip() == "":
        return DEFAULT_MAX_LEVEL
    try:
        level = int(raw)
    except ValueError:
        level = -1
    if level < 0:
        logger.warning("ignoring %s=%r: expected a non-negative integer",
                       MAX_LEVEL_ENV, raw)
        return DEFAULT_MAX_LEVEL
    return level


_max_level = max_level_from_env()


def get_max_level():
    """Get the largest universe level accepted by the checker.

    Returns
    -------
    int
        The level passed to the most recent call of :func:`set_max_level`,
        or the value read from ``HITKERNEL_MAX_LEVEL`` at import time.
    """
    return _max_level


def set_max_level(level):
    """Set the largest universe level accepted by the checker.

    Parameters
    ----------
    level : int
        A non-negative integer.

    Raises
    ------
    ValueError
        If `level` is negative or not an integer.
    """
    global _max_level
    if isinstance(level, bool) or not isinstance(level, int) or level < 0:
        raise ValueError("max level must be a non-negative integer, "
                         "got %r" % (level,))
    _max_level = level
