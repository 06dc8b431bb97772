"""
A small proof checker for dependent type theory with a quotient type
"""

from . import config
from . import diagnostics
from . import syntax
from . import normalizer
from . import typechecker
from . import frontend
from . import loader
from . import random
from . import stdlib


try:
    from importlib.metadata import version, PackageNotFoundError
except ImportError:  # pragma: no cover
    from importlib_metadata import version, PackageNotFoundError

try:
    __version__ = version("hitkernel")
except PackageNotFoundError:  # pragma: no cover
    __version__ = "0.1.dev1"
del version, PackageNotFoundError
