"""
The surface language: lexer, parser, elaborator and pretty printer.
"""

from .lexer import *
from .parser import *
from .elaborator import *
from .pretty import *
