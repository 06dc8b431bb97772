"""
The bundled library of ``.hk`` sources.

Imports that are not found next to the importing file resolve here.
"""

import os


__all__ = [
    "STDLIB_DIR",
    "MODULES",
    "path",
    "manifest_path",
]


STDLIB_DIR = os.path.dirname(os.path.abspath(__file__))

MODULES = ("prelude", "one_step", "seq_colim", "trunc", "corollaries")


def path(module):
    """Path of the bundled source file for `module`."""
    return os.path.join(STDLIB_DIR, module + ".hk")


def manifest_path():
    return os.path.join(STDLIB_DIR, "manifest.json")
