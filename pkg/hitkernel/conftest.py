import sys


# deeply nested library proofs recurse through the normalizer
RECURSION_LIMIT = 20000


def pytest_configure(config):
    sys.setrecursionlimit(max(sys.getrecursionlimit(), RECURSION_LIMIT))
