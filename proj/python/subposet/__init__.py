"""Induced-subposet machinery for the Boolean lattice.

Thin wrapper over the C++ extension; see the README for the full catalogue of
operations and the CLI equivalents.
"""

try:
    from ._subposet import *  # noqa: F401,F403  (installed wheel layout)
    from ._subposet import __version__  # noqa: F401
except ImportError:  # in-tree builds put the extension on sys.path directly
    from _subposet import *  # noqa: F401,F403
    from _subposet import __version__  # noqa: F401
