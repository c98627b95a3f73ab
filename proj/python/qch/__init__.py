"""Exact quasi-convexity toolkit.

Thin wrapper around the compiled ``_qch`` extension. The extension lives next
to this package after an installed build, or on ``sys.path`` (for example the
CMake build directory) during development.
"""

try:
    from ._qch import *  # noqa: F401,F403
    from ._qch import __version__  # noqa: F401
except ImportError:
    from _qch import *  # noqa: F401,F403
    from _qch import __version__  # noqa: F401
