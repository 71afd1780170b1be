"""Numerical differential geometry of parametrized quantum state families."""

try:
    from ._core import *  # noqa: F401,F403
    from ._core import __version__  # noqa: F401
except ImportError:  # running against a build tree with the extension on sys.path
    from _core import *  # noqa: F401,F403
    from _core import __version__  # noqa: F401
