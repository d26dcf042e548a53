"""Photonic-link / transmon co-simulation toolkit."""

try:
    from ._photonlink import *  # noqa: F401,F403
    from ._photonlink import __version__  # noqa: F401
except ImportError:  # running against a bare build tree
    from _photonlink import *  # noqa: F401,F403
    from _photonlink import __version__  # noqa: F401
