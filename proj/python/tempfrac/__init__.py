"""Tempered time-fractional advection-diffusion solver bindings."""

try:
    from ._tempfrac import *  # noqa: F401,F403  (installed package layout)
    from ._tempfrac import __version__  # noqa: F401
except ImportError:  # development layout: extension built by CMake on PYTHONPATH
    from _tempfrac import *  # noqa: F401,F403
    from _tempfrac import __version__  # noqa: F401
