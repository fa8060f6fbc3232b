"""Quantum box dynamics under the U(2) family of self-adjoint boundary
conditions: spectra, theta-function carpets, moving walls and the
boundary-condition composition law."""

try:
    from ._qwalls import *  # noqa: F401,F403
    from ._qwalls import __version__  # noqa: F401
except ImportError:  # in-tree builds place the extension on sys.path directly
    from _qwalls import *  # noqa: F401,F403
    from _qwalls import __version__  # noqa: F401
