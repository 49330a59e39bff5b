"""Fock-state preparation in a lossless cavity by conditional measurements."""

try:
    from ._cavityfock import *  # noqa: F401,F403  (installed package layout)
    from ._cavityfock import __doc__ as _core_doc
except ImportError:
    from _cavityfock import *  # noqa: F401,F403  (in-tree build layout)
    from _cavityfock import __doc__ as _core_doc

__doc__ = _core_doc
