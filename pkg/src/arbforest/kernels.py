"""Backend selection for the graph-search kernels.

The compiled extension (``arbforest._kernels``) is preferred; the
pure-Python module (``arbforest._kernels_py``) is the fallback.  Setting
the environment variable ``ARBFOREST_PURE`` forces the fallback.  Both
backends are behaviorally identical; ``use_backend`` switches at runtime
(used by the parity tests and the benchmark).
"""

import os

from . import _kernels_py

try:
    from . import _kernels
except ImportError:
    _kernels = None

_active = _kernels_py if (_kernels is None or os.environ.get("ARBFOREST_PURE")) else _kernels


def available_backends():
    names = ["pure"]
    if _kernels is not None:
        names.insert(0, "compiled")
    return names


def backend_name():
    return "pure" if _active is _kernels_py else "compiled"


def use_backend(name):
    """Select 'compiled' or 'pure'; returns the previously active name."""
    global _active
    previous = backend_name()
    if name == "pure":
        _active = _kernels_py
    elif name == "compiled":
        if _kernels is None:
            raise RuntimeError("compiled kernels are not available")
        _active = _kernels
    else:
        raise ValueError(f"unknown backend {name!r}")
    return previous


def bfs_dist(*args):
    return _active.bfs_dist(*args)


def bfs_dist_masked(*args):
    return _active.bfs_dist_masked(*args)


def boundary_candidate(*args):
    return _active.boundary_candidate(*args)


def greedy_min_path(*args):
    return _active.greedy_min_path(*args)


def scc_labels(*args):
    return _active.scc_labels(*args)
