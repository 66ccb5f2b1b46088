"""Selects the compiled kernels when available, else the pure-Python ones.

Set QUADTORS_PURE=1 to force the fallback.
"""
import os

if os.environ.get("QUADTORS_PURE") == "1":
    from ._kernels_py import count_points, roots_mod_p, trial_divide

    BACKEND = "python"
else:
    try:
        from ._kernels import count_points, roots_mod_p, trial_divide

        BACKEND = "cython"
    except ImportError:  # pragma: no cover - depends on build
        from ._kernels_py import count_points, roots_mod_p, trial_divide

        BACKEND = "python"

__all__ = ["BACKEND", "count_points", "roots_mod_p", "trial_divide"]
