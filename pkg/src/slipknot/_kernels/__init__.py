"""Hot loops with a compiled implementation and a pure-Python fallback.

The compiled extensions are used when importable; set ``SLIPKNOT_PURE=1`` to
force the fallback.  ``BACKEND`` names the active implementation.
"""

import os

from . import _fallback

walk_maps = _fallback.walk_maps
leg_distance = _fallback.leg_distance

if os.environ.get("SLIPKNOT_PURE"):
    census_counts = _fallback.census_counts
    state_histogram = _fallback.state_histogram
    BACKEND = "python"
else:
    try:
        from ._bracket import state_histogram
        from ._census import census_counts
        BACKEND = "compiled"
    except ImportError:
        census_counts = _fallback.census_counts
        state_histogram = _fallback.state_histogram
        BACKEND = "python"

__all__ = ["BACKEND", "census_counts", "leg_distance", "state_histogram", "walk_maps"]
