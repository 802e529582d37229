"""Median shift-and-add fusion onto an upscaled grid.

Each frame pixel is deposited at the nearest HR grid position implied by the
frame's shift; co-located deposits take their median (mean of the middle two
for even counts). The contribution map counts deposits per HR pixel; count-0
holes are filled by interpolation for the initial estimate but stay 0 in the
map so the refinement data term ignores them.
"""

import numpy as np

from . import backends
from .raster import Shift, clamp01


def scale_shifts(shifts, factor):
    """Multiply both shift components by factor (the enhancement scale)."""
    factor = float(factor)
    if factor <= 0:
        raise ValueError("shift scale factor must be positive")
    return [Shift(s[0] * factor, s[1] * factor) for s in shifts]


def median_shift_and_add(frames, shifts, r):
    """Fuse LR frames into an r-times larger grid.

    Frame i pixel (x, y) deposits at (round(r*(x + dx_i)), round(r*(y + dy_i)))
    with half-up rounding; off-grid deposits are dropped. Returns the fused
    image (holes interpolated, clamped to [0, 1]) and the integer contribution
    map (0 exactly on hole pixels).
    """
    if len(frames) != len(shifts):
        raise ValueError(f"{len(frames)} frames but {len(shifts)} shifts")
    if not frames:
        raise ValueError("nothing to fuse")
    r = int(r)
    if r < 1:
        raise ValueError("upscale factor must be >= 1")
    stack = np.ascontiguousarray(np.stack([np.asarray(f, dtype=np.float64) for f in frames]))
    h, w = stack.shape[1:]
    # r*x is integral, so rounding reduces to one integer offset per frame
    ox = np.array([int(np.floor(r * float(s[0]) + 0.5)) for s in shifts], dtype=np.int64)
    oy = np.array([int(np.floor(r * float(s[1]) + 0.5)) for s in shifts], dtype=np.int64)
    fused, counts = backends.median_deposit(stack, ox, oy, r, h * r, w * r)
    if not counts.any():
        raise ValueError("all deposits fell outside the HR grid")
    filled = backends.fill_holes(fused, counts)
    return clamp01(filled), counts
