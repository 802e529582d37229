"""Pure-numpy implementations of the hot kernels.

Reference semantics for the numba backend; every function here must agree
with its numba twin to float64 round-off. Boundary policy is replicate
padding throughout.
"""

import warnings

import numpy as np
from numpy.lib.stride_tricks import sliding_window_view


def convolve2d(img, kernel):
    """True 2D convolution (kernel flipped), replicate padding, unclamped."""
    k = kernel.shape[0]
    p = k // 2
    padded = np.pad(img, p, mode="edge")
    windows = sliding_window_view(padded, (k, k))
    return np.einsum("xykl,kl->xy", windows, kernel[::-1, ::-1], optimize=True)


def translate_nearest(img, dx, dy):
    h, w = img.shape
    # out(x, y) = in(x - dx, y - dy), half-up rounding, edge clamp
    cols = np.clip(np.floor(np.arange(w) - dx + 0.5).astype(np.int64), 0, w - 1)
    rows = np.clip(np.floor(np.arange(h) - dy + 0.5).astype(np.int64), 0, h - 1)
    return img[np.ix_(rows, cols)]


def translate_bilinear(img, dx, dy):
    h, w = img.shape
    xs = np.arange(w) - dx
    ys = np.arange(h) - dy
    x0 = np.floor(xs)
    y0 = np.floor(ys)
    fx = xs - x0
    fy = ys - y0
    x0 = x0.astype(np.int64)
    y0 = y0.astype(np.int64)
    x0c = np.clip(x0, 0, w - 1)
    x1c = np.clip(x0 + 1, 0, w - 1)
    y0c = np.clip(y0, 0, h - 1)
    y1c = np.clip(y0 + 1, 0, h - 1)
    top = img[np.ix_(y0c, x0c)] * (1.0 - fx) + img[np.ix_(y0c, x1c)] * fx
    bot = img[np.ix_(y1c, x0c)] * (1.0 - fx) + img[np.ix_(y1c, x1c)] * fx
    return top * (1.0 - fy)[:, None] + bot * fy[:, None]


def _int_shift(img, sx, sy):
    """Integer-pixel translate with replicate padding: out(x,y)=in(x-sx,y-sy)."""
    h, w = img.shape
    cols = np.clip(np.arange(w) - sx, 0, w - 1)
    rows = np.clip(np.arange(h) - sy, 0, h - 1)
    return img[np.ix_(rows, cols)]


def btv_gradient(img, radius, alpha):
    grad = np.zeros_like(img)
    for m in range(-radius, radius + 1):
        for l in range(-radius, radius + 1):
            if l == 0 and m == 0:
                continue
            s = np.sign(img - _int_shift(img, l, m))
            grad += alpha ** (abs(l) + abs(m)) * (s - _int_shift(s, -l, -m))
    return grad


def median_deposit(frames, ox, oy, r, height, width):
    """Deposit N frames onto the HR grid and take per-pixel medians.

    Frame i pixel (x, y) lands at (r*x + ox[i], r*y + oy[i]); off-grid
    deposits are dropped. Returns (fused, counts) where holes are NaN.
    """
    n, h, w = frames.shape
    layers = np.full((n, height, width), np.nan)
    counts = np.zeros((height, width), dtype=np.int64)
    xs = np.arange(w)
    ys = np.arange(h)
    for i in range(n):
        tx = r * xs + ox[i]
        ty = r * ys + oy[i]
        mx = (tx >= 0) & (tx < width)
        my = (ty >= 0) & (ty < height)
        target = np.ix_(ty[my], tx[mx])
        layers[i][target] = frames[i][np.ix_(ys[my], xs[mx])]
        counts[target] += 1
    with warnings.catch_warnings():
        warnings.simplefilter("ignore", RuntimeWarning)  # all-NaN slices are holes
        fused = np.nanmedian(layers, axis=0)
    return fused, counts


def _nearest_along_rows(pop, vals):
    """Per row: value and distance of the nearest populated pixel to the left.

    Returns (value, distance, found) arrays; distance is 0 on populated pixels.
    """
    h, w = pop.shape
    col = np.arange(w)[None, :]
    idx = np.where(pop, col, -1)
    left = np.maximum.accumulate(idx, axis=1)
    found = left >= 0
    safe = np.where(pop, vals, 0.0)
    val = np.take_along_axis(safe, np.clip(left, 0, w - 1), axis=1)
    dist = col - left
    return val, dist.astype(np.float64), found


def _axis_interp(pop, vals):
    """Linear interpolation along rows between nearest populated neighbours."""
    vl, dl, fl = _nearest_along_rows(pop, vals)
    vr_r, dr_r, fr_r = _nearest_along_rows(pop[:, ::-1], vals[:, ::-1])
    vr, dr, fr = vr_r[:, ::-1], dr_r[:, ::-1], fr_r[:, ::-1]
    both = fl & fr
    denom = np.where(both, dl + dr, 1.0)
    interp = np.where(both, (vl * dr + vr * dl) / denom, np.where(fl, vl, vr))
    return interp, fl | fr


def fill_holes(fused, counts):
    """Fill count-0 pixels by linear interpolation from the nearest populated
    pixels along each axis (axis results averaged)."""
    pop = counts > 0
    out = np.where(pop, fused, 0.0)
    holes = ~pop
    if not holes.any():
        return out
    vh, okh = _axis_interp(pop, out)
    vv_t, okv_t = _axis_interp(pop.T, out.T)
    vv, okv = vv_t.T, okv_t.T
    wsum = okh.astype(np.float64) + okv.astype(np.float64)
    vsum = np.where(okh, vh, 0.0) + np.where(okv, vv, 0.0)
    filled = np.divide(vsum, wsum, out=np.full_like(vsum, np.nan), where=wsum > 0)
    # pixels with an empty row and column fall back to the global mean
    filled = np.where(wsum > 0, filled, fused[pop].mean())
    return np.where(holes, filled, out)


def _box_sum_axis0(img, win):
    p = win // 2
    padded = np.pad(img, ((p, p), (0, 0)), mode="edge")
    csum = np.zeros((padded.shape[0] + 1, padded.shape[1]))
    np.cumsum(padded, axis=0, out=csum[1:])
    return csum[win:] - csum[:-win]


def local_std(img, win):
    """Per-pixel population standard deviation over a win x win window."""
    def box_mean(a):
        s = _box_sum_axis0(a, win)
        s = _box_sum_axis0(s.T, win).T
        return s / (win * win)

    m = box_mean(img)
    m2 = box_mean(img * img)
    return np.sqrt(np.maximum(m2 - m * m, 0.0))
