"""Raster primitives: images, kernels, subpixel shifts.

An image is a 2D float64 array with values in [0, 1]; arithmetic may leave
that range but stored results are clamped by the caller. All operations use
replicate padding at the borders and are pure.
"""

from typing import NamedTuple

import numpy as np

from . import backends


class Shift(NamedTuple):
    """Translation in pixels; fractional components allowed."""

    dx: float
    dy: float


RESAMPLE_METHODS = ("nearest", "bilinear", "bicubic", "lanczos3")


def as_image(data):
    """Coerce to a float64 2D array and check the stored-image invariants."""
    img = np.asarray(data, dtype=np.float64)
    if img.ndim != 2 or img.size == 0:
        raise ValueError(f"image must be a non-empty 2D array, got shape {img.shape}")
    if not np.isfinite(img).all():
        raise ValueError("image contains non-finite values")
    if img.min() < 0.0 or img.max() > 1.0:
        raise ValueError("stored image values must lie in [0, 1]")
    return np.ascontiguousarray(img)


def clamp01(img):
    return np.clip(img, 0.0, 1.0)


def validate_kernel(kernel):
    k = np.ascontiguousarray(np.asarray(kernel, dtype=np.float64))
    if k.ndim != 2 or k.shape[0] != k.shape[1] or k.shape[0] % 2 == 0:
        raise ValueError(f"kernel must be square with odd size, got shape {k.shape}")
    if not np.isfinite(k).all():
        raise ValueError("kernel contains non-finite weights")
    return k


def delta_kernel(size=5):
    """Identity kernel: 1 at the centre, 0 elsewhere."""
    k = np.zeros((size, size))
    k[size // 2, size // 2] = 1.0
    return k


def gaussian_kernel(size=5, sigma=1.0):
    """Gaussian truncated to size x size and renormalised to sum 1."""
    c = size // 2
    y, x = np.mgrid[-c : c + 1, -c : c + 1]
    k = np.exp(-(x * x + y * y) / (2.0 * sigma * sigma))
    return k / k.sum()


def flip_kernel(kernel):
    """180-degree rotation; the adjoint kernel for convolve."""
    k = validate_kernel(kernel)
    return np.ascontiguousarray(k[::-1, ::-1])


def convolve(img, kernel):
    """Convolve with replicate padding. Output is NOT clamped: intermediate
    arithmetic is allowed outside [0, 1], callers clamp when storing."""
    img = np.ascontiguousarray(np.asarray(img, dtype=np.float64))
    if img.ndim != 2 or img.size == 0:
        raise ValueError("convolve requires a non-empty 2D image")
    return backends.convolve2d(img, validate_kernel(kernel))


def translate(img, shift, interpolation="bilinear"):
    """Move image content by (dx, dy); out-of-range samples replicate the edge.

    out(x, y) = in(x - dx, y - dy). Nearest rounds half up; bilinear handles
    fractional shifts. Fractional output never exceeds the input extrema.
    """
    img = np.ascontiguousarray(np.asarray(img, dtype=np.float64))
    dx, dy = float(shift[0]), float(shift[1])
    h, w = img.shape
    if max(abs(dx), abs(dy)) >= min(w, h) / 2:
        raise ValueError(f"shift ({dx}, {dy}) too large for a {w}x{h} image")
    if interpolation == "nearest":
        return backends.translate_nearest(img, dx, dy)
    if interpolation == "bilinear":
        return backends.translate_bilinear(img, dx, dy)
    raise ValueError(f"unknown interpolation {interpolation!r}")


def decimate(img, r):
    """Keep every r-th pixel starting at the origin (top-left sampling)."""
    img = np.asarray(img, dtype=np.float64)
    r = int(r)
    if r < 1:
        raise ValueError("decimation factor must be >= 1")
    h, w = img.shape
    if h < r or w < r:
        raise ValueError(f"image {w}x{h} smaller than decimation factor {r}")
    return np.ascontiguousarray(img[: (h // r) * r : r, : (w // r) * r : r])


def _bicubic_weight(t):
    # Catmull-Rom (a = -0.5)
    at = abs(t)
    if at <= 1.0:
        return 1.5 * at**3 - 2.5 * at**2 + 1.0
    if at < 2.0:
        return -0.5 * at**3 + 2.5 * at**2 - 4.0 * at + 2.0
    return 0.0


def _lanczos3_weight(t):
    if t == 0.0:
        return 1.0
    if abs(t) >= 3.0:
        return 0.0
    pt = np.pi * t
    return 3.0 * np.sin(pt) * np.sin(pt / 3.0) / (pt * pt)


_METHOD_TAPS = {"nearest": 1, "bilinear": 2, "bicubic": 4, "lanczos3": 6}


def _resample_matrix(n_in, n_out, method):
    """Row-stochastic (n_out, n_in) interpolation weights for one axis.

    Output sample X reads the source at (X + 0.5) * n_in / n_out - 0.5
    (centre-aligned mapping), with source indices clamped to the edge.
    """
    taps = _METHOD_TAPS[method]
    mat = np.zeros((n_out, n_in))
    scale = n_in / n_out
    for xo in range(n_out):
        src = (xo + 0.5) * scale - 0.5
        if method == "nearest":
            mat[xo, min(max(int(np.floor(src + 0.5)), 0), n_in - 1)] = 1.0
            continue
        base = int(np.floor(src)) - taps // 2 + 1
        wsum = 0.0
        for i in range(taps):
            t = src - (base + i)
            if method == "bilinear":
                wgt = max(0.0, 1.0 - abs(t))
            elif method == "bicubic":
                wgt = _bicubic_weight(t)
            else:
                wgt = _lanczos3_weight(t)
            mat[xo, min(max(base + i, 0), n_in - 1)] += wgt
            wsum += wgt
        mat[xo] /= wsum
    return mat


def resample(img, factor, method="bicubic"):
    """Rescale by a positive factor; output dims round to nearest integer.

    Separable interpolation with per-sample weight normalisation, replicate
    padding, output clamped to [0, 1]. factor == 1 is the identity.
    """
    img = np.asarray(img, dtype=np.float64)
    factor = float(factor)
    if factor <= 0:
        raise ValueError("resample factor must be positive")
    if method not in RESAMPLE_METHODS:
        raise ValueError(f"unknown resample method {method!r}")
    h, w = img.shape
    out_h = int(round(h * factor))
    out_w = int(round(w * factor))
    if out_h < 1 or out_w < 1:
        raise ValueError(f"resample by {factor} collapses a {w}x{h} image")
    if (out_h, out_w) == (h, w) and factor == 1.0:
        return img.copy()
    mv = _resample_matrix(h, out_h, method)
    mh = _resample_matrix(w, out_w, method)
    return clamp01(mv @ img @ mh.T)
