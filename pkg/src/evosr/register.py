"""Subpixel translational registration via FFT phase correlation.

The returned shift is the translation that maps the moving frame onto the
reference, so downstream fusion can apply it directly. Subpixel refinement
fits a quadratic to the 3x3 neighbourhood of the correlation peak; the
cross-power spectrum is tapered with a Gaussian so the peak is smooth enough
for the fit (a raw phase-correlation peak is near-delta and fits poorly).
"""

import numpy as np

from .raster import Shift


class RegistrationError(ValueError):
    pass


_MIN_DIM = 16
_SPECTRAL_SIGMA_FRAC = 0.12  # frequency-domain taper width, fraction of N


def _peak_offset(cm, c0, cp):
    """Vertex of the parabola through (-1, cm), (0, c0), (1, cp).

    Uses the log-domain fit (exact for a Gaussian-shaped peak) when all
    three samples are positive, otherwise the plain quadratic.
    """
    if cm > 0.0 and c0 > 0.0 and cp > 0.0:
        cm, c0, cp = np.log(cm), np.log(c0), np.log(cp)
    denom = cm + cp - 2.0 * c0
    if denom >= 0.0:
        return 0.0
    delta = 0.5 * (cm - cp) / denom
    return float(np.clip(delta, -1.0, 1.0))


def estimate_shift(reference, moving):
    """Estimate the subpixel shift aligning `moving` to `reference`."""
    ref = np.asarray(reference, dtype=np.float64)
    mov = np.asarray(moving, dtype=np.float64)
    if ref.shape != mov.shape:
        raise RegistrationError(f"frame shapes differ: {ref.shape} vs {mov.shape}")
    h, w = ref.shape
    if h < _MIN_DIM or w < _MIN_DIM:
        raise RegistrationError(f"frames must be at least {_MIN_DIM}x{_MIN_DIM}")
    if np.ptp(ref) < 1e-12 or np.ptp(mov) < 1e-12:
        raise RegistrationError("no registrable content (constant image)")

    window = np.hanning(h)[:, None] * np.hanning(w)[None, :]
    fr = np.fft.fft2((ref - ref.mean()) * window)
    fm = np.fft.fft2((mov - mov.mean()) * window)
    cross = fr * np.conj(fm)
    cross /= np.maximum(np.abs(cross), 1e-15)

    fy = np.fft.fftfreq(h)[:, None]
    fx = np.fft.fftfreq(w)[None, :]
    taper = np.exp(-(fx * fx + fy * fy) / (2.0 * _SPECTRAL_SIGMA_FRAC**2))
    corr = np.fft.ifft2(cross * taper).real

    py, px = np.unravel_index(np.argmax(corr), corr.shape)
    sub_x = _peak_offset(corr[py, (px - 1) % w], corr[py, px], corr[py, (px + 1) % w])
    sub_y = _peak_offset(corr[(py - 1) % h, px], corr[py, px], corr[(py + 1) % h, px])
    dy = (py + h // 2) % h - h // 2 + sub_y
    dx = (px + w // 2) % w - w // 2 + sub_x
    return Shift(dx, dy)


def register_stack(stack):
    """Per-frame alignment shifts relative to frame 0 (frame 0 is exact zero)."""
    frames = stack.frames if hasattr(stack, "frames") else list(stack)
    if not frames:
        raise RegistrationError("empty stack")
    shifts = [Shift(0.0, 0.0)]
    for i, frame in enumerate(frames[1:], start=1):
        try:
            shifts.append(estimate_shift(frames[0], frame))
        except RegistrationError as exc:
            raise RegistrationError(f"frame {i}: {exc}") from exc
    return shifts
