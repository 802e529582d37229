"""Synthetic low-resolution observation stacks.

The assumed imaging chain is translate -> blur -> decimate -> additive
Gaussian noise, applied per frame to one ground-truth HR image. Everything
is deterministic given the seed; frame i draws from its own RNG stream so
stacks are reproducible regardless of evaluation order.
"""

import hashlib
import json
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from . import image_io
from .raster import Shift, as_image, clamp01, convolve, decimate, gaussian_kernel, translate, validate_kernel


@dataclass
class ImagingModel:
    """Degradation parameters shared by every frame of a scene."""

    blur: np.ndarray
    r: int = 2
    noise_sigma: float = 0.0
    shifts: list = field(default_factory=list)

    def __post_init__(self):
        self.blur = validate_kernel(self.blur)
        self.r = int(self.r)
        if self.r < 1:
            raise ValueError("decimation factor r must be >= 1")
        if not 0.0 <= self.noise_sigma < 0.5:
            raise ValueError("noise_sigma must lie in [0, 0.5)")
        if not self.shifts:
            raise ValueError("shifts list must be non-empty")
        self.shifts = [Shift(float(s[0]), float(s[1])) for s in self.shifts]

    def to_json(self):
        return {
            "blur": {"size": int(self.blur.shape[0]), "weights": self.blur.ravel().tolist()},
            "r": self.r,
            "noise_sigma": self.noise_sigma,
            "shifts": [[s.dx, s.dy] for s in self.shifts],
        }

    @classmethod
    def from_json(cls, doc):
        size = int(doc["blur"]["size"])
        blur = np.asarray(doc["blur"]["weights"], dtype=np.float64).reshape(size, size)
        return cls(blur=blur, r=doc["r"], noise_sigma=doc.get("noise_sigma", 0.0), shifts=doc["shifts"])

    def digest(self):
        return hashlib.sha256(json.dumps(self.to_json(), sort_keys=True).encode()).hexdigest()[:16]


def default_model(n_frames=4, r=2, noise_sigma=0.01, seed=0):
    """Gaussian sigma-1 blur, uniform subpixel shifts, the stock test model."""
    return ImagingModel(
        blur=gaussian_kernel(5, 1.0),
        r=r,
        noise_sigma=noise_sigma,
        shifts=default_ad_shifts(n_frames, r, seed),
    )


@dataclass
class SceneStack:
    """N same-sized LR observations of one scene.

    true_shifts, when present, are per-frame alignment shifts in LR pixel
    units: translating frame i by true_shifts[i] maps it onto frame 0, so
    they can be fed straight to fusion and compared against registration.
    """

    frames: list
    true_shifts: list = None
    reference_hr: np.ndarray = None

    def __post_init__(self):
        if not self.frames:
            raise ValueError("a scene needs at least one frame")
        self.frames = [as_image(f) for f in self.frames]
        shape = self.frames[0].shape
        if any(f.shape != shape for f in self.frames):
            raise ValueError("all frames must share identical dimensions")
        if self.true_shifts is not None:
            if len(self.true_shifts) != len(self.frames):
                raise ValueError("true_shifts length must match frame count")
            self.true_shifts = [Shift(float(s[0]), float(s[1])) for s in self.true_shifts]
        if self.reference_hr is not None:
            self.reference_hr = as_image(self.reference_hr)

    def __len__(self):
        return len(self.frames)


def default_ad_shifts(n, r, seed):
    """n HR-pixel shifts, uniform over [0, r)^2; frame 0 is the (0,0) anchor."""
    if n < 1:
        raise ValueError("need at least one shift")
    rng = np.random.default_rng([int(seed), 0x5ad])
    out = [Shift(0.0, 0.0)]
    for _ in range(n - 1):
        dx, dy = rng.uniform(0.0, r, size=2)
        out.append(Shift(float(dx), float(dy)))
    return out


def degrade_scene(hr, model, seed):
    """Run the imaging chain once per shift and collect the LR stack.

    The HR image is centre-cropped so both dimensions divide by model.r.
    Recorded true_shifts are the alignment shifts -s_i / r in LR pixel units.
    """
    hr = as_image(hr)
    r = model.r
    h, w = hr.shape
    ch, cw = (h // r) * r, (w // r) * r
    if ch < r or cw < r:
        raise ValueError(f"HR image {w}x{h} too small for decimation factor {r} after cropping")
    top, left = (h - ch) // 2, (w - cw) // 2
    hr = np.ascontiguousarray(hr[top : top + ch, left : left + cw])

    frames = []
    for i, s in enumerate(model.shifts):
        stage = translate(hr, s, "bilinear")
        stage = convolve(stage, model.blur)
        stage = decimate(stage, r)
        if model.noise_sigma > 0.0:
            rng = np.random.default_rng([int(seed), i])
            stage = stage + rng.normal(0.0, model.noise_sigma, stage.shape)
        frames.append(clamp01(stage))

    aligned = [Shift(-s.dx / r, -s.dy / r) for s in model.shifts]
    return SceneStack(frames=frames, true_shifts=aligned, reference_hr=hr)


def synthetic_hr(height, width, seed):
    """Reproducible textured test image: multi-octave value noise plus a few
    hard-edged patches so there is both broadband texture and structure."""
    rng = np.random.default_rng([int(seed), 0x0e5])
    img = np.zeros((height, width))
    weight = 0.5
    for cell in (16, 8, 4, 2):
        gh, gw = max(height // cell, 2), max(width // cell, 2)
        coarse = rng.random((gh, gw))
        ys = np.linspace(0, gh - 1, height)
        xs = np.linspace(0, gw - 1, width)
        y0 = np.floor(ys).astype(int).clip(0, gh - 2)
        x0 = np.floor(xs).astype(int).clip(0, gw - 2)
        fy = (ys - y0)[:, None]
        fx = (xs - x0)[None, :]
        img += weight * (
            coarse[np.ix_(y0, x0)] * (1 - fy) * (1 - fx)
            + coarse[np.ix_(y0, x0 + 1)] * (1 - fy) * fx
            + coarse[np.ix_(y0 + 1, x0)] * fy * (1 - fx)
            + coarse[np.ix_(y0 + 1, x0 + 1)] * fy * fx
        )
        weight *= 0.5
    img = (img - img.min()) / (img.max() - img.min() + 1e-12)
    for _ in range(max(3, height * width // 4096)):
        py, px = rng.integers(0, height), rng.integers(0, width)
        sy, sx = rng.integers(2, max(3, height // 8)), rng.integers(2, max(3, width // 8))
        img[py : py + sy, px : px + sx] = rng.uniform(0.1, 0.9)
    return clamp01(0.05 + 0.9 * img)


def save_scene(stack, out_dir, seed=None, model=None):
    """Persist a stack as PNG frames plus a scene.json manifest."""
    out = Path(out_dir)
    out.mkdir(parents=True, exist_ok=True)
    names = []
    for i, frame in enumerate(stack.frames):
        name = f"frame_{i:02d}.png"
        image_io.write_image(out / name, frame)
        names.append(name)
    manifest = {
        "frames": names,
        "shifts": [[s.dx, s.dy] for s in stack.true_shifts] if stack.true_shifts else None,
    }
    if stack.reference_hr is not None:
        image_io.write_image(out / "reference.png", stack.reference_hr)
        manifest["reference"] = "reference.png"
    if seed is not None:
        manifest["seed"] = int(seed)
    if model is not None:
        manifest["model_hash"] = model.digest()
        manifest["r"] = model.r
    (out / "scene.json").write_text(json.dumps(manifest, indent=2) + "\n")
    return out / "scene.json"


def load_scene(scene_dir):
    scene_dir = Path(scene_dir)
    manifest = json.loads((scene_dir / "scene.json").read_text())
    frames = [image_io.read_image(scene_dir / name) for name in manifest["frames"]]
    reference = None
    if manifest.get("reference"):
        reference = image_io.read_image(scene_dir / manifest["reference"])
    shifts = manifest.get("shifts")
    return SceneStack(frames=frames, true_shifts=shifts, reference_hr=reference)
