"""8-bit grayscale image I/O (PNG and binary PGM).

Pixels map to float64 via v / 255 on read and round(v * 255) clamped on
write. Colour inputs are reduced to luma Y = 0.299 R + 0.587 G + 0.114 B
before entering the pipeline.
"""

import numpy as np
from PIL import Image as PILImage

_LUMA = np.array([0.299, 0.587, 0.114])


def read_image(path):
    """Load PNG/PGM as a float64 image in [0, 1] (luma for colour inputs)."""
    with PILImage.open(path) as im:
        if im.mode in ("L", "I;16", "I"):
            arr = np.asarray(im, dtype=np.float64)
            peak = 65535.0 if im.mode in ("I;16", "I") else 255.0
            return arr / peak
        rgb = np.asarray(im.convert("RGB"), dtype=np.float64)
        return (rgb @ _LUMA) / 255.0


def write_image(path, img):
    """Write as 8-bit grayscale; format chosen from the extension."""
    img = np.asarray(img, dtype=np.float64)
    data = np.clip(np.round(img * 255.0), 0, 255).astype(np.uint8)
    PILImage.fromarray(data, mode="L").save(path)


def write_counts(path, counts):
    """Debug dump of a contribution map as 16-bit PNG."""
    data = np.clip(np.asarray(counts), 0, 65535).astype(np.uint16)
    PILImage.fromarray(data, mode="I;16").save(path)
