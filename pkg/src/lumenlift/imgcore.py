"""Image carriers, BT.601 intensity, and 8-bit PNG/JPEG file I/O.

Images are numpy float32 arrays of shape (H, W, 3) holding non-linear sRGB
samples in [0, 1], exactly as stored in the file (no gamma linearization).
Intensity maps are (H, W) float32. The byte mappings are normative:
load maps k -> k/255 and save maps v -> round(clamp(v, 0, 1) * 255),
so save followed by load round-trips 8-bit data exactly.
"""

from __future__ import annotations

import numpy as np
from PIL import Image, UnidentifiedImageError


class ChannelMismatchError(ValueError):
    """Operation requires a different channel count."""


class InvalidParamsError(ValueError):
    """Parameter value outside its documented domain."""


class DimensionMismatchError(ValueError):
    """Inputs that must share dimensions do not."""


class EmptySequenceError(ValueError):
    """A non-empty sequence of images/frames was required."""


class TooManyLevelsError(ValueError):
    """Pyramid level count exceeds what the image size supports."""


class TooFewFramesError(ValueError):
    """Frame-pair statistics need at least two frames."""


class DimensionDriftError(ValueError):
    """Frame dimensions changed mid-stream."""


class UnsupportedFormatError(ValueError):
    """File is not one of the supported image formats."""


class CorruptImageError(ValueError):
    """File claims a supported format but does not decode."""


_FORMATS = {"PNG", "JPEG"}

# ITU-R BT.601 luma coefficients; they sum to 1 so gray maps to itself.
_LUMA_R = np.float32(0.299)
_LUMA_G = np.float32(0.587)
_LUMA_B = np.float32(0.114)


def require_rgb(image: np.ndarray) -> None:
    """Raise ChannelMismatchError unless image is (H, W, 3)."""
    if image.ndim != 3 or image.shape[2] != 3:
        raise ChannelMismatchError(
            f"expected a (H, W, 3) image, got shape {image.shape}"
        )


def decode_image(fp) -> np.ndarray:
    """Decode a PNG/JPEG file object or path into a float32 (H, W, 3) array."""
    try:
        with Image.open(fp) as img:
            if img.format not in _FORMATS:
                raise UnsupportedFormatError(
                    f"unsupported format {img.format!r}, expected PNG or JPEG"
                )
            rgb = img.convert("RGB")
            data = np.asarray(rgb, dtype=np.uint8)
    except UnidentifiedImageError as exc:
        raise UnsupportedFormatError(str(exc)) from exc
    except FileNotFoundError:
        raise
    except OSError as exc:
        raise CorruptImageError(str(exc)) from exc
    return data.astype(np.float32) / np.float32(255.0)


def load_image(path) -> np.ndarray:
    """Load an 8-bit PNG or JPEG as float32 in [0, 1].

    Grayscale files are expanded to three equal channels. Samples map as
    k -> k/255.
    """
    return decode_image(path)


def quantize(image: np.ndarray) -> np.ndarray:
    """Clamp to [0, 1] and quantize to uint8 by round(v * 255).

    The product is computed in float64 so ties are exact; the only
    representable tie, 0.5 -> 127.5, rounds up to 128.
    """
    v = np.clip(image.astype(np.float64), 0.0, 1.0)
    return np.rint(v * 255.0).astype(np.uint8)


def save_image(image: np.ndarray, fp) -> None:
    """Write an image as 8-bit PNG to a path or binary file object."""
    if image.ndim == 2:
        mode = "L"
    elif image.ndim == 3 and image.shape[2] == 3:
        mode = "RGB"
    else:
        raise ChannelMismatchError(
            f"can only save 1- or 3-channel images, got shape {image.shape}"
        )
    Image.fromarray(quantize(image), mode=mode).save(fp, format="PNG")


def luma(image: np.ndarray) -> np.ndarray:
    """BT.601 intensity, In = 0.299 r + 0.587 g + 0.114 b, clamped to [0, 1]."""
    require_rgb(image)
    img = image.astype(np.float32, copy=False)
    y = (_LUMA_R * img[..., 0] + _LUMA_G * img[..., 1]) + _LUMA_B * img[..., 2]
    return np.clip(y, 0.0, 1.0, out=y)


def intensity_gap(intensity: np.ndarray) -> np.ndarray:
    """Distance to full exposure, y = 1 - In; large for dark pixels."""
    return np.subtract(np.float32(1.0), intensity, dtype=np.float32)
