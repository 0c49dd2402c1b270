"""Quality-guided multi-exposure fusion in the Laplacian-pyramid domain.

Each exposure is scored per pixel by contrast, saturation, and
well-exposedness; the normalized scores blend the exposures level by level
(Gaussian pyramid of the weights against Laplacian pyramid of the images),
and collapsing the blended pyramid yields the fused image. Blending at
every scale is what avoids the seams a flat per-pixel average produces.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .imgcore import (
    DimensionMismatchError,
    EmptySequenceError,
    InvalidParamsError,
    TooManyLevelsError,
    luma,
    require_rgb,
)

# normalization guard: pixels where every measure vanishes (all-black in
# every exposure) fall back to uniform weights instead of 0/0
_DELTA = np.float32(1e-12)

_LAPLACIAN = np.array([[0, 1, 0], [1, -4, 1], [0, 1, 0]], dtype=np.float32)

# Burt-Adelson binomial kernel; "mirror" borders throughout (edge sample
# not repeated) so constants survive blur, decimation, and upsampling
_KERNEL5 = np.array([1.0, 4.0, 6.0, 4.0, 1.0], dtype=np.float32) / np.float32(16.0)


@dataclass(frozen=True)
class QualityExponents:
    """Per-measure influence exponents; 0 disables a measure (0^0 = 1)."""

    contrast: float = 1.0
    saturation: float = 1.0
    exposedness: float = 1.0

    def __post_init__(self):
        for name in ("contrast", "saturation", "exposedness"):
            if not getattr(self, name) >= 0:
                raise InvalidParamsError(f"{name} exponent must be >= 0")


def contrast_measure(image: np.ndarray) -> np.ndarray:
    """Absolute discrete Laplacian of intensity; 0 on flat regions."""
    require_rgb(image)
    response = ndimage.correlate(luma(image), _LAPLACIAN, mode="mirror")
    return np.abs(response, out=response)


def saturation_measure(image: np.ndarray) -> np.ndarray:
    """Population standard deviation across the three channels."""
    require_rgb(image)
    mean = image.mean(axis=2, dtype=np.float32)
    dev = image - mean[..., None]
    return np.sqrt(np.mean(dev * dev, axis=2, dtype=np.float32))


def well_exposedness_measure(image: np.ndarray) -> np.ndarray:
    """Product over channels of a Gaussian (sigma 0.2) around mid-gray 0.5."""
    require_rgb(image)
    dev = image - np.float32(0.5)
    g = np.exp(-(dev * dev) / np.float32(2.0 * 0.2 * 0.2))
    return (g[..., 0] * g[..., 1]) * g[..., 2]


def _pow_measure(m: np.ndarray, exponent: float) -> np.ndarray:
    if exponent == 1.0:
        return m
    if exponent == 0.0:
        return np.ones_like(m)
    return np.power(m, np.float32(exponent))


def fusion_weights(exposures, exponents: QualityExponents = QualityExponents()) -> np.ndarray:
    """Normalized per-exposure weight maps, shape (N, H, W), summing to 1.

    w_k = c_k^uc * s_k^us * e_k^ue, then normalized with a small additive
    guard so degenerate pixels get uniform weights.
    """
    exposures = list(exposures)
    if not exposures:
        raise EmptySequenceError("need at least one exposure")
    shape = exposures[0].shape
    for k, e in enumerate(exposures):
        if e.shape != shape:
            raise DimensionMismatchError(
                f"exposure {k} has shape {e.shape}, expected {shape}"
            )
    maps = []
    for e in exposures:
        w = _pow_measure(contrast_measure(e), exponents.contrast)
        w = w * _pow_measure(saturation_measure(e), exponents.saturation)
        w = w * _pow_measure(well_exposedness_measure(e), exponents.exposedness)
        maps.append(w + _DELTA)
    stack = np.stack(maps)
    stack /= stack.sum(axis=0)
    return stack


def _blur(a: np.ndarray, kernel: np.ndarray) -> np.ndarray:
    out = ndimage.correlate1d(a, kernel, axis=0, mode="mirror")
    return ndimage.correlate1d(out, kernel, axis=1, mode="mirror")


def _downsample(a: np.ndarray) -> np.ndarray:
    return np.ascontiguousarray(_blur(a, _KERNEL5)[::2, ::2])


def _upsample(a: np.ndarray, target_shape) -> np.ndarray:
    h, w = a.shape[:2]
    up = np.zeros((2 * h, 2 * w) + a.shape[2:], dtype=a.dtype)
    up[::2, ::2] = a
    # zero insertion leaves 1/4 of the mass, so the blur gains 2 per axis
    up = _blur(up, _KERNEL5 * np.float32(2.0))
    return up[: target_shape[0], : target_shape[1]]


def _check_levels(shape, levels: int) -> None:
    if levels < 1:
        raise InvalidParamsError(f"levels must be >= 1, got {levels}")
    if 2 ** (levels - 1) > min(shape[0], shape[1]):
        raise TooManyLevelsError(
            f"{levels} levels need min dimension >= {2 ** (levels - 1)}, "
            f"got {shape[0]}x{shape[1]}"
        )


def gaussian_pyramid(image: np.ndarray, levels: int) -> list:
    """Blur-and-halve stack; level 0 is the input, level l is ceil(size/2^l)."""
    _check_levels(image.shape, levels)
    pyr = [image]
    for _ in range(levels - 1):
        pyr.append(_downsample(pyr[-1]))
    return pyr


def laplacian_pyramid(image: np.ndarray, levels: int) -> list:
    """Band-pass stack: L_l = G_l - upsample(G_{l+1}); last level is G's.

    collapse_pyramid reconstructs the input to float32 rounding.
    """
    gauss = gaussian_pyramid(image, levels)
    pyr = [
        gauss[l] - _upsample(gauss[l + 1], gauss[l].shape)
        for l in range(levels - 1)
    ]
    pyr.append(gauss[-1])
    return pyr


def collapse_pyramid(levels: list) -> np.ndarray:
    """Inverse of laplacian_pyramid."""
    out = levels[-1]
    for band in levels[-2::-1]:
        out = band + _upsample(out, band.shape)
    return out


def fuse(exposures, weights: np.ndarray, levels: int) -> np.ndarray:
    """Blend exposures per pyramid level under the given weight maps.

    The per-level sum is accumulated in float64 so exposure order cannot
    perturb the float32 result.
    """
    exposures = list(exposures)
    if not exposures:
        raise EmptySequenceError("need at least one exposure")
    if len(weights) != len(exposures):
        raise DimensionMismatchError(
            f"{len(weights)} weight maps for {len(exposures)} exposures"
        )
    shape = exposures[0].shape
    for k, e in enumerate(exposures):
        if e.shape != shape:
            raise DimensionMismatchError(
                f"exposure {k} has shape {e.shape}, expected {shape}"
            )
        if weights[k].shape != shape[:2]:
            raise DimensionMismatchError(
                f"weight map {k} has shape {weights[k].shape}, expected {shape[:2]}"
            )
    _check_levels(shape, levels)

    weight_pyrs = [gaussian_pyramid(w, levels) for w in weights]
    image_pyrs = [laplacian_pyramid(e, levels) for e in exposures]
    blended = []
    for l in range(levels):
        acc = np.zeros(image_pyrs[0][l].shape, dtype=np.float64)
        for k in range(len(exposures)):
            acc += weight_pyrs[k][l][..., None].astype(np.float64) * image_pyrs[k][l]
        blended.append(acc.astype(np.float32))
    out = collapse_pyramid(blended)
    return np.clip(out, 0.0, 1.0, out=out)
