"""Chromaticity and its intensity-adaptive variant.

Plain chromaticity divides each pixel by its intensity; the adaptive form
adds alpha * (y^2 + h) to the divisor, where y = 1 - In is the intensity
gap, then applies a gamma exponent per channel. Dark pixels (large y) get
a larger divisor, which suppresses their amplified noise; alpha steers how
strongly, so it behaves like an inverse exposure control.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .imgcore import InvalidParamsError, require_rgb

# division guard; only reachable when alpha == 0 (else divisor >= alpha * h)
_EPS = 1e-6


@dataclass(frozen=True)
class AcParams:
    """Adaptive-chromaticity knobs.

    alpha >= 0 controls the darkening strength (useful range 0.1..3.5),
    gamma in (0, 1.5] is the output exponent (useful range 0.6..1.0),
    h > 0 keeps the divisor positive at pure-black pixels.
    """

    alpha: float
    gamma: float
    h: float = 0.01

    def __post_init__(self):
        if not self.alpha >= 0:
            raise InvalidParamsError(f"alpha must be >= 0, got {self.alpha}")
        if not 0 < self.gamma <= 1.5:
            raise InvalidParamsError(f"gamma must be in (0, 1.5], got {self.gamma}")
        if not self.h > 0:
            raise InvalidParamsError(f"h must be > 0, got {self.h}")


def _scaled_ratio(image: np.ndarray, alpha: float, gamma: float, h: float) -> np.ndarray:
    # float64 internally: the gamma power chain would otherwise lose ~1e-6
    img = image.astype(np.float64)
    r, g, b = img[..., 0], img[..., 1], img[..., 2]
    intensity = (0.299 * r + 0.587 * g) + 0.114 * b
    gap = 1.0 - intensity
    divisor = intensity + alpha * (gap * gap + h)
    np.maximum(divisor, _EPS, out=divisor)
    out = img / divisor[..., None]
    if gamma != 1.0:
        np.power(out, gamma, out=out)
    np.clip(out, 0.0, 1.0, out=out)
    return out.astype(np.float32)


def chromaticity(image: np.ndarray) -> np.ndarray:
    """Per-channel ratio to intensity, C = I / max(In, 1e-6), clamped to [0, 1]."""
    require_rgb(image)
    return _scaled_ratio(image, 0.0, 1.0, 0.01)


def adaptive_chromaticity(image: np.ndarray, params: AcParams) -> np.ndarray:
    """Chromaticity with a gap-adaptive divisor and gamma scaling.

    Per pixel and channel: A = clamp((I / (In + alpha * (y^2 + h)))^gamma, 0, 1)
    with y = 1 - In. With alpha = 0 and gamma = 1 this reduces exactly to
    chromaticity(); with large alpha everything tends to black.
    """
    require_rgb(image)
    return _scaled_ratio(image, params.alpha, params.gamma, params.h)
