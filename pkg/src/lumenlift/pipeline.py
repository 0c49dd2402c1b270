"""End-to-end enhancement: virtual exposures, fusion, final denoise.

One low-light input is re-exposed at several alpha values (a virtual
exposure sequence), the exposures are fused under quality weights, and the
fused result is denoised once. The fast preview path (dac) skips fusion:
a single adaptive chromaticity followed by the denoiser.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass, field

import numpy as np

from .chroma import AcParams, adaptive_chromaticity
from .denoise import NlmParams, nlm_denoise
from .fusion import QualityExponents, fuse, fusion_weights
from .imgcore import (
    ChannelMismatchError,
    DimensionDriftError,
    EmptySequenceError,
    InvalidParamsError,
    require_rgb,
)

ALPHA_LIMIT = 3.5
ALPHA_RANGE = (0.1, 3.5)
GAMMA_LIMIT = 1.5
GAMMA_RANGE = (0.6, 1.0)


@dataclass(frozen=True)
class PipelineConfig:
    """Full-pipeline settings; defaults are the recommended operating point."""

    alphas: tuple = (0.15, 0.6, 0.85)
    gamma: float = 0.6
    h: float = 0.01
    pyramid_levels: int = 4
    exponents: QualityExponents = field(default_factory=QualityExponents)
    denoise: NlmParams = field(default_factory=NlmParams)
    denoise_enabled: bool = True

    def __post_init__(self):
        object.__setattr__(self, "alphas", tuple(float(a) for a in self.alphas))
        if len(self.alphas) < 1:
            raise InvalidParamsError("alphas must contain at least one value")
        for a in self.alphas:
            if not 0 <= a <= ALPHA_LIMIT:
                raise InvalidParamsError(f"alpha {a} outside [0, {ALPHA_LIMIT}]")
            if not ALPHA_RANGE[0] <= a <= ALPHA_RANGE[1]:
                warnings.warn(f"alpha {a} outside recommended {ALPHA_RANGE}",
                              stacklevel=3)
        if not 0 < self.gamma <= GAMMA_LIMIT:
            raise InvalidParamsError(f"gamma {self.gamma} outside (0, {GAMMA_LIMIT}]")
        if not GAMMA_RANGE[0] <= self.gamma <= GAMMA_RANGE[1]:
            warnings.warn(f"gamma {self.gamma} outside recommended {GAMMA_RANGE}",
                          stacklevel=3)
        if self.pyramid_levels < 1:
            raise InvalidParamsError("pyramid_levels must be >= 1")
        if not self.h > 0:
            raise InvalidParamsError("h must be > 0")


def generate_ves(image: np.ndarray, config: PipelineConfig) -> list:
    """Virtual exposure sequence: one adaptive chromaticity per alpha.

    All exposures share the config's gamma; ascending alpha gives
    descending brightness.
    """
    require_rgb(image)
    return [
        adaptive_chromaticity(image, AcParams(alpha, config.gamma, config.h))
        for alpha in config.alphas
    ]


def enhance(image: np.ndarray, config: PipelineConfig = PipelineConfig()) -> np.ndarray:
    """Full enhancement: exposures -> weights -> pyramid fusion -> denoise."""
    exposures = generate_ves(image, config)
    weights = fusion_weights(exposures, config.exponents)
    fused = fuse(exposures, weights, config.pyramid_levels)
    if config.denoise_enabled:
        return nlm_denoise(fused, config.denoise)
    return fused


def dac(image: np.ndarray, alpha: float, gamma: float,
        denoise: NlmParams = NlmParams()) -> np.ndarray:
    """Denoised adaptive chromaticity: the single-exposure preview path."""
    out = adaptive_chromaticity(image, AcParams(alpha, gamma))
    return nlm_denoise(out, denoise)


class VideoFrameError(RuntimeError):
    """A frame failed during video processing; message carries its index."""


def enhance_video(frame_source, config: PipelineConfig, frame_sink) -> int:
    """Apply enhance to every frame, in order, with one shared config.

    frame_source yields (H, W, 3) float32 frames; frame_sink is called with
    each enhanced frame in input order. Identical frames produce identical
    outputs, so static input cannot flicker. Returns the frame count.
    """
    count = 0
    dims = None
    for frame in frame_source:
        try:
            require_rgb(frame)
        except ChannelMismatchError as exc:
            raise VideoFrameError(f"frame {count}: {exc}") from exc
        if dims is None:
            dims = frame.shape[:2]
        elif frame.shape[:2] != dims:
            raise DimensionDriftError(
                f"frame {count} has shape {frame.shape[:2]}, expected {dims}"
            )
        try:
            out = enhance(frame, config)
        except Exception as exc:
            raise VideoFrameError(f"frame {count}: {exc}") from exc
        frame_sink(out)
        count += 1
    if count == 0:
        raise EmptySequenceError("frame source yielded no frames")
    return count
