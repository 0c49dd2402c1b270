"""Low-light image and video enhancement.

Brightens dark photographs by fusing a sequence of virtual exposures
derived from a single input, then denoising the result. A fast
single-exposure variant serves interactive previews.
"""

from .chroma import AcParams, adaptive_chromaticity, chromaticity
from .denoise import NlmParams, active_backend, nlm_denoise
from .metrics import LoeConfig, flicker_index, loe, mean_luma
from .pipeline import PipelineConfig, dac, enhance, enhance_video, generate_ves

__version__ = "0.1.0"

__all__ = [
    "AcParams",
    "LoeConfig",
    "NlmParams",
    "PipelineConfig",
    "__version__",
    "active_backend",
    "adaptive_chromaticity",
    "chromaticity",
    "dac",
    "enhance",
    "enhance_video",
    "flicker_index",
    "generate_ves",
    "loe",
    "mean_luma",
    "nlm_denoise",
]
