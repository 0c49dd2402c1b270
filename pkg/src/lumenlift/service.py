"""HTTP API for the live-preview workflow.

Upload an image once, then request fast previews (downscaled, single
exposure) or full-resolution enhancements with varying parameters.
Sessions live in memory with LRU eviction; nothing persists.
"""

from __future__ import annotations

import argparse
import io
import os
import time
import uuid
from collections import OrderedDict
from dataclasses import dataclass, field
from threading import Lock

import numpy as np
from fastapi import FastAPI, HTTPException, Query, Request, Response
from PIL import Image as PilImage
from pydantic import BaseModel, Field, field_validator

from .denoise import NlmParams
from .fusion import TooManyLevelsError
from .imgcore import CorruptImageError, UnsupportedFormatError, decode_image, save_image
from .metrics import downsample_dims
from .pipeline import (
    ALPHA_LIMIT,
    ALPHA_RANGE,
    GAMMA_LIMIT,
    GAMMA_RANGE,
    PipelineConfig,
    dac,
    enhance,
)

DEFAULT_SESSION_CAP = 16
DEFAULT_UPLOAD_CAP = 32 * 1024 * 1024
PREVIEW_BOUND = 640

# Slider ranges for the UI; denoise bounds are interaction choices, the
# alpha/gamma bounds are the recommended operating ranges.
PARAM_RANGES = {
    "alpha": list(ALPHA_RANGE),
    "gamma": list(GAMMA_RANGE),
    "th": [0.0, 2.0],
    "lv": [0.5, 3.0],
}


@dataclass
class SessionImage:
    """One uploaded image plus its downscaled preview copy."""

    id: str
    image: np.ndarray
    preview_scale: np.ndarray
    created_at: float = field(default_factory=time.time)


class SessionStore:
    """Thread-safe LRU map of session id to SessionImage."""

    def __init__(self, cap: int = DEFAULT_SESSION_CAP):
        self._cap = cap
        self._lock = Lock()
        self._items: "OrderedDict[str, SessionImage]" = OrderedDict()

    def put(self, session: SessionImage) -> None:
        with self._lock:
            self._items[session.id] = session
            while len(self._items) > self._cap:
                self._items.popitem(last=False)

    def get(self, image_id: str):
        with self._lock:
            session = self._items.get(image_id)
            if session is not None:
                self._items.move_to_end(image_id)
            return session


class EnhanceRequest(BaseModel):
    """Full-pipeline configuration; defaults mirror the CLI flags."""

    alphas: list[float] = Field(default=[0.15, 0.6, 0.85], min_length=1)
    gamma: float = Field(default=0.6, gt=0, le=GAMMA_LIMIT)
    levels: int = Field(default=4, ge=1)
    th: float = Field(default=0.7, ge=0)
    lv: float = Field(default=1.5, gt=0)
    denoise: bool = True

    @field_validator("alphas")
    @classmethod
    def _alphas_in_range(cls, value):
        for v in value:
            if not 0 <= v <= ALPHA_LIMIT:
                raise ValueError(f"alpha {v} outside [0, {ALPHA_LIMIT}]")
        return value

    def to_config(self) -> PipelineConfig:
        return PipelineConfig(
            alphas=tuple(self.alphas),
            gamma=self.gamma,
            pyramid_levels=self.levels,
            denoise=NlmParams(th=self.th, lv=self.lv),
            denoise_enabled=self.denoise,
        )


def _preview_copy(image: np.ndarray, bound: int = PREVIEW_BOUND) -> np.ndarray:
    h, w = image.shape[:2]
    nh, nw = downsample_dims(h, w, bound)
    if (nh, nw) == (h, w):
        return image
    planes = [
        np.asarray(
            PilImage.fromarray(image[..., c], mode="F").resize(
                (nw, nh), PilImage.Resampling.BOX
            )
        )
        for c in range(3)
    ]
    return np.ascontiguousarray(np.stack(planes, axis=-1), dtype=np.float32)


def _png_bytes(image: np.ndarray) -> bytes:
    # Same encoder as the CLI so identical pixels give identical bytes.
    buf = io.BytesIO()
    save_image(image, buf)
    return buf.getvalue()


def create_app(
    session_cap: int = DEFAULT_SESSION_CAP,
    static_dir: str | None = None,
    upload_cap: int = DEFAULT_UPLOAD_CAP,
) -> FastAPI:
    app = FastAPI(title="lumenlift")
    store = SessionStore(session_cap)

    def _session_or_404(image_id: str) -> SessionImage:
        session = store.get(image_id)
        if session is None:
            raise HTTPException(status_code=404, detail=f"unknown image id {image_id!r}")
        return session

    @app.post("/api/images", status_code=201)
    async def upload_image(request: Request):
        body = await request.body()
        if len(body) > upload_cap:
            raise HTTPException(status_code=413, detail="image exceeds upload size cap")
        try:
            image = decode_image(io.BytesIO(body))
        except (UnsupportedFormatError, CorruptImageError) as exc:
            raise HTTPException(status_code=400, detail=str(exc))
        session = SessionImage(
            id=uuid.uuid4().hex,
            image=image,
            preview_scale=_preview_copy(image),
        )
        store.put(session)
        return {
            "id": session.id,
            "width": image.shape[1],
            "height": image.shape[0],
        }

    @app.get("/api/images/{image_id}/preview")
    def preview_image(
        image_id: str,
        alpha: float = Query(0.25, ge=0, le=ALPHA_LIMIT),
        gamma: float = Query(0.6, gt=0, le=GAMMA_LIMIT),
        th: float = Query(0.7, ge=0),
        lv: float = Query(1.5, gt=0),
    ):
        session = _session_or_404(image_id)
        start = time.perf_counter()
        out = dac(session.preview_scale, alpha, gamma, NlmParams(th=th, lv=lv))
        elapsed_ms = (time.perf_counter() - start) * 1000.0
        return Response(
            content=_png_bytes(out),
            media_type="image/png",
            headers={"X-Elapsed-Ms": f"{elapsed_ms:.3f}"},
        )

    @app.post("/api/images/{image_id}/enhance")
    def enhance_image(image_id: str, config: EnhanceRequest):
        session = _session_or_404(image_id)
        try:
            out = enhance(session.image, config.to_config())
        except TooManyLevelsError as exc:
            raise HTTPException(
                status_code=422,
                detail=[{"loc": ["body", "levels"], "msg": str(exc)}],
            )
        return Response(content=_png_bytes(out), media_type="image/png")

    @app.get("/api/defaults")
    def defaults():
        return {
            "alphas": [0.15, 0.6, 0.85],
            "gamma": 0.6,
            "th": 0.7,
            "lv": 1.5,
            "levels": 4,
            "preview_alpha": 0.25,
            "ranges": PARAM_RANGES,
        }

    if static_dir is not None:
        from fastapi.staticfiles import StaticFiles

        app.mount("/", StaticFiles(directory=static_dir, html=True), name="static")

    return app


def main(argv=None) -> int:
    parser = argparse.ArgumentParser(
        prog="lumenlift-serve",
        description="Serve the enhancement API (and optionally the web UI)",
    )
    parser.add_argument("--host", default="127.0.0.1")
    parser.add_argument(
        "--port",
        type=int,
        default=int(os.environ.get("LUMENLIFT_PORT", "8080")),
    )
    parser.add_argument("--static-dir", default=None,
                        help="directory of built web UI assets to serve at /")
    parser.add_argument("--session-cap", type=int, default=DEFAULT_SESSION_CAP)
    args = parser.parse_args(argv)

    import uvicorn

    app = create_app(session_cap=args.session_cap, static_dir=args.static_dir)
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


if __name__ == "__main__":
    main()
