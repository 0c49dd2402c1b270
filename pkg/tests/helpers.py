"""Independent reference implementations used to pin expected values.

Everything here is deliberately brute force: scalar arbitrary-precision
math, explicit python loops, direct convolutions. These are the oracles
the fast implementations are checked against; keep them slow and obvious.
"""

from __future__ import annotations

import math

import numpy as np
from mpmath import mp, mpf

from lumenlift.imgcore import luma


def ac_scalar(rgb, alpha, gamma, h=0.01, eps=1e-6, dps=40):
    """Arbitrary-precision per-pixel adaptive chromaticity.

    Evaluates ratio = I / max(In + alpha*((1-In)^2 + h), eps) and
    clamp(ratio^gamma, 0, 1) channel-wise. Decimal coefficients are taken
    exactly; binary float inputs are converted exactly.
    """
    mp.dps = dps
    r, g, b = (mpf(float(v)) for v in rgb)
    intensity = mpf("0.299") * r + mpf("0.587") * g + mpf("0.114") * b
    gap = 1 - intensity
    denom = intensity + mpf(float(alpha)) * (gap * gap + mpf(float(h)))
    if denom < mpf(float(eps)):
        denom = mpf(float(eps))
    out = []
    for v in (r, g, b):
        ratio = v / denom
        powered = ratio ** mpf(float(gamma)) if ratio > 0 else mpf(0)
        out.append(float(min(max(powered, mpf(0)), mpf(1))))
    return out


def nlm_oracle(image, params):
    """Pixel-major non-local means, float64, no shortcuts."""
    img = np.asarray(image, dtype=np.float64)
    height, width = img.shape[:2]
    patch, search = params.patch_radius, params.search_radius
    pad = patch + search
    lum = np.pad(luma(np.asarray(image, np.float32)).astype(np.float64),
                 pad, mode="reflect")
    planes = np.pad(img, ((pad, pad), (pad, pad), (0, 0)), mode="reflect")
    n_patch = float((2 * patch + 1) ** 2)
    sigma2 = 2.0 * (0.02 * params.th) ** 2
    h2 = (0.04 * params.th * params.lv) ** 2
    out = np.zeros_like(img)
    for i in range(height):
        for j in range(width):
            pi, pj = i + pad, j + pad
            ref = lum[pi - patch:pi + patch + 1, pj - patch:pj + patch + 1]
            wsum = 0.0
            acc = np.zeros(3)
            for dy in range(-search, search + 1):
                for dx in range(-search, search + 1):
                    qi, qj = pi + dy, pj + dx
                    cand = lum[qi - patch:qi + patch + 1,
                               qj - patch:qj + patch + 1]
                    d2 = float(((ref - cand) ** 2).sum()) / n_patch
                    w = math.exp(-max(d2 - sigma2, 0.0) / h2)
                    wsum += w
                    acc += w * planes[qi, qj]
            out[i, j] = acc / wsum
    return out


def _reflect(idx: int, n: int) -> int:
    # reflect-101 for a single bounce; callers keep |overhang| < n
    if idx < 0:
        return -idx
    if idx >= n:
        return 2 * n - 2 - idx
    return idx


def blur5_oracle(plane):
    """Direct separable (1,4,6,4,1)/16 blur with reflected borders."""
    k = np.array([1, 4, 6, 4, 1], dtype=np.float64) / 16.0
    src = np.asarray(plane, dtype=np.float64)
    h, w = src.shape
    tmp = np.zeros((h, w))
    for i in range(h):
        for j in range(w):
            tmp[i, j] = sum(k[t + 2] * src[_reflect(i + t, h), j]
                            for t in range(-2, 3))
    out = np.zeros((h, w))
    for i in range(h):
        for j in range(w):
            out[i, j] = sum(k[t + 2] * tmp[i, _reflect(j + t, w)]
                            for t in range(-2, 3))
    return out


def downsample_oracle(plane):
    return blur5_oracle(plane)[::2, ::2]


def loe_brute(original, enhanced):
    """Quadratic pairwise order-flip count; no downsampling."""
    la = np.asarray(original).max(axis=2).ravel()
    lb = np.asarray(enhanced).max(axis=2).ravel()
    m = la.size
    total = 0
    for x in range(m):
        for y in range(m):
            total += int((la[x] >= la[y]) != (lb[x] >= lb[y]))
    return total / m


def random_monotone_map(rng):
    """Strictly increasing piecewise-linear map of [0,1] onto [0,1]."""
    xs = np.concatenate(([0.0], np.sort(rng.random(5)), [1.0]))
    ys = np.cumsum(0.1 + rng.random(xs.size))
    ys = (ys - ys[0]) / (ys[-1] - ys[0])
    return lambda v: np.interp(v, xs, ys).astype(np.float32)


def rand_image(rng, height, width, lo=0.0, hi=1.0):
    span = np.float32(hi - lo)
    return (rng.random((height, width, 3), dtype=np.float32) * span
            + np.float32(lo)).astype(np.float32)
