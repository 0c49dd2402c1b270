"""Pure-numpy fallback for the compiled denoising loops.

Shifted views over the padded planes replace the explicit index arithmetic
of _kernels.pyx; every add and multiply happens in the same float32 order,
so the two backends agree to within FMA rounding (~1 ulp).
"""

from __future__ import annotations

import numpy as np


def patch_dist_arg(padded_luma, patch, search, dy, dx, rect_h, rect_w, col0,
                   sigma2, inv_h2, diff2, colsum, arg):
    """See _kernels.patch_dist_arg."""
    pad = search + patch
    side = 2 * patch + 1
    inv_patch = np.float32(1.0 / (side * side))
    nrow = rect_h + 2 * patch
    ncol = rect_w + 2 * patch
    r0 = pad - patch
    c0 = pad + col0 - patch

    a = padded_luma[r0:r0 + nrow, c0:c0 + ncol]
    b = padded_luma[r0 + dy:r0 + dy + nrow, c0 + dx:c0 + dx + ncol]
    d2 = diff2[:nrow, :ncol]
    np.subtract(a, b, out=d2)
    np.multiply(d2, d2, out=d2)

    cs = colsum[:rect_h, :ncol]
    np.add(d2[0:rect_h], d2[1:rect_h + 1], out=cs)
    for u in range(2, side):
        np.add(cs, d2[u:u + rect_h], out=cs)

    out = arg[:rect_h, :rect_w]
    np.add(cs[:, 0:rect_w], cs[:, 1:rect_w + 1], out=out)
    for u in range(2, side):
        np.add(out, cs[:, u:u + rect_w], out=out)
    np.multiply(out, inv_patch, out=out)
    np.subtract(out, np.float32(sigma2), out=out)
    np.maximum(out, np.float32(0.0), out=out)
    np.multiply(out, np.float32(-inv_h2), out=out)


def accumulate_pair(plane0, plane1, plane2, height, width, patch, search,
                    dy, dx, col0, w, den, num0, num1, num2):
    """See _kernels.accumulate_pair."""
    pad = search + patch
    ady = -dy
    wd = w[0:height, -col0:-col0 + width]
    wm = w[ady:ady + height, -col0 - dx:-col0 - dx + width]
    np.add(den, wd, out=den)
    np.add(den, wm, out=den)
    for plane, num in ((plane0, num0), (plane1, num1), (plane2, num2)):
        direct = plane[pad + dy:pad + dy + height, pad + dx:pad + dx + width]
        mirror = plane[pad - dy:pad - dy + height, pad - dx:pad - dx + width]
        num += wd * direct
        num += wm * mirror
