# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled inner loops for non-local-means denoising.

Mirrors _kernels_np operation for operation (same arithmetic, same float32
order) so either backend yields the same pixels to within a couple of ulps.
The weight argument is written negated; the caller exponentiates in bulk,
which is far faster than per-pixel exp on one core.
"""

import numpy as np

cimport numpy as cnp
from libc.math cimport fmaxf


def patch_dist_arg(cnp.float32_t[:, ::1] padded_luma, int patch, int search,
                   int dy, int dx, int rect_h, int rect_w, int col0,
                   float sigma2, float inv_h2,
                   cnp.float32_t[:, ::1] diff2, cnp.float32_t[:, ::1] colsum,
                   cnp.float32_t[:, ::1] arg):
    """Negated NLM weight argument for offset (dy, dx) over an image-aligned
    rectangle of rect_h rows starting at image row 0 and rect_w columns
    starting at image column col0."""
    cdef int pad = search + patch
    cdef int side = 2 * patch + 1
    cdef float inv_patch = 1.0 / (side * side)
    cdef int nrow = rect_h + 2 * patch
    cdef int ncol = rect_w + 2 * patch
    cdef int t, i, j, u, pi, pj
    cdef float d, total

    for t in range(nrow):
        pi = pad - patch + t
        pj = pad + col0 - patch
        for j in range(ncol):
            d = padded_luma[pi, pj + j] - padded_luma[pi + dy, pj + j + dx]
            diff2[t, j] = d * d
    for i in range(rect_h):
        for j in range(ncol):
            colsum[i, j] = diff2[i, j] + diff2[i + 1, j]
        for u in range(2, side):
            for j in range(ncol):
                colsum[i, j] = colsum[i, j] + diff2[i + u, j]
    if patch == 1:
        # 3x3 patches: unrolled row sum keeps this loop vectorizable
        for i in range(rect_h):
            for j in range(rect_w):
                total = (colsum[i, j] + colsum[i, j + 1]) + colsum[i, j + 2]
                arg[i, j] = -(fmaxf(total * inv_patch - sigma2, 0.0) * inv_h2)
    else:
        for i in range(rect_h):
            for j in range(rect_w):
                total = colsum[i, j]
                for u in range(1, side):
                    total = total + colsum[i, j + u]
                arg[i, j] = -(fmaxf(total * inv_patch - sigma2, 0.0) * inv_h2)


def accumulate_pair(cnp.float32_t[:, ::1] plane0, cnp.float32_t[:, ::1] plane1,
                    cnp.float32_t[:, ::1] plane2, int height, int width,
                    int patch, int search, int dy, int dx, int col0,
                    cnp.float32_t[:, ::1] w, cnp.float32_t[:, ::1] den,
                    cnp.float32_t[:, ::1] num0, cnp.float32_t[:, ::1] num1,
                    cnp.float32_t[:, ::1] num2):
    """Add offset (dy, dx) and its mirror (-dy, -dx) to the running sums.

    Patch distances are symmetric, so the mirrored offset's weight at pixel
    p is this offset's weight at p + (dy, dx); both contributions read the
    same weight rectangle, just shifted.
    """
    cdef int pad = search + patch
    cdef int ady = -dy
    cdef int i, j, qi, mi
    cdef float wd, wm

    for i in range(height):
        qi = pad + i + dy
        mi = pad + i - dy
        for j in range(width):
            wd = w[i, j - col0]
            wm = w[i + ady, j - col0 - dx]
            den[i, j] = (den[i, j] + wd) + wm
            num0[i, j] = (num0[i, j] + wd * plane0[qi, pad + j + dx]) + wm * plane0[mi, pad + j - dx]
            num1[i, j] = (num1[i, j] + wd * plane1[qi, pad + j + dx]) + wm * plane1[mi, pad + j - dx]
            num2[i, j] = (num2[i, j] + wd * plane2[qi, pad + j + dx]) + wm * plane2[mi, pad + j - dx]
