"""Numba-jitted hot kernels. Same contracts as numpy_impl.

fastmath stays off: median fusion relies on IEEE NaN semantics and the
refinement step must be bit-stable run to run.
"""

import numpy as np
from numba import njit


@njit(cache=True)
def convolve2d(img, kernel):
    h, w = img.shape
    k = kernel.shape[0]
    c = k // 2
    out = np.empty((h, w))
    for y in range(h):
        for x in range(w):
            acc = 0.0
            for i in range(k):
                sy = y - (i - c)
                if sy < 0:
                    sy = 0
                elif sy >= h:
                    sy = h - 1
                for j in range(k):
                    sx = x - (j - c)
                    if sx < 0:
                        sx = 0
                    elif sx >= w:
                        sx = w - 1
                    acc += kernel[i, j] * img[sy, sx]
            out[y, x] = acc
    return out


@njit(cache=True)
def translate_nearest(img, dx, dy):
    h, w = img.shape
    out = np.empty((h, w))
    for y in range(h):
        sy = int(np.floor(y - dy + 0.5))
        if sy < 0:
            sy = 0
        elif sy >= h:
            sy = h - 1
        for x in range(w):
            sx = int(np.floor(x - dx + 0.5))
            if sx < 0:
                sx = 0
            elif sx >= w:
                sx = w - 1
            out[y, x] = img[sy, sx]
    return out


@njit(cache=True)
def translate_bilinear(img, dx, dy):
    h, w = img.shape
    out = np.empty((h, w))
    for y in range(h):
        ys = y - dy
        y0 = int(np.floor(ys))
        fy = ys - y0
        y0c = min(max(y0, 0), h - 1)
        y1c = min(max(y0 + 1, 0), h - 1)
        for x in range(w):
            xs = x - dx
            x0 = int(np.floor(xs))
            fx = xs - x0
            x0c = min(max(x0, 0), w - 1)
            x1c = min(max(x0 + 1, 0), w - 1)
            top = img[y0c, x0c] * (1.0 - fx) + img[y0c, x1c] * fx
            bot = img[y1c, x0c] * (1.0 - fx) + img[y1c, x1c] * fx
            out[y, x] = top * (1.0 - fy) + bot * fy
    return out


@njit(cache=True)
def btv_gradient(img, radius, alpha):
    h, w = img.shape
    grad = np.zeros((h, w))
    sgn = np.empty((h, w))
    for m in range(-radius, radius + 1):
        for l in range(-radius, radius + 1):
            if l == 0 and m == 0:
                continue
            wgt = alpha ** (abs(l) + abs(m))
            for y in range(h):
                sy = min(max(y - m, 0), h - 1)
                for x in range(w):
                    sx = min(max(x - l, 0), w - 1)
                    d = img[y, x] - img[sy, sx]
                    if d > 0.0:
                        sgn[y, x] = 1.0
                    elif d < 0.0:
                        sgn[y, x] = -1.0
                    else:
                        sgn[y, x] = 0.0
            for y in range(h):
                sy = min(max(y + m, 0), h - 1)
                for x in range(w):
                    sx = min(max(x + l, 0), w - 1)
                    grad[y, x] += wgt * (sgn[y, x] - sgn[sy, sx])
    return grad


@njit(cache=True)
def median_deposit(frames, ox, oy, r, height, width):
    n, h, w = frames.shape
    fused = np.empty((height, width))
    counts = np.zeros((height, width), dtype=np.int64)
    buf = np.empty(n)
    for yy in range(height):
        for xx in range(width):
            k = 0
            for i in range(n):
                tx = xx - ox[i]
                ty = yy - oy[i]
                if tx < 0 or ty < 0 or tx % r != 0 or ty % r != 0:
                    continue
                x = tx // r
                y = ty // r
                if x >= w or y >= h:
                    continue
                buf[k] = frames[i, y, x]
                k += 1
            counts[yy, xx] = k
            if k == 0:
                fused[yy, xx] = np.nan
                continue
            # insertion sort over at most n deposits
            for a in range(1, k):
                v = buf[a]
                b = a - 1
                while b >= 0 and buf[b] > v:
                    buf[b + 1] = buf[b]
                    b -= 1
                buf[b + 1] = v
            if k % 2 == 1:
                fused[yy, xx] = buf[k // 2]
            else:
                fused[yy, xx] = 0.5 * (buf[k // 2 - 1] + buf[k // 2])
    return fused, counts


@njit(cache=True)
def fill_holes(fused, counts):
    h, w = fused.shape
    out = np.empty((h, w))
    total = 0.0
    npop = 0
    for y in range(h):
        for x in range(w):
            if counts[y, x] > 0:
                out[y, x] = fused[y, x]
                total += fused[y, x]
                npop += 1
            else:
                out[y, x] = 0.0
    if npop == h * w:
        return out
    mean = total / npop if npop > 0 else 0.0
    filled = out.copy()
    for y in range(h):
        for x in range(w):
            if counts[y, x] > 0:
                continue
            # nearest populated pixel in each cardinal direction
            dl = -1
            for x2 in range(x - 1, -1, -1):
                if counts[y, x2] > 0:
                    dl = x - x2
                    break
            dr = -1
            for x2 in range(x + 1, w):
                if counts[y, x2] > 0:
                    dr = x2 - x
                    break
            du = -1
            for y2 in range(y - 1, -1, -1):
                if counts[y2, x] > 0:
                    du = y - y2
                    break
            dd = -1
            for y2 in range(y + 1, h):
                if counts[y2, x] > 0:
                    dd = y2 - y
                    break
            vsum = 0.0
            wsum = 0.0
            if dl > 0 and dr > 0:
                vsum += (out[y, x - dl] * dr + out[y, x + dr] * dl) / (dl + dr)
                wsum += 1.0
            elif dl > 0:
                vsum += out[y, x - dl]
                wsum += 1.0
            elif dr > 0:
                vsum += out[y, x + dr]
                wsum += 1.0
            if du > 0 and dd > 0:
                vsum += (out[y - du, x] * dd + out[y + dd, x] * du) / (du + dd)
                wsum += 1.0
            elif du > 0:
                vsum += out[y - du, x]
                wsum += 1.0
            elif dd > 0:
                vsum += out[y + dd, x]
                wsum += 1.0
            filled[y, x] = vsum / wsum if wsum > 0.0 else mean
    return filled


@njit(cache=True)
def local_std(img, win):
    h, w = img.shape
    p = win // 2
    out = np.empty((h, w))
    inv = 1.0 / (win * win)
    for y in range(h):
        for x in range(w):
            s = 0.0
            s2 = 0.0
            for i in range(-p, p + 1):
                sy = min(max(y + i, 0), h - 1)
                for j in range(-p, p + 1):
                    sx = min(max(x + j, 0), w - 1)
                    v = img[sy, sx]
                    s += v
                    s2 += v * v
            m = s * inv
            var = s2 * inv - m * m
            out[y, x] = np.sqrt(var) if var > 0.0 else 0.0
    return out
