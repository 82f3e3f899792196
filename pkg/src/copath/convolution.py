"""Coordinate-wise cyclic (mod 4) convolution of functions on Z_4^B.

Tables are numpy arrays of shape ``(4,) * |B|``; entry ``t`` holds the value
at the vector ``t``. The fast product works in the prime field of
``MODULUS``, which contains a primitive 4th root of unity, so a length-4
DFT along every axis diagonalises the product.
"""

from __future__ import annotations

import numpy as np

MODULUS = 998_244_353  # 119 * 2**23 + 1, so 4 | p - 1
ROOT4 = pow(3, (MODULUS - 1) // 4, MODULUS)
# Counts are bounded by 4**|B| and must stay below the modulus to be recovered exactly.
MAX_FAST_DIM = 14
NAIVE_CUTOFF = 3

_FWD = np.array([[pow(ROOT4, j * k, MODULUS) for j in range(4)] for k in range(4)], dtype=np.int64)
_ROOT4_INV = pow(ROOT4, MODULUS - 2, MODULUS)
_INV = np.array([[pow(_ROOT4_INV, j * k, MODULUS) for j in range(4)] for k in range(4)], dtype=np.int64)


def _check_pair(f: np.ndarray, g: np.ndarray) -> int:
    if f.shape != g.shape:
        raise ValueError(f"index sets differ: {f.shape} vs {g.shape}")
    if any(d != 4 for d in f.shape):
        raise ValueError(f"expected shape (4,)*|B|, got {f.shape}")
    return f.ndim


def zero_table(dim: int, dtype=np.int64) -> np.ndarray:
    return np.zeros((4,) * dim, dtype=dtype)


def z4_product_naive(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Exact integer product: ``out[t] = sum_{t1 + t2 = t} f[t1] g[t2]``."""
    dim = _check_pair(f, g)
    f = np.asarray(f, dtype=np.int64)
    g = np.asarray(g, dtype=np.int64)
    if dim == 0:
        return f * g
    out = np.zeros_like(g)
    axes = tuple(range(dim))
    for t1 in zip(*np.nonzero(f)):
        # shifting g by t1 along every axis realises t2 = t - t1 (mod 4)
        out += f[t1] * np.roll(g, shift=t1, axis=axes)
    return out


def _apply_axiswise(arr: np.ndarray, mat: np.ndarray, batch: int = 0) -> np.ndarray:
    for axis in range(batch, arr.ndim):
        moved = np.moveaxis(arr, axis, 0)
        moved = np.tensordot(mat, moved, axes=(1, 0)) % MODULUS
        arr = np.moveaxis(moved, 0, axis)
    return arr


def z4_transform(f: np.ndarray, batch: int = 0) -> np.ndarray:
    """Forward length-4 DFT along every axis, modulo ``MODULUS``.

    The first ``batch`` axes index independent tables and are left alone.
    """
    return _apply_axiswise(np.asarray(f, dtype=np.int64) % MODULUS, _FWD, batch)


def z4_inverse(fhat: np.ndarray, batch: int = 0) -> np.ndarray:
    fhat = np.asarray(fhat, dtype=np.int64)
    out = _apply_axiswise(fhat, _INV, batch)
    scale = pow(pow(4, fhat.ndim - batch, MODULUS), MODULUS - 2, MODULUS)
    return out * scale % MODULUS


def z4_product_fast(f: np.ndarray, g: np.ndarray) -> np.ndarray:
    """Parity of the Z_4 product via the modular transform.

    Inputs are reduced to {0, 1} first, so the exact count at every vector is
    at most 4**|B| < MODULUS and the parity read off the field element is the
    parity of the integer product.
    """
    dim = _check_pair(f, g)
    if dim > MAX_FAST_DIM:
        raise ValueError(f"|B| = {dim} exceeds {MAX_FAST_DIM}; counts would wrap modulo {MODULUS}")
    fhat = z4_transform(np.asarray(f) & 1)
    ghat = z4_transform(np.asarray(g) & 1)
    return (z4_inverse(fhat * ghat % MODULUS) & 1).astype(np.uint8)


def z4_product(f: np.ndarray, g: np.ndarray, cutoff: int = NAIVE_CUTOFF) -> np.ndarray:
    """Parity product, naive for small index sets and transform-based otherwise."""
    dim = _check_pair(f, g)
    if dim <= cutoff:
        return (z4_product_naive(np.asarray(f) & 1, np.asarray(g) & 1) & 1).astype(np.uint8)
    return z4_product_fast(f, g)
