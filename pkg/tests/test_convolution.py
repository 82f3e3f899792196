import itertools

import numpy as np
import pytest

from copath.convolution import (
    MAX_FAST_DIM,
    MODULUS,
    ROOT4,
    z4_inverse,
    z4_product,
    z4_product_fast,
    z4_product_naive,
    z4_transform,
    zero_table,
)


def triple_loop(f, g):
    dim = f.ndim
    out = np.zeros_like(f, dtype=np.int64)
    cells = list(itertools.product(range(4), repeat=dim))
    for t1 in cells:
        for t2 in cells:
            t = tuple((x + y) % 4 for x, y in zip(t1, t2))
            out[t] += int(f[t1]) * int(g[t2])
    return out


def random_bits(rng, dim, density=0.5):
    return (rng.random((4,) * dim) < density).astype(np.int64)


def test_field_has_fourth_root():
    assert (MODULUS - 1) % 4 == 0
    assert pow(ROOT4, 4, MODULUS) == 1 and pow(ROOT4, 2, MODULUS) == MODULUS - 1
    assert 4 ** MAX_FAST_DIM < MODULUS


def test_scalar_product():
    assert z4_product_naive(np.array(3), np.array(5)) == 15


def test_single_pair_wraps():
    f, g = zero_table(1), zero_table(1)
    f[1], g[3] = 1, 1
    expected = zero_table(1)
    expected[0] = 1
    assert np.array_equal(z4_product_naive(f, g), expected)
    assert np.array_equal(z4_product_fast(f, g), expected)


def test_naive_matches_triple_loop():
    rng = np.random.default_rng(0)
    for dim in (1, 2, 3):
        for _ in range(10):
            f, g = random_bits(rng, dim), random_bits(rng, dim)
            assert np.array_equal(z4_product_naive(f, g), triple_loop(f, g))


def test_naive_with_integer_entries():
    rng = np.random.default_rng(1)
    f = rng.integers(0, 5, (4, 4))
    g = rng.integers(0, 5, (4, 4))
    assert np.array_equal(z4_product_naive(f, g), triple_loop(f, g))


def test_fast_matches_naive_dim5():
    rng = np.random.default_rng(2)
    for _ in range(200):
        f, g = random_bits(rng, 5), random_bits(rng, 5)
        assert np.array_equal(z4_product_fast(f, g), z4_product_naive(f, g) & 1)


def test_zero_annihilates():
    rng = np.random.default_rng(3)
    g = random_bits(rng, 4)
    assert not z4_product_fast(zero_table(4), g).any()
    assert not z4_product(zero_table(2), random_bits(rng, 2)).any()


def test_commutative_and_associative():
    rng = np.random.default_rng(4)
    for dim in (2, 4):
        for _ in range(30):
            f, g, h = (random_bits(rng, dim) for _ in range(3))
            assert np.array_equal(z4_product_fast(f, g), z4_product_fast(g, f))
            left = z4_product_fast(z4_product_fast(f, g), h)
            right = z4_product_fast(f, z4_product_fast(g, h))
            assert np.array_equal(left, right)


def test_transform_roundtrip():
    rng = np.random.default_rng(5)
    for dim in range(0, 7):
        f = rng.integers(0, MODULUS, (4,) * dim)
        assert np.array_equal(z4_inverse(z4_transform(f)), f)


def test_dispatch_agrees():
    rng = np.random.default_rng(6)
    for dim in range(0, 6):
        f, g = random_bits(rng, dim), random_bits(rng, dim)
        expected = z4_product_naive(f, g) & 1
        assert np.array_equal(z4_product(f, g), expected)
        assert np.array_equal(z4_product(f, g, cutoff=-1), expected)


def test_density_extremes():
    ones = np.ones((4,) * 6, dtype=np.int64)
    # every cell receives 4**6 contributions: even
    assert not z4_product_fast(ones, ones).any()
    assert not z4_product_fast(ones, 3 * ones).any()


def test_shape_errors():
    with pytest.raises(ValueError):
        z4_product_fast(zero_table(2), zero_table(3))
    with pytest.raises(ValueError):
        z4_product_naive(np.zeros((3, 3)), np.zeros((3, 3)))
    with pytest.raises(ValueError):
        big = np.broadcast_to(np.uint8(0), (4,) * (MAX_FAST_DIM + 1))
        z4_product_fast(big, big)
