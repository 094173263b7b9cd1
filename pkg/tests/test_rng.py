import numpy as np
import pytest

from dfbench.rng import SeededRng


def test_equal_seeds_equal_million_draws():
    a = SeededRng(123456789)
    b = SeededRng(123456789)
    assert np.array_equal(a.random(1_000_000), b.random(1_000_000))


def test_different_seeds_differ():
    assert not np.array_equal(SeededRng(1).random(100), SeededRng(2).random(100))


def test_substreams_independent_of_order():
    # drawing from stream 3 must not depend on what other streams consumed
    first = SeededRng(9).substream(3).random(10)
    base = SeededRng(9)
    base.random(1000)
    second = base.substream(3).random(10)
    assert np.array_equal(first, second)


def test_uniforms_in_unit_interval():
    u = SeededRng(5).random(10_000)
    assert u.min() >= 0.0
    assert u.max() < 1.0
    assert abs(u.mean() - 0.5) < 0.02


def test_permutation_is_permutation():
    p = SeededRng(7).permutation(100)
    assert sorted(p.tolist()) == list(range(100))


def test_subset_distinct_sorted_in_range():
    s = SeededRng(11).subset(1000, 500)
    assert s.shape == (500,)
    assert len(set(s.tolist())) == 500
    assert np.all(np.diff(s) > 0)
    assert s.min() >= 0 and s.max() < 1000


def test_subset_full_range_is_identity():
    s = SeededRng(13).subset(8, 8)
    assert np.array_equal(s, np.arange(8))


def test_subset_uniformity():
    # each index should appear in roughly k/n of draws
    hits = np.zeros(10)
    for rep in range(2000):
        hits[SeededRng(17, rep).subset(10, 3)] += 1
    freq = hits / 2000
    assert np.all(np.abs(freq - 0.3) < 0.05)


def test_normals_moments():
    z = SeededRng(19).normals((50_000,))
    assert abs(z.mean()) < 0.02
    assert abs(z.std() - 1.0) < 0.02


def test_integer_below_bounds():
    rng = SeededRng(23)
    draws = [rng.integer_below(7) for _ in range(500)]
    assert min(draws) >= 0 and max(draws) < 7
    assert len(set(draws)) == 7


def test_invalid_arguments():
    with pytest.raises(ValueError):
        SeededRng(-1)
    with pytest.raises(ValueError):
        SeededRng(0).integer_below(0)
    with pytest.raises(ValueError):
        SeededRng(0).subset(3, 4)
