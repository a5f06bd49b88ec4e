import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from oracles import ref_pearson
from tentbreak.errors import DegenerateVariance, LengthMismatch
from tentbreak.image_io import ImageBuffer
from tentbreak.stats import adjacent_correlation, analyze, histogram, npcr_uaci, shannon_entropy


def test_histogram_examples():
    h = histogram([0, 0, 255])
    assert h[0] == 2 and h[255] == 1 and h.sum() == 3
    assert (histogram(np.arange(256)) == 1).all()
    with pytest.raises(ValueError):
        histogram([])


def test_entropy_examples():
    assert shannon_entropy([7] * 100) == 0.0
    assert shannon_entropy(np.arange(256)) == 8.0
    assert shannon_entropy([0, 1]) == 1.0


def test_correlation_examples():
    assert adjacent_correlation(ImageBuffer(4, 1, [10, 20, 30, 40]), "H") == pytest.approx(1.0, abs=1e-12)
    with pytest.raises(DegenerateVariance):
        adjacent_correlation(ImageBuffer(3, 3, [9] * 9), "H")
    img = ImageBuffer(2, 2, [0, 255, 255, 0])
    assert adjacent_correlation(img, "H") == pytest.approx(ref_pearson([0, 255], [255, 0]))
    assert adjacent_correlation(img, "H") == pytest.approx(-1.0)
    with pytest.raises(ValueError):
        adjacent_correlation(ImageBuffer(1, 3, [1, 2, 3]), "H")


def test_correlation_against_reference(rng):
    a = rng.integers(0, 256, (9, 11))
    img = ImageBuffer.from_array(a)
    pairs = {
        "H": (a[:, :-1], a[:, 1:]),
        "V": (a[:-1, :], a[1:, :]),
        "D": (a[:-1, :-1], a[1:, 1:]),
    }
    for d, (x, y) in pairs.items():
        ref = ref_pearson(x.ravel().tolist(), y.ravel().tolist())
        assert adjacent_correlation(img, d) == pytest.approx(ref, abs=1e-12)


def test_npcr_uaci_examples():
    c = np.arange(100) % 256
    assert npcr_uaci(c, c) == (0.0, 0.0)
    assert npcr_uaci([0] * 4, [255] * 4) == (100.0, 100.0)
    c = np.full(100, 10)
    d = c.copy()
    d[3] = 11
    npcr, uaci = npcr_uaci(c, d)
    assert npcr == pytest.approx(1.0)
    assert uaci == pytest.approx(100 / (255 * 100))
    with pytest.raises(LengthMismatch):
        npcr_uaci([1], [1, 2])


byte_arrays = arrays(np.uint8, st.integers(1, 400))


@settings(max_examples=100)
@given(byte_arrays)
def test_entropy_bounds(data):
    h = shannon_entropy(data)
    assert 0.0 <= h <= 8.0
    assert (h == 0.0) == (np.count_nonzero(histogram(data)) == 1)
    assert histogram(data).sum() == data.size


@settings(max_examples=100)
@given(arrays(np.uint8, (6, 7)))
def test_correlation_symmetry(a):
    img = ImageBuffer.from_array(a)
    flipped = ImageBuffer.from_array(a[::-1, ::-1])
    for d in "HVD":
        try:
            r = adjacent_correlation(img, d)
        except DegenerateVariance:
            continue
        assert -1.0 <= r <= 1.0
        # reversing every pair (x, y) -> (y, x) leaves r unchanged
        assert adjacent_correlation(flipped, d) == pytest.approx(r, abs=1e-9)


@settings(max_examples=100)
@given(byte_arrays, st.data())
def test_npcr_uaci_range(a, data):
    b = data.draw(arrays(np.uint8, a.shape))
    npcr, uaci = npcr_uaci(a, b)
    assert 0 <= uaci <= npcr <= 100 or (0 <= npcr <= 100 and 0 <= uaci <= 100)


def test_analyze_report():
    img = ImageBuffer(3, 3, [9] * 9)
    rep = analyze(img, img)
    assert rep.entropy_bits == 0.0
    assert set(rep.degenerate) == {"horizontal", "vertical", "diagonal"}
    assert rep.npcr_percent == 0.0 and rep.uaci_percent == 0.0
    assert '"entropy_bits": 0.0' in rep.to_json()
    assert math.isclose(sum(rep.histogram), 9)
