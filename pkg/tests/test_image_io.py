import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from hypothesis.extra.numpy import arrays

from tentbreak.errors import FormatError, LengthMismatch
from tentbreak.image_io import (
    ImageBuffer,
    parse_pgm,
    pgm_bytes,
    read_pgm,
    read_raw,
    write_pgm,
    write_raw,
)


def test_read_examples(tmp_path):
    p = tmp_path / "a.pgm"
    p.write_bytes(b"P5\n1 1\n255\n\x00")
    img = read_pgm(p)
    assert (img.width, img.height, img.pixels.tolist()) == (1, 1, [0])
    p.write_bytes(b"P5\n2 1\n255\n\xff\x00")
    assert read_pgm(p).pixels.tolist() == [255, 0]
    p.write_bytes(b"P6\n1 1\n255\n\x00\x00\x00")
    with pytest.raises(FormatError):
        read_pgm(p)


def test_write_example(tmp_path):
    p = tmp_path / "b.pgm"
    write_pgm(ImageBuffer(1, 1, [0]), p)
    assert p.read_bytes() == b"P5\n1 1\n255\n\x00"
    assert len(p.read_bytes()) == 12


def test_comments_and_whitespace():
    img = parse_pgm(b"P5 # magic\n# a comment line\n 2\t2 \n# another\n255\r\x01\x02\x03\x04")
    assert img.as_array().tolist() == [[1, 2], [3, 4]]


@pytest.mark.parametrize(
    "data",
    [
        b"P2\n1 1\n255\n\x00",
        b"P5\n1 1\n65535\n\x00\x00",
        b"P5\n1 1\n15\n\x00",
        b"P5\n2 2\n255\n\x00\x00\x00",
        b"P5\n1 1\n255",
        b"P5\n1\n",
        b"P5\nx 1\n255\n\x00",
        b"P5\n0 1\n255\n",
        b"",
    ],
)
def test_malformed_rejected(data):
    with pytest.raises(FormatError):
        parse_pgm(data)


def test_zero_size_rejected():
    with pytest.raises(ValueError):
        ImageBuffer(0, 1, [])
    with pytest.raises(LengthMismatch):
        ImageBuffer(2, 2, [1, 2, 3])


@settings(max_examples=100)
@given(arrays(np.uint8, st.tuples(st.integers(1, 20), st.integers(1, 20))))
def test_round_trip(a):
    img = ImageBuffer.from_array(a)
    assert parse_pgm(pgm_bytes(img)) == img


@settings(max_examples=100)
@given(st.integers(1, 30), st.integers(1, 30), st.integers(0, 300))
def test_truncation_always_detected(w, h, cut):
    data = pgm_bytes(ImageBuffer(w, h, np.zeros(w * h, np.uint8)))
    cut = min(cut, len(data) - 1) + 1
    with pytest.raises(FormatError):
        parse_pgm(data[:-cut])


@settings(max_examples=100)
@given(st.integers(0, 65535).filter(lambda v: v != 255))
def test_other_maxvals_rejected(maxval):
    with pytest.raises(FormatError):
        parse_pgm(b"P5\n1 1\n%d\n\x00\x00" % maxval)


@settings(max_examples=100)
@given(st.binary(min_size=2, max_size=2).filter(lambda m: m != b"P5"))
def test_other_magics_rejected(magic):
    with pytest.raises(FormatError):
        parse_pgm(magic + b"\n1 1\n255\n\x00")


def test_raw_round_trip(tmp_path, rng):
    data = rng.integers(0, 256, 65536, dtype=np.uint8)
    p = tmp_path / "r.bin"
    write_raw(p, data)
    assert np.array_equal(read_raw(p), data)
    assert np.array_equal(read_raw(p, 65536), data)
    with pytest.raises(LengthMismatch):
        read_raw(p, 10)
    e = tmp_path / "empty.bin"
    e.write_bytes(b"")
    assert read_raw(e, 0).size == 0


def test_missing_file(tmp_path):
    with pytest.raises(OSError):
        read_pgm(tmp_path / "nope.pgm")
