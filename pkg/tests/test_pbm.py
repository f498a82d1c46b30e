import random

import pytest

from satcover.pbm import BinaryImage, PbmError, dump_p1, dump_p4, image_from_ascii, load_pbm


def test_p1_basic():
    img = load_pbm(b"P1\n3 1\n1 1 1\n")
    assert img.width == 3 and img.height == 1
    assert img.foreground == {(0, 0), (1, 0), (2, 0)}


def test_p1_empty_image():
    img = load_pbm(b"P1\n4 2\n0 0 0 0\n0 0 0 0\n")
    assert img.foreground == frozenset()


def test_p1_comments_and_dense_digits():
    img = load_pbm(b"P1\n# a comment\n3 2 # trailing\n101\n010\n")
    assert img.foreground == {(0, 0), (2, 0), (1, 1)}


def test_p4_matches_p1_roundtrip():
    rng = random.Random(42)
    for _ in range(25):
        w, h = rng.randint(1, 21), rng.randint(1, 13)
        fg = frozenset((x, y) for x in range(w) for y in range(h) if rng.random() < 0.4)
        img = BinaryImage(w, h, fg)
        assert load_pbm(dump_p1(img)) == img
        assert load_pbm(dump_p4(img)) == img
        assert load_pbm(dump_p4(load_pbm(dump_p1(img)))) == img


def test_malformed_inputs():
    with pytest.raises(PbmError):
        load_pbm(b"")
    with pytest.raises(PbmError):
        load_pbm(b"P5\n2 2\n")
    with pytest.raises(PbmError):
        load_pbm(b"P1\n0 3\n")
    with pytest.raises(PbmError):
        load_pbm(b"P1\n2 2\n1 0 1\n")  # missing a pixel
    with pytest.raises(PbmError):
        load_pbm(b"P1\n2 2\n1 0 1 0 1\n")  # one too many
    with pytest.raises(PbmError):
        load_pbm(b"P1\n2 2\n1 0 2 0\n")
    with pytest.raises(PbmError):
        load_pbm(b"P4\n9 2\n\x00")  # truncated raster
    with pytest.raises(PbmError):
        load_pbm(b"P1\nx 2\n1 0\n")


def test_image_bounds_enforced():
    with pytest.raises(ValueError):
        BinaryImage(2, 2, frozenset({(2, 0)}))


def test_image_from_ascii():
    img = image_from_ascii(".#.\n###\n.#.")
    assert img.width == 3 and img.height == 3
    assert (1, 1) in img and (0, 0) not in img
    assert len(img.foreground) == 5
