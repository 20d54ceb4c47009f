import pytest

from curryiso.moves import parse_move
from curryiso.plays import (
    flip,
    is_arrow_shape,
    is_biview,
    is_justified_sequence,
    is_play,
    is_zigzag,
    restrict_one,
    restrict_two,
    view,
)

M = parse_move


def play(*entries):
    return tuple((M(m), p) for m, p in entries)


def test_is_play_examples():
    assert is_play(play(("^1", None), ("v1", 0)))
    assert not is_play(play(("^1", None), ("v2", 0)))  # leaf mismatch on O->P
    assert not is_play(play(("^1", None), ("^1", None)))  # no alternation
    assert is_play(())
    assert not is_play(play(("v1", None),))  # unpointed non-initial


def test_justified_sequence_checks_enabling():
    assert is_justified_sequence(play(("^1", None), ("v1", 0)))
    assert not is_justified_sequence(play(("^1", None), ("vv1", 0)))
    assert not is_justified_sequence(play(("^1", None), ("v1", 1)))


def test_view_examples():
    assert view(()) == ()
    s = play(("^1", None), ("v1", 0))
    assert view(s) == s
    s2 = play(("^1", None), ("v1", 0), ("^1", None), ("v1", 2))
    assert view(s2) == play(("^1", None), ("v1", 0))


def test_view_remaps_pointers():
    # O reopens from the first P-move after an interleaved thread
    s = play(("^1", None), ("v1", 0), ("^2", None), ("v2", 2), ("vv1", 1), ("^v1", 0))
    v = view(s)
    assert v == play(("^1", None), ("v1", 0), ("vv1", 1), ("^v1", 0))


def test_is_biview():
    assert is_biview(play(("r2", None),))
    assert not is_biview(play(("v1", None),))
    assert is_biview(play(("^1", None), ("v1", 0)))
    assert not is_biview(play(("^1", None), ("v1", None)))
    assert not is_biview(())


def test_restrict_one():
    s = play(("l^1", None), ("lv1", 0))
    r, kept = restrict_one(s, "l")
    assert r == play(("^1", None), ("v1", 0))
    assert kept == [0, 1]


def test_restrict_two_examples():
    s = play(("^1", None), ("v^1", 0), ("vv1", 1))
    r1, _ = restrict_two(s, "^", "vv")
    assert r1 == play(("^1", None), ("v1", 0))
    r2, _ = restrict_two(s, "v^", "vv")
    assert r2 == play(("^1", None), ("v1", 0))
    with pytest.raises(ValueError):
        restrict_two(s, "v", "vv")


def test_restrict_two_keeps_only_hereditarily_justified():
    # a second thread whose input move hangs under its own output move
    s = play(("^1", None), ("v^1", 0), ("vv1", 1), ("^2", None), ("v^2", 3))
    r, kept = restrict_two(s, "^", "vv")
    assert kept == [0, 2, 3]
    assert r == play(("^1", None), ("v1", 0), ("^2", None))


def test_zigzag_and_flip():
    assert is_zigzag(play(("^1", None), ("v1", 0)))
    assert not is_zigzag(play(("^1", None), ("^v1", 0)))
    s = play(("^l1", None), ("vr1", 0))
    assert is_zigzag(s)
    assert flip(s) == play(("^r1", None), ("vl1", 0))
    # flipping the identity play is the identity play
    s2 = play(("^1", None), ("v1", 0), ("vv1", 1), ("^v1", 0))
    assert is_zigzag(s2)
    assert flip(s2) == s2
    with pytest.raises(ValueError):
        flip(play(("^1", None),))


def test_flip_swaps_restrictions():
    s = play(("^l1", None), ("vr1", 0), ("vrv0", 1), ("^lv0", 0))
    assert is_zigzag(s)
    f = flip(s)
    up, _ = restrict_one(f, "^")
    down, _ = restrict_one(s, "v")
    assert up == down


def test_arrow_shape():
    assert is_arrow_shape(play(("^1", None), ("v1", 0)))
    assert not is_arrow_shape(play(("l1", None),))
