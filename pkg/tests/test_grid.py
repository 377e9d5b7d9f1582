import pytest

from gatepile import ChipGrid, GridFormatError


def test_zero_counts_not_stored():
    g = ChipGrid({(0, 0): 4, (1, 1): 0})
    assert (1, 1) not in g
    assert g.get((1, 1)) == 0
    assert len(g) == 1


def test_negative_count_rejected():
    with pytest.raises(ValueError):
        ChipGrid({(0, 0): -1})


def test_equality_is_mapping_equality():
    assert ChipGrid({(0, 0): 2}) == ChipGrid([((0, 0), 2)])
    assert ChipGrid({(0, 0): 2}) != ChipGrid({(0, 0): 3})


def test_with_chips_adds_and_removes():
    g = ChipGrid({(0, 0): 2})
    assert g.with_chips((0, 0), 2).get((0, 0)) == 4
    assert (0, 0) not in g.with_chips((0, 0), -2)
    with pytest.raises(ValueError):
        g.with_chips((0, 0), -3)


def test_translate_and_rotate():
    g = ChipGrid({(1, 0): 3, (0, 2): 1})
    assert g.translate(2, -1) == ChipGrid({(3, -1): 3, (2, 1): 1})
    assert g.rotate(1) == ChipGrid({(0, 1): 3, (-2, 0): 1})
    assert g.rotate(4) == g
    assert g.rotate(2).rotate(2) == g


def test_merged_conflict():
    a = ChipGrid({(0, 0): 3})
    b = ChipGrid({(0, 0): 3, (1, 0): 1})
    assert a.merged(b) == b
    with pytest.raises(ValueError):
        a.merged(ChipGrid({(0, 0): 2}))


def test_text_round_trip():
    g = ChipGrid({(3, -2): 5, (-1, 7): 1})
    assert ChipGrid.from_text(g.to_text()) == g


def test_text_parsing_errors():
    with pytest.raises(GridFormatError):
        ChipGrid.from_text("1 2\n")
    with pytest.raises(GridFormatError):
        ChipGrid.from_text("1 2 0\n")
    with pytest.raises(GridFormatError):
        ChipGrid.from_text("1 2 x\n")
    with pytest.raises(GridFormatError):
        ChipGrid.from_text("1 2 3\n1 2 4\n")


def test_text_comments_and_blanks():
    g = ChipGrid.from_text("# header\n\n0 0 4  # the packet\n")
    assert g == ChipGrid({(0, 0): 4})


def test_bounding_box():
    assert ChipGrid().bounding_box() is None
    assert ChipGrid({(2, -1): 1, (-3, 4): 1}).bounding_box() == (-3, -1, 2, 4)
