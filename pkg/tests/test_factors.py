import pytest
from hypothesis import given, strategies as st

from cantorkab import factors as fe
from cantorkab import sequence as sq
from cantorkab.errors import EnumerationCapExceeded, NotAFactorError


def scanned(n, text):
    return {text[t:t + n] for t in range(len(text) - n + 1)}


def test_small_factor_sets():
    assert fe.factors(1).words == ("0", "1")
    assert fe.factors(2).words == ("00", "01", "10")
    assert fe.factors(3).words == ("000", "001", "010", "100", "101")


def test_complete_against_long_prefix():
    for n in range(1, 201):
        text = sq.prefix(3 ** (fe.level_for_length(n) + 2) + n)
        assert set(fe.factors(n).words) == scanned(n, text), n


def test_witnesses_point_at_occurrences():
    for n in (1, 7, 28, 100, 250):
        fs = fe.factors(n)
        for w in fs:
            assert sq.window(fs.witnesses[w], n) == w


def test_closed_under_reversal_and_no_11():
    for n in range(1, 201):
        words = set(fe.factors(n).words)
        assert {w[::-1] for w in words} == words
        assert "0" * n in words
        assert not any("11" in w for w in words)


def test_factor_array_rows():
    arr = fe.factor_array(5)
    assert ["".join(map(str, row)) for row in arr] == list(fe.factors(5).words)
    assert not arr.flags.writeable


def test_cap(restore_caps):
    fe.set_enumeration_cap(10)
    with pytest.raises(EnumerationCapExceeded):
        fe.factors(11)
    assert len(fe.factors(10)) > 0


def test_is_factor_beyond_cap(restore_caps):
    u = sq.window(1234, 60)
    fe.set_enumeration_cap(20)
    assert fe.is_factor(u)
    assert not fe.is_factor("0" * 30 + "1" + "0" * 29)
    assert not fe.is_factor("011")


def test_require_factor():
    assert fe.require_factor("101") == "101"
    with pytest.raises(NotAFactorError):
        fe.require_factor("11")


@given(st.integers(0, 10**5), st.integers(1, 80))
def test_windows_are_factors(start, n):
    assert sq.window(start, n) in fe.factors(n)


def test_special_factors_short():
    assert fe.right_special(1) == {"0"}
    assert fe.left_special(1) == {"0"}
    assert fe.right_special(2) == {"00", "10"}
    assert fe.left_special(2) == {"00", "01"}
    assert fe.special_factors(2, "left") == fe.left_special(2)
    with pytest.raises(ValueError):
        fe.special_factors(2, "up")


def test_special_factors_closed_form():
    for n in range(2, 244):
        assert fe.right_special(n) == fe.predicted_special_factors(n, "right"), n
        assert fe.left_special(n) == fe.predicted_special_factors(n, "left"), n


def test_special_factors_are_mirror_images():
    for n in range(1, 100):
        assert {w[::-1] for w in fe.right_special(n)} == fe.left_special(n)


def test_occurrences():
    assert fe.occurrences("1", 9) == [0, 2, 6, 8]
    assert fe.occurrences("11", 1000) == []
    text = sq.prefix(27)
    assert fe.occurrences("000", 25) == [t for t in range(25) if text[t:t + 3] == "000"]


def test_type_set_examples():
    assert fe.type_set(1, "0001").residues == {0}
    assert fe.type_set(1, "1").residues == {0, 2}
    with pytest.raises(NotAFactorError):
        fe.type_set(1, "11")
    with pytest.raises(ValueError):
        fe.type_set(0, "1")


def test_type_set_against_prefix_scan():
    text = sq.prefix(3**9)
    for level in (1, 2):
        for n in range(1, 13):
            for u in fe.factors(n):
                positions = fe.occurrences(u, len(text) - n)
                assert fe.type_set(level, u).residues == {p % 3**level for p in positions}, (level, u)


def test_single_type_for_long_words():
    for level in (1, 2):
        for n in range(3**level + 1, 3 ** (level + 1) + 6):
            for u in fe.factors(n):
                if "1" in u:
                    assert len(fe.type_set(level, u)) == 1, u


def test_at_most_two_types_one_level_up():
    for level in (1, 2):
        for n in range(3**level + 1, 3 ** (level + 1) + 1):
            for u in fe.factors(n):
                if "1" in u:
                    assert 1 <= len(fe.type_set(level + 1, u)) <= 2, u


def test_last_one_types():
    assert fe.last_one_types("01") == (0, frozenset({0, 2}))
    assert fe.last_one_types("10")[0] == 1
    with pytest.raises(ValueError):
        fe.last_one_types("000")
    for n in range(2, 40):
        i = fe.default_last_one_level(n)
        for v in fe.factors(n):
            if "1" not in v:
                continue
            z, res = fe.last_one_types(v)
            assert v.endswith("1" + "0" * z)
            assert 1 <= len(res) <= 2
            if len(res) == 2:
                q1, q2 = sorted(res)
                assert q2 == q1 + 2 * 3**i, v
