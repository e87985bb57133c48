import numpy as np
import pytest

from cantorkab import brute as br
from cantorkab import factors as fe
from cantorkab import formulas as fm
from cantorkab import sequence as sq
from cantorkab.errors import BelowThreshold, MethodDisagreement

_LONG = np.concatenate([[0], np.cumsum(sq.letters_array(0, 3**9 + 10**4), dtype=np.int64)])


def window_max(n):
    """Largest number of 1s in a length-n window starting before 3**9."""
    return int((_LONG[n:n + 3**9] - _LONG[:3**9]).max())


def zero_runs(count):
    text = sq.prefix(3**9)
    ones = [t for t, ch in enumerate(text) if ch == "1"]
    return [b - a - 1 for a, b in zip(ones, ones[1:])][:count]


def test_max_sum_examples():
    assert [fm.max_sum(n) for n in range(10)] == [0, 1, 1, 2, 2, 2, 2, 3, 3, 4]


def test_max_sum_against_windows():
    for n in range(501):
        assert fm.max_sum(n) == window_max(n), n
    for n in range(501, 10**4, 97):
        assert fm.max_sum(n) == window_max(n), n


def test_abelian_examples():
    assert [fm.abelian_complexity(n) for n in (0, 1, 2, 3, 4)] == [1, 2, 2, 3, 3]


def test_abelian_many_ways():
    for n in range(1, 121):
        assert fm.abelian_complexity(n) == br.complexity_bruteforce(n, 1).class_count
        # abelian classes of a binary word set are its distinct 1-counts
        assert fm.abelian_complexity(n) == fm.max_sum(n) + 1


def test_two_abelian_against_brute():
    for n in range(1, 121):
        assert fm.two_abelian(n) == br.complexity_bruteforce(n, 2).class_count, n


def test_two_abelian_cells():
    for n in range(1, 121):
        cells = br.cell_counts_bruteforce(n, 2)
        for x in "01":
            for y in "01":
                assert fm.p2(n, x, y) == cells.get((x, y), 0), (n, x, y)


def test_no_even_length_factor_between_two_ones():
    for n in range(2, 201, 2):
        assert not any(w[0] == w[-1] == "1" for w in fe.factors(n))


def test_p2_rejects_words():
    with pytest.raises(ValueError):
        fm.p2(5, "01", "0")


def test_gaps():
    assert [fm.gap(j) for j in range(1, 9)] == [1, 3, 1, 9, 1, 3, 1, 27]
    runs = zero_runs(500)
    assert [fm.gap(j) for j in range(1, 501)] == runs


def test_span_against_definition():
    d = [None] + [fm.gap(j) for j in range(1, 202)]
    for i in range(1, 101):
        for j in range(1, 101):
            assert fm.f_span(i, j) == j + sum(d[i:i + j]), (i, j)


def test_indexing():
    assert fm.KIndexing.for_k(3) == fm.KIndexing(3, 0, 3, 10)
    assert fm.KIndexing.for_k(4).i == 0
    assert fm.KIndexing.for_k(5) == fm.KIndexing(5, 1, 9, 26)
    assert fm.KIndexing.for_k(10).i == 1
    assert fm.KIndexing.for_k(11).i == 2
    with pytest.raises(ValueError):
        fm.KIndexing.for_k(2)


def test_cell_formula_examples():
    idx = fm.KIndexing.for_k(3)
    assert fm.pk_zero_zero(10, idx) == fm.max_sum(2) + 1
    with pytest.raises(BelowThreshold):
        fm.pk_zero_zero(9, idx)
    with pytest.raises(BelowThreshold):
        fm.pk_x_y(9, idx, "10", "01")
    assert fm.k_abelian_complexity(10, 3) == br.complexity_bruteforce(10, 3).class_count


@pytest.mark.parametrize("k,span", [(3, 60), (4, 60), (5, 60), (6, 40), (7, 40), (10, 40), (11, 30)])
def test_cells_against_enumeration(k, span):
    idx = fm.KIndexing.for_k(k)
    for n in range(idx.threshold, idx.threshold + span):
        want = br.cell_counts_bruteforce(n, k)
        got = fm.fast_cells(n, k)
        assert set(want) <= set(got)
        for cell, value in got.items():
            assert value == want.get(cell, 0), (k, n, cell)


def test_x_y_cells_are_periodic():
    idx = fm.KIndexing.for_k(4)
    words = [w for w in fe.factors(3) if "1" in w]
    period = 2 * idx.block
    for x in words:
        for y in words:
            for n in range(idx.threshold + period, idx.threshold + 5 * period):
                assert fm.pk_x_y(n, idx, x, y) == fm.pk_x_y(n - period, idx, x, y)


def test_methods_agree():
    for k in (1, 2, 3, 4):
        for n in range(0, 60):
            assert fm.evaluate(n, k, "both")[0] == fm.evaluate(n, k, "brute")[0]


def test_method_reported():
    assert fm.evaluate(5, 3, "fast") == (br.complexity_bruteforce(5, 3).class_count, "brute")
    assert fm.evaluate(12, 3, "fast")[1] == "fast"
    assert fm.evaluate(12, 3, "both")[1] == "both"
    table = fm.complexity_table(3, range(8, 12))
    assert [m for _, _, m in table.rows()] == ["brute", "brute", "fast", "fast"]
    assert table.notes
    with pytest.raises(ValueError):
        fm.evaluate(3, 3, "guess")


def test_both_reports_disagreeing_cell(monkeypatch):
    monkeypatch.setattr(fm, "pk_zero_zero", lambda n, idx: -1)
    with pytest.raises(MethodDisagreement) as info:
        fm.k_abelian_complexity(20, 3, "both")
    assert info.value.cell == ("00", "00")


def test_tables_match_scalar_values():
    assert list(fm.max_sum_table(2000)) == [fm.max_sum(n) for n in range(2000)]
    assert list(fm.abelian_table(2000)) == [fm.abelian_complexity(n) for n in range(2000)]
    assert list(fm.two_abelian_table(2000)) == [fm.two_abelian(n) for n in range(2000)]
    for k in (3, 4, 5, 7):
        assert list(fm.k_abelian_table(k, 400)) == [fm.k_abelian_complexity(n, k) for n in range(400)]


def test_small_tables():
    assert list(fm.max_sum_table(1)) == [0]
    assert list(fm.two_abelian_table(2)) == [1, 2]
    assert list(fm.k_abelian_table(5, 3)) == [1, 2, 3]
