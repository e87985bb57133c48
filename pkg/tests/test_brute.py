from itertools import product

import pytest
from hypothesis import given, strategies as st

from cantorkab import brute as br
from cantorkab import factors as fe
from cantorkab import sequence as sq
from cantorkab.errors import NotAFactorError


def naive_classes(n, k):
    """Class count from the definition, comparing counts of every binary word of length k."""
    zs = ["".join(p) for p in product("01", repeat=k)]
    keys = set()
    for w in fe.factors(n):
        if n < k - 1:
            keys.add(w)
            continue
        keys.add((w[:k - 1], w[n - k + 1:] if k > 1 else "",
                  tuple(br.count_occurrences(w, z) for z in zs)))
    return len(keys)


def test_count_occurrences():
    assert br.count_occurrences("0000", "00") == 3
    assert br.count_occurrences("10101", "101") == 2
    assert br.count_occurrences("101", "") == 4
    assert br.count_occurrences("1", "11") == 0


def test_flags():
    assert br.pref_flag("10", "1000") == 1
    assert br.suff_flag("10", "1000") == 0
    assert br.suff_flag("", "1") == 1


def test_signature_examples():
    sig = br.signature("101000", 2)
    assert (sig.prefix, sig.suffix) == ("1", "0")
    assert sig.count("00") == 2 and sig.count("01") == 1 and sig.count("11") == 0
    assert br.signature("10", 3) == br.AbelianSignature(3, "10", "10", ())
    with pytest.raises(ValueError):
        br.signature("01", 0)


def test_equivalence_examples():
    assert br.equivalent("0010", "0100", 2)
    assert not br.equivalent("0010", "0100", 3)
    assert br.equivalent("0001", "1000", 1)
    assert not br.equivalent("0001", "1000", 2)
    assert br.equivalent("10001", "10001", 4)
    assert not br.equivalent("01", "010", 1)


def test_complexity_examples():
    assert br.complexity_bruteforce(1, 1).class_count == 2
    assert br.complexity_bruteforce(2, 1).class_count == 2
    assert br.complexity_bruteforce(3, 2).class_count == 5
    assert br.complexity_bruteforce(0, 3).class_count == 1


def test_counts_against_definition():
    for k in range(1, 6):
        for n in range(1, 41):
            assert br.complexity_bruteforce(n, k).class_count == naive_classes(n, k), (n, k)


def test_vectorised_labels_against_signatures():
    for k, n in [(2, 30), (3, 50), (5, 64), (7, 81)]:
        labels, first = br.class_labels(n, k)
        words = fe.factors(n).words
        for a in range(0, len(words), 5):
            for b in range(len(words)):
                assert (labels[a] == labels[b]) == br.equivalent(words[a], words[b], k)
        assert list(first) == sorted(first)


def test_classes_partition_the_factors():
    for n, k in [(10, 1), (40, 2), (90, 4)]:
        report = br.complexity_bruteforce(n, k)
        assert sum(size for _, size in report.classes) == len(fe.factors(n))
        assert report.class_count == len(report.classes)


def test_monotone_in_k():
    for n in range(1, 120):
        counts = [br.complexity_bruteforce(n, k).class_count for k in range(1, 6)]
        assert counts == sorted(counts), n
        assert counts[-1] <= len(fe.factors(n))


@given(st.integers(0, 5000), st.integers(0, 5000), st.integers(1, 60), st.integers(1, 6))
def test_equivalence_is_an_equivalence(i, j, n, k):
    u, v = sq.window(i, n), sq.window(j, n)
    assert br.equivalent(u, u, k)
    assert br.equivalent(u, v, k) == br.equivalent(v, u, k)
    if br.equivalent(u, v, k + 1):
        assert br.equivalent(u, v, k)


def test_cell_counts():
    cells = br.cell_counts_bruteforce(3, 2)
    assert sum(cells.values()) == 5
    assert cells[("1", "1")] == 1
    with pytest.raises(ValueError):
        br.cell_counts_bruteforce(1, 3)


def test_classes_in_a_cell_are_separated_by_ones():
    # inside a (k-1)-prefix/suffix cell, k-abelian classes are told apart by |w|_1 alone
    for k in range(2, 5):
        for n in range(k, 61):
            for (x, y), count in br.cell_counts_bruteforce(n, k).items():
                ones = {w.count("1") for w in fe.factors(n) if w.startswith(x) and w.endswith(y)}
                assert count == len(ones), (n, k, x, y)


def test_delta_examples():
    assert br.delta(0, "0") == 1
    assert br.delta(0, "101") == 2
    assert br.delta(0, "000") == 0
    with pytest.raises(NotAFactorError):
        br.delta(0, "11")


@pytest.mark.parametrize("check,args", [
    (br.verify_delta_congruences, (0, 50)),
    (br.verify_delta_congruences, (1, 80)),
    (br.verify_delta_congruences, (0, 4)),
    (br.verify_occurrence_lemma, (2, 60)),
    (br.verify_occurrence_lemma, (3, 60)),
    (br.verify_occurrence_lemma, (1, 10)),
    (br.verify_theorem_b_upto, (1, 20)),
    (br.verify_theorem_b_upto, (2, 40)),
    (br.verify_theorem_b_upto, (3, 3)),
    (br.verify_linear_system, (2, 60)),
    (br.verify_linear_system, (4, 100)),
    (br.verify_linear_system, (2, 6)),
])
def test_sweeps_find_nothing(check, args):
    report = check(*args)
    assert report.ok, report.counterexamples[:3]
    assert report.checked > 0 or args[-1] <= args[0]


def test_linear_system_needs_special_k():
    with pytest.raises(ValueError):
        br.verify_linear_system(3, 20)


def test_occurrence_sweep_detects_wrong_special_sets(monkeypatch):
    monkeypatch.setattr(fe, "right_special", lambda n: frozenset())
    report = br.verify_occurrence_lemma(2, 20)
    assert not report.ok


def test_theorem_b_detects_a_broken_labelling(monkeypatch):
    import numpy as np

    def one_class(n, k):
        rows = len(fe.factors(n))
        return np.zeros(rows, dtype=np.int64), np.zeros(1, dtype=np.int64)

    monkeypatch.setattr(br, "class_labels", one_class)
    assert not br.verify_theorem_b(2, 20).ok
