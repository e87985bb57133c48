"""Ground-truth k-abelian equivalence by direct counting.

Two words are k-abelian equivalent when they share the prefix and suffix of
length k-1 and every length-k word occurs in both equally often.  Words
shorter than k-1 keep the whole word as prefix and suffix, so two such words
are equivalent only when equal.

The class counts here never use any of the closed forms; they enumerate
F_c(n) and compare signatures.  The ``verify_*`` sweeps check the counting
identities behind the reduction from k-abelian to abelian equivalence.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field

import numpy as np

from . import factors as fe
from .sequence import check_word


@dataclass(frozen=True)
class AbelianSignature:
    k: int
    prefix: str
    suffix: str
    counts: tuple[tuple[str, int], ...]

    def count(self, w: str) -> int:
        return dict(self.counts).get(w, 0)


def count_occurrences(u: str, z: str) -> int:
    """|u|_z with overlapping occurrences."""
    if not z:
        return len(u) + 1
    total = 0
    p = u.find(z)
    while p >= 0:
        total += 1
        p = u.find(z, p + 1)
    return total


def pref_flag(z: str, w: str) -> int:
    return int(w.startswith(z))


def suff_flag(z: str, w: str) -> int:
    return int(w.endswith(z))


def signature(u: str, k: int) -> AbelianSignature:
    check_word(u)
    if k < 1:
        raise ValueError("k must be at least 1")
    if len(u) < k:
        # prefix/suffix cover the whole word and no length-k window exists
        return AbelianSignature(k, u, u, ())
    counts = Counter(u[t:t + k] for t in range(len(u) - k + 1))
    head = u[:k - 1]
    tail = u[len(u) - k + 1:] if k > 1 else ""
    return AbelianSignature(k, head, tail, tuple(sorted(counts.items())))


def equivalent(u: str, v: str, k: int) -> bool:
    return len(u) == len(v) and signature(u, k) == signature(v, k)


@dataclass
class EquivalenceReport:
    """Partition of F_c(n) into k-abelian classes.

    ``classes`` lists (smallest member, class size), sorted by member.
    """

    n: int
    k: int
    class_count: int
    classes: list[tuple[str, int]]
    counterexamples: list = field(default_factory=list)


@dataclass
class VerificationReport:
    check: str
    params: dict
    checked: int = 0
    counterexamples: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.counterexamples

    def merge(self, other: "VerificationReport") -> "VerificationReport":
        self.checked += other.checked
        self.counterexamples.extend(other.counterexamples)
        return self


def _window_codes(words: np.ndarray, k: int) -> np.ndarray:
    view = np.lib.stride_tricks.sliding_window_view(words, k, axis=1)
    weights = 1 << np.arange(k - 1, -1, -1, dtype=np.int64)
    return view.astype(np.int64) @ weights


def class_labels(n: int, k: int) -> tuple[np.ndarray, np.ndarray]:
    """Label every row of ``factor_array(n)`` by its k-abelian class.

    Returns (labels, first_row) where first_row[c] is the index of the
    lexicographically smallest member of class c; classes are numbered in
    order of that member.
    """
    words = fe.factor_array(n)
    rows = len(words)
    if n < k:
        return np.arange(rows), np.arange(rows)
    if k > 62:
        sigs = [signature(w, k) for w in fe.factors(n).words]
        index: dict = {}
        labels = np.array([index.setdefault(s, len(index)) for s in sigs])
    else:
        codes = _window_codes(words, k)
        distinct, inverse = np.unique(codes, return_inverse=True)
        width = len(distinct)
        owner = np.repeat(np.arange(rows), codes.shape[1])
        counts = np.bincount(owner * width + inverse.ravel(), minlength=rows * width)
        keys = np.hstack([
            words[:, :k - 1],
            words[:, n - k + 1:] if k > 1 else words[:, :0],
            counts.reshape(rows, width),
        ]).astype(np.int64)
        _, labels = np.unique(keys, axis=0, return_inverse=True)
        labels = labels.ravel()
    # renumber classes by their smallest member (rows are sorted)
    _, first = np.unique(labels, return_index=True)
    order = np.argsort(first)
    remap = np.empty_like(order)
    remap[order] = np.arange(len(order))
    return remap[labels], first[order]


def complexity_bruteforce(n: int, k: int) -> EquivalenceReport:
    if k < 1:
        raise ValueError("k must be at least 1")
    if n == 0:
        return EquivalenceReport(0, k, 1, [("", 1)])
    labels, first = class_labels(n, k)
    words = fe.factors(n).words
    sizes = np.bincount(labels, minlength=len(first))
    classes = [(words[r], int(s)) for r, s in zip(first, sizes)]
    return EquivalenceReport(n, k, len(classes), classes)


def cell_counts_bruteforce(n: int, k: int) -> dict[tuple[str, str], int]:
    """Number of k-abelian classes per (prefix, suffix) cell of length k-1.

    Cells that contain no factor are absent from the result.
    """
    if k < 2:
        raise ValueError("cells need k >= 2")
    if n < k - 1:
        raise ValueError("cells need n >= k - 1")
    report = complexity_bruteforce(n, k)
    cells: Counter = Counter()
    for rep, _ in report.classes:
        cells[(rep[:k - 1], rep[n - k + 1:])] += 1
    return dict(cells)


def is_nonzero(w: str) -> bool:
    return "1" in w


def delta(i: int, u: str) -> int:
    """|u|_{0^(a+2)} + |u|_{1 0^a 1} - |u|_{0^(a+1)} + 1 with a = 3**i."""
    fe.require_factor(u)
    a = 3**i
    return (
        count_occurrences(u, "0" * (a + 2))
        + count_occurrences(u, "1" + "0" * a + "1")
        - count_occurrences(u, "0" * (a + 1))
        + 1
    )


def _factors_upto(max_len: int):
    for n in range(1, max_len + 1):
        yield from fe.factors(n).words


def verify_delta_congruences(i: int, max_len: int) -> VerificationReport:
    """Check the range and both congruences of delta(i, u) for short factors.

    Also checks the exact expansion
    delta = |u|_{0^a 1} - 2|u|_{0^(a+1) 1} + 1 - S(0^(a+1), u) - P(0^a 1, u).
    """
    a = 3**i
    z_run = "0" * (a + 1)
    z_one = "0" * a + "1"
    report = VerificationReport("delta", {"i": i, "max_len": max_len})
    for u in _factors_upto(max_len):
        d = delta(i, u)
        report.checked += 1
        n_run = count_occurrences(u, z_run)
        n_one = count_occurrences(u, z_one)
        s_run = suff_flag(z_run, u)
        p_one = pref_flag(z_one, u)
        problems = []
        if d not in (0, 1, 2):
            problems.append("range")
        expanded = n_one - 2 * count_occurrences(u, z_run + "1") + 1 - s_run - p_one
        if d != expanded:
            problems.append("expansion")
        if pref_flag(z_run, u) == 0 and s_run == 0:
            if n_run % a:
                problems.append("divisibility")
            elif (d - (n_one + 2 * (n_run // a) + 1 - p_one)) % 3:
                problems.append("mod3")
        else:
            if d not in (0, 1):
                problems.append("range01")
            if (d - (n_one + 1 - s_run - p_one)) % 2:
                problems.append("mod2")
        if problems:
            report.counterexamples.append((u, d, ",".join(problems)))
    report.counterexamples.sort()
    return report


def verify_occurrence_lemma(k: int, max_len: int) -> VerificationReport:
    """Check the four-way occurrence count identity for every z = a y b of length k+1.

    For each factor u with |u| >= k+1 and each such z, the branch selected by
    whether ay is right special applies, and so does the one selected by
    whether yb is left special.
    """
    report = VerificationReport("occurrence", {"k": k, "max_len": max_len})
    if k + 1 > max_len:
        return report
    rs = fe.right_special(k)
    ls = fe.left_special(k)
    zs = fe.factors(k + 1).words
    for n in range(k + 1, max_len + 1):
        for u in fe.factors(n).words:
            short = Counter(u[t:t + k] for t in range(n - k + 1))
            long_ = Counter(u[t:t + k + 1] for t in range(n - k))
            for z in zs:
                a, b = z[0], z[-1]
                ay, yb = z[:-1], z[1:]
                flip_b = ay + ("1" if b == "0" else "0")
                flip_a = ("1" if a == "0" else "0") + yb
                if ay in rs:
                    right = short[ay] - long_[flip_b] - suff_flag(ay, u)
                else:
                    right = short[ay] - suff_flag(ay, u)
                if yb in ls:
                    left = short[yb] - long_[flip_a] - pref_flag(yb, u)
                else:
                    left = short[yb] - pref_flag(yb, u)
                report.checked += 1
                if right != long_[z] or left != long_[z]:
                    report.counterexamples.append((u, z, long_[z], right, left))
    report.counterexamples.sort()
    return report


def verify_theorem_b(k: int, n: int) -> VerificationReport:
    """Among length-n factors sharing pref_k and suff_k, check that
    (k+1)-abelian equivalence coincides with equal numbers of 1s."""
    report = VerificationReport("theorem-b", {"k": k, "n": n})
    words = fe.factors(n).words
    labels, _ = class_labels(n, k + 1)
    seen: dict[tuple[str, str, int], int] = {}
    witness: dict[tuple[str, str, int], str] = {}
    per_label: dict[int, tuple[str, str, int]] = {}
    for w, lab in zip(words, labels.tolist()):
        key = (w[:k], w[-k:], w.count("1"))
        report.checked += 1
        if key in seen and seen[key] != lab:
            report.counterexamples.append((witness[key], w, "same 1-count, different class"))
        seen.setdefault(key, lab)
        witness.setdefault(key, w)
        if per_label.setdefault(lab, key) != key:
            report.counterexamples.append((w, "class mixes 1-counts"))
    report.counterexamples.sort()
    return report


def verify_theorem_b_upto(k: int, max_len: int) -> VerificationReport:
    report = VerificationReport("theorem-b", {"k": k, "max_len": max_len})
    for n in range(1, max_len + 1):
        report.merge(verify_theorem_b(k, n))
    return report


def verify_linear_system(k: int, max_len: int) -> VerificationReport:
    """Check the four linear relations among |w|_z, z in {0^(k+1), 0^k 1, 1 0^k, 1 0^(k-1) 1}."""
    i = 0
    while 3**i + 1 < k:
        i += 1
    if 3**i + 1 != k:
        raise ValueError(f"k must be of the form 3**i + 1, got {k}")
    zk, zk1 = "0" * k, "0" * (k + 1)
    z_one, one_z = zk + "1", "1" + zk
    one_zm = "1" + "0" * (k - 1)
    gap_word = one_zm + "1"
    report = VerificationReport("linear-system", {"k": k, "max_len": max_len})
    for w in _factors_upto(max_len):
        c = {z: count_occurrences(w, z) for z in (zk, zk1, z_one, one_z, one_zm, gap_word)}
        d = delta(i, w)
        failed = [
            idx
            for idx, ok in enumerate((
                c[zk1] + c[z_one] == c[zk] - suff_flag(zk, w),
                c[zk1] + c[one_z] == c[zk] - pref_flag(zk, w),
                c[one_z] + c[gap_word] == c[one_zm] - suff_flag(one_zm, w),
                c[zk1] + c[gap_word] == c[zk] - 1 + d,
            ), start=1)
            if not ok
        ]
        report.checked += 1
        if failed:
            report.counterexamples.append((w, tuple(failed)))
    report.counterexamples.sort()
    return report
